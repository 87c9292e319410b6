#include "tioco/lift.hpp"

namespace tioco {

TimedAutomaton lift(const Lts& model, const Rational& bound)
{
    require_valid(model);
    if (bound <= 0) {
        throw ModelError("lift needs M > 0, got " + to_string(bound));
    }
    if (model.quiescence == Quiescence::Explicit) {
        throw ModelError("lift expects an LTS without explicit δ-edges");
    }

    TimedAutomaton ta;
    ta.locations = model.states;
    ta.initial = model.initial;
    ta.alphabet = model.alphabet;
    ta.bound = bound;
    for (const auto& state : model.states) {
        ta.invariants.emplace(state, ClockConstraint::LeM);
        if (is_quiescent_state(model, state)) {
            ta.transitions.insert({state, delta(), ClockConstraint::EqM, true, state});
        }
    }
    for (const auto& t : model.transitions) {
        ta.transitions.insert({t.source, t.label, ClockConstraint::LtM, true, t.target});
    }
    return ta;
}

Lts project_ta(const TimedAutomaton& ta)
{
    require_canonic(ta);
    Lts model;
    model.states = ta.locations;
    model.initial = ta.initial;
    model.alphabet = ta.alphabet;
    model.quiescence = Quiescence::Explicit;
    for (const auto& t : ta.transitions) {
        model.transitions.insert({t.source, t.label, t.target});
    }
    return model;
}

SuspensionTrace project_trace(const TimedTrace& trace)
{
    SuspensionTrace result;
    result.reserve(trace.size());
    for (const auto& step : trace) {
        result.push_back(step.label);
    }
    return result;
}

TimedStep lift_step(const Action& action)
{
    return {action.is_delta() ? DelayClass::AtM : DelayClass::BeforeM, action};
}

TimedTrace lift_trace(const SuspensionTrace& trace)
{
    TimedTrace result;
    result.reserve(trace.size());
    for (const auto& action : trace) {
        result.push_back(lift_step(action));
    }
    return result;
}

SymbolicOut lift_outs(const OutSet& outs)
{
    SymbolicOut result;
    for (const auto& action : outs) {
        result.insert(lift_step(action));
    }
    return result;
}

bool is_lift_image(const TimedAutomaton& ta)
{
    if (!validate_canonic(ta).empty()) {
        return false;
    }
    for (const auto& location : ta.locations) {
        bool loop = ta.transitions.contains({location, delta(), ClockConstraint::EqM, true, location});
        if (loop != is_quiescent_location(ta, location)) {
            return false;
        }
    }
    return true;
}

} // namespace tioco
