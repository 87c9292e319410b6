#include "tioco/timed_automaton.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace tioco {

std::string display(ClockConstraint constraint)
{
    switch (constraint) {
    case ClockConstraint::LtM: return "c<M";
    case ClockConstraint::EqM: return "c=M";
    case ClockConstraint::LeM: break;
    }
    return "c<=M";
}

std::string display(DelayClass delay)
{
    return delay == DelayClass::BeforeM ? "<M" : "=M";
}

bool satisfies(DelayClass delay, ClockConstraint constraint)
{
    switch (constraint) {
    case ClockConstraint::LtM: return delay == DelayClass::BeforeM;
    case ClockConstraint::EqM: return delay == DelayClass::AtM;
    case ClockConstraint::LeM: break;
    }
    return true;
}

std::string display(const TimedStep& step)
{
    return "(" + display(step.delay) + ", " + display(step.label) + ")";
}

std::string display(const TimedTrace& trace)
{
    if (trace.empty()) {
        return "ε";
    }
    std::string text;
    for (const auto& step : trace) {
        if (!text.empty()) {
            text += ' ';
        }
        text += display(step);
    }
    return text;
}

std::string display(const SymbolicOut& outs)
{
    std::string text = "{";
    for (const auto& step : outs) {
        if (text.size() > 1) {
            text += ", ";
        }
        text += display(step);
    }
    return text + "}";
}

std::vector<Violation> validate_ta_structure(const TimedAutomaton& ta)
{
    auto violations = validate_alphabet(ta.alphabet);
    for (const auto& location : ta.locations) {
        if (!is_identifier(location)) {
            violations.push_back({"identifier", "location '" + location + "' is not an identifier"});
        }
    }
    if (!ta.locations.contains(ta.initial)) {
        violations.push_back({"initial", "initial location '" + ta.initial + "' is not declared"});
    }
    for (const auto& [location, constraint] : ta.invariants) {
        if (!ta.locations.contains(location)) {
            violations.push_back({"undeclared-state", "invariant on undeclared location '" + location + "'"});
        }
    }
    for (const auto& t : ta.transitions) {
        auto where = t.source + " " + display(t.label) + " " + t.target;
        if (!ta.locations.contains(t.source)) {
            violations.push_back({"undeclared-state", "location '" + t.source + "' in '" + where + "' is not declared"});
        }
        if (!ta.locations.contains(t.target)) {
            violations.push_back({"undeclared-state", "location '" + t.target + "' in '" + where + "' is not declared"});
        }
        if (!t.label.is_delta() && !ta.alphabet.contains(t.label)) {
            violations.push_back({"unknown-label", "label of '" + where + "' is not in the alphabet"});
        }
    }
    return violations;
}

namespace {

bool has_output_edge_before_m(const TimedAutomaton& ta, const std::string& location)
{
    return std::any_of(ta.transitions.begin(), ta.transitions.end(), [&](const TimedTransition& t) {
        return t.source == location && t.label.is_output() && satisfies(DelayClass::BeforeM, t.guard);
    });
}

} // namespace

std::vector<Violation> validate_canonic(const TimedAutomaton& ta)
{
    auto violations = validate_ta_structure(ta);
    if (ta.bound <= 0) {
        violations.push_back({"bound", "M must be positive, got " + to_string(ta.bound)});
    }
    for (const auto& location : ta.locations) {
        auto it = ta.invariants.find(location);
        if (it == ta.invariants.end()) {
            violations.push_back({"invariant", "location '" + location + "' has no invariant c<=M"});
        } else if (it->second != ClockConstraint::LeM) {
            violations.push_back({"invariant", "location '" + location + "' has invariant " + display(it->second)});
        }
    }
    for (const auto& t : ta.transitions) {
        auto where = t.source + " " + display(t.label) + " " + t.target;
        if (!t.resets) {
            violations.push_back({"reset", "edge '" + where + "' does not reset c"});
        }
        auto expected = t.label.is_delta() ? ClockConstraint::EqM : ClockConstraint::LtM;
        if (t.guard != expected) {
            violations.push_back({"guard", "edge '" + where + "' has guard " + display(t.guard) + ", expected " +
                                               display(expected)});
        }
        if (t.label.is_delta()) {
            if (t.source != t.target) {
                violations.push_back({"delta-loop", "δ-edge '" + where + "' is not a self-loop"});
            } else if (has_output_edge_before_m(ta, t.source)) {
                violations.push_back({"delta-loop", "δ-edge '" + where + "' on a location enabling outputs"});
            }
        }
    }
    return violations;
}

void require_canonic(const TimedAutomaton& ta)
{
    auto violations = validate_canonic(ta);
    if (violations.empty()) {
        return;
    }
    std::ostringstream out;
    out << "not a canonic timed automaton:";
    for (const auto& v : violations) {
        out << " [" << v.rule << "] " << v.message << ";";
    }
    throw ModelError(out.str());
}

bool is_quiescent_location(const TimedAutomaton& ta, const std::string& location)
{
    if (!ta.locations.contains(location)) {
        throw ModelError("unknown location '" + location + "'");
    }
    return !has_output_edge_before_m(ta, location);
}

namespace {

std::optional<ClockConstraint> invariant_of(const TimedAutomaton& ta, const std::string& location)
{
    auto it = ta.invariants.find(location);
    if (it == ta.invariants.end()) {
        return std::nullopt;
    }
    return it->second;
}

/// The invariant must hold at every instant of a delay starting at clock 0.
bool holds_throughout(std::optional<ClockConstraint> invariant, DelayClass delay)
{
    if (!invariant) {
        return true;
    }
    switch (*invariant) {
    case ClockConstraint::LtM: return delay == DelayClass::BeforeM;
    case ClockConstraint::EqM: return false;
    case ClockConstraint::LeM: break;
    }
    return true;
}

bool holds_on_entry(std::optional<ClockConstraint> invariant, bool reset, DelayClass delay)
{
    if (!invariant) {
        return true;
    }
    if (!reset) {
        return satisfies(delay, *invariant);
    }
    return *invariant != ClockConstraint::EqM;
}

} // namespace

LocationSet after_m(const TimedAutomaton& ta, const LocationSet& locations, const TimedStep& step)
{
    if (!step.label.is_delta() && !ta.alphabet.contains(step.label)) {
        throw ModelError("unknown label '" + display(step.label) + "'");
    }
    LocationSet result;
    for (const auto& location : locations) {
        if (!holds_throughout(invariant_of(ta, location), step.delay)) {
            continue;
        }
        auto it = ta.transitions.lower_bound(
            TimedTransition{location, step.label, ClockConstraint::LtM, false, ""});
        for (; it != ta.transitions.end() && it->source == location && it->label == step.label; ++it) {
            if (satisfies(step.delay, it->guard) &&
                holds_on_entry(invariant_of(ta, it->target), it->resets, step.delay)) {
                result.insert(it->target);
            }
        }
    }
    return result;
}

LocationSet after_m(const TimedAutomaton& ta, const LocationSet& locations, const TimedTrace& trace)
{
    LocationSet current = locations;
    for (const auto& step : trace) {
        if (current.empty()) {
            break;
        }
        current = after_m(ta, current, step);
    }
    return current;
}

LocationSet after_m(const TimedAutomaton& ta, const TimedTrace& trace)
{
    return after_m(ta, LocationSet{ta.initial}, trace);
}

namespace {

constexpr DelayClass delay_classes[] = {DelayClass::BeforeM, DelayClass::AtM};

} // namespace

SymbolicOut out_m(const TimedAutomaton& ta, const LocationSet& locations)
{
    SymbolicOut outs;
    auto labels = ta.alphabet.output_actions();
    labels.push_back(delta());
    for (const auto& label : labels) {
        for (auto delay : delay_classes) {
            TimedStep step{delay, label};
            if (!after_m(ta, locations, step).empty()) {
                outs.insert(step);
            }
        }
    }
    return outs;
}

std::set<TimedStep> in_m(const TimedAutomaton& ta, const LocationSet& locations)
{
    std::set<TimedStep> ins;
    for (const auto& label : ta.alphabet.input_actions()) {
        for (auto delay : delay_classes) {
            TimedStep step{delay, label};
            if (!after_m(ta, locations, step).empty()) {
                ins.insert(step);
            }
        }
    }
    return ins;
}

bool is_iota(const TimedAutomaton& ta)
{
    require_canonic(ta);
    for (const auto& location : ta.locations) {
        for (const auto& i : ta.alphabet.input_actions()) {
            if (after_m(ta, LocationSet{location}, TimedStep{DelayClass::BeforeM, i}).empty()) {
                return false;
            }
        }
    }
    return true;
}

namespace {

void collect_sttraces(const TimedAutomaton& ta, const std::vector<TimedStep>& steps, const LocationSet& current,
                      TimedTrace& prefix, std::size_t depth, std::set<TimedTrace>& out)
{
    out.insert(prefix);
    if (prefix.size() == depth) {
        return;
    }
    for (const auto& step : steps) {
        auto next = after_m(ta, current, step);
        if (next.empty()) {
            continue;
        }
        prefix.push_back(step);
        collect_sttraces(ta, steps, next, prefix, depth, out);
        prefix.pop_back();
    }
}

} // namespace

std::set<TimedTrace> sttraces_upto(const TimedAutomaton& ta, std::size_t depth)
{
    require_canonic(ta);
    std::vector<TimedStep> steps;
    for (const auto& label : ta.alphabet.actions_with_delta()) {
        for (auto delay : delay_classes) {
            steps.push_back({delay, label});
        }
    }
    std::set<TimedTrace> traces;
    TimedTrace prefix;
    collect_sttraces(ta, steps, LocationSet{ta.initial}, prefix, depth, traces);
    return traces;
}

} // namespace tioco
