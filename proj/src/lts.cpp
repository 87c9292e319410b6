#include "tioco/lts.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tioco {

Action input(std::string name) { return {std::move(name), ActionKind::Input}; }
Action output(std::string name) { return {std::move(name), ActionKind::Output}; }
Action delta() { return {std::string(delta_name), ActionKind::Delta}; }

std::string display(const Action& action)
{
    switch (action.kind) {
    case ActionKind::Input: return action.name + "?";
    case ActionKind::Output: return action.name + "!";
    case ActionKind::Delta: break;
    }
    return "δ";
}

std::string display(const SuspensionTrace& trace)
{
    if (trace.empty()) {
        return "ε";
    }
    std::string text;
    for (const auto& action : trace) {
        if (!text.empty()) {
            text += ' ';
        }
        text += display(action);
    }
    return text;
}

std::string display(const OutSet& outs)
{
    std::string text = "{";
    for (const auto& action : outs) {
        if (text.size() > 1) {
            text += ", ";
        }
        text += display(action);
    }
    return text + "}";
}

bool is_identifier(std::string_view name)
{
    if (name.empty()) {
        return false;
    }
    auto head = static_cast<unsigned char>(name.front());
    if (!std::isalpha(head) && head != '_') {
        return false;
    }
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

std::vector<Action> Alphabet::input_actions() const
{
    std::vector<Action> result;
    for (const auto& name : inputs) {
        result.push_back(input(name));
    }
    return result;
}

std::vector<Action> Alphabet::output_actions() const
{
    std::vector<Action> result;
    for (const auto& name : outputs) {
        result.push_back(output(name));
    }
    return result;
}

std::vector<Action> Alphabet::actions() const
{
    auto result = input_actions();
    auto outs = output_actions();
    result.insert(result.end(), outs.begin(), outs.end());
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<Action> Alphabet::actions_with_delta() const
{
    auto result = actions();
    result.push_back(delta());
    std::sort(result.begin(), result.end());
    return result;
}

bool Alphabet::contains(const Action& action) const
{
    switch (action.kind) {
    case ActionKind::Input: return inputs.contains(action.name);
    case ActionKind::Output: return outputs.contains(action.name);
    case ActionKind::Delta: break;
    }
    return false;
}

std::vector<Violation> validate_alphabet(const Alphabet& alphabet)
{
    std::vector<Violation> violations;
    auto check_names = [&](const std::set<std::string>& names, std::string_view side) {
        for (const auto& name : names) {
            if (name == delta_name) {
                violations.push_back({"reserved-name", "'delta' cannot be used as an " + std::string(side)});
            } else if (!is_identifier(name)) {
                violations.push_back({"identifier", "label '" + name + "' is not an identifier"});
            }
        }
    };
    check_names(alphabet.inputs, "input");
    check_names(alphabet.outputs, "output");
    for (const auto& name : alphabet.inputs) {
        if (alphabet.outputs.contains(name)) {
            violations.push_back({"partition", "label '" + name + "' is both an input and an output"});
        }
    }
    return violations;
}

std::vector<Violation> validate_lts(const Lts& model)
{
    auto violations = validate_alphabet(model.alphabet);
    for (const auto& state : model.states) {
        if (!is_identifier(state)) {
            violations.push_back({"identifier", "state '" + state + "' is not an identifier"});
        }
    }
    if (!model.states.contains(model.initial)) {
        violations.push_back({"initial", "initial state '" + model.initial + "' is not declared"});
    }
    for (const auto& t : model.transitions) {
        auto where = t.source + " " + display(t.label) + " " + t.target;
        if (!model.states.contains(t.source)) {
            violations.push_back({"undeclared-state", "state '" + t.source + "' in '" + where + "' is not declared"});
        }
        if (!model.states.contains(t.target)) {
            violations.push_back({"undeclared-state", "state '" + t.target + "' in '" + where + "' is not declared"});
        }
        if (t.label.is_delta()) {
            if (model.quiescence != Quiescence::Explicit) {
                violations.push_back({"delta-label", "explicit δ-edge '" + where + "' in a model with derived quiescence"});
            }
        } else if (!model.alphabet.contains(t.label)) {
            violations.push_back({"unknown-label", "label of '" + where + "' is not in the alphabet"});
        }
    }
    return violations;
}

void require_valid(const Lts& model)
{
    auto violations = validate_lts(model);
    if (violations.empty()) {
        return;
    }
    std::ostringstream out;
    out << "invalid LTS:";
    for (const auto& v : violations) {
        out << " [" << v.rule << "] " << v.message << ";";
    }
    throw ModelError(out.str());
}

namespace {

/// Range of transitions leaving `state` (the set is ordered by source first).
auto outgoing(const Lts& model, const std::string& state)
{
    auto first = model.transitions.lower_bound(Transition{state, Action{"", ActionKind::Input}, ""});
    auto last = first;
    while (last != model.transitions.end() && last->source == state) {
        ++last;
    }
    return std::pair{first, last};
}

bool has_output_edge(const Lts& model, const std::string& state)
{
    auto [first, last] = outgoing(model, state);
    return std::any_of(first, last, [](const Transition& t) { return t.label.is_output(); });
}

void require_state(const Lts& model, const std::string& state)
{
    if (!model.states.contains(state)) {
        throw ModelError("unknown state '" + state + "'");
    }
}

} // namespace

std::vector<std::string> successors(const Lts& model, const std::string& state, const Action& label)
{
    std::vector<std::string> result;
    for (auto it = model.transitions.lower_bound(Transition{state, label, ""});
         it != model.transitions.end() && it->source == state && it->label == label; ++it) {
        result.push_back(it->target);
    }
    return result;
}

bool is_input_enabled(const Lts& model)
{
    require_valid(model);
    for (const auto& state : model.states) {
        for (const auto& i : model.alphabet.input_actions()) {
            if (successors(model, state, i).empty()) {
                return false;
            }
        }
    }
    return true;
}

bool is_quiescent_state(const Lts& model, const std::string& state)
{
    require_state(model, state);
    return !has_output_edge(model, state);
}

namespace {

bool observes_delta(const Lts& model, const std::string& state)
{
    if (model.quiescence == Quiescence::Explicit) {
        return !successors(model, state, delta()).empty();
    }
    return !has_output_edge(model, state);
}

} // namespace

OutSet out_set(const Lts& model, const StateSet& states)
{
    OutSet outs;
    for (const auto& state : states) {
        auto [first, last] = outgoing(model, state);
        for (auto it = first; it != last; ++it) {
            if (it->label.is_output()) {
                outs.insert(it->label);
            }
        }
        if (observes_delta(model, state)) {
            outs.insert(delta());
        }
    }
    return outs;
}

std::set<Action> in_set(const Lts& model, const StateSet& states)
{
    std::set<Action> ins;
    for (const auto& state : states) {
        auto [first, last] = outgoing(model, state);
        for (auto it = first; it != last; ++it) {
            if (it->label.is_input()) {
                ins.insert(it->label);
            }
        }
    }
    return ins;
}

StateSet after(const Lts& model, const StateSet& states, const Action& action)
{
    if (!action.is_delta() && !model.alphabet.contains(action)) {
        throw ModelError("unknown label '" + display(action) + "'");
    }
    StateSet result;
    for (const auto& state : states) {
        if (action.is_delta() && model.quiescence == Quiescence::Derived) {
            if (!has_output_edge(model, state)) {
                result.insert(state);
            }
            continue;
        }
        for (auto& target : successors(model, state, action)) {
            result.insert(std::move(target));
        }
    }
    return result;
}

StateSet after(const Lts& model, const StateSet& states, const SuspensionTrace& trace)
{
    StateSet current = states;
    for (const auto& action : trace) {
        if (current.empty()) {
            break;
        }
        current = after(model, current, action);
    }
    return current;
}

StateSet after(const Lts& model, const SuspensionTrace& trace)
{
    return after(model, StateSet{model.initial}, trace);
}

namespace {

void collect_straces(const Lts& model, const std::vector<Action>& labels, const StateSet& current,
                     SuspensionTrace& prefix, std::size_t depth, std::set<SuspensionTrace>& out)
{
    out.insert(prefix);
    if (prefix.size() == depth) {
        return;
    }
    for (const auto& label : labels) {
        auto next = after(model, current, label);
        if (next.empty()) {
            continue;
        }
        prefix.push_back(label);
        collect_straces(model, labels, next, prefix, depth, out);
        prefix.pop_back();
    }
}

} // namespace

std::set<SuspensionTrace> straces_upto(const Lts& model, std::size_t depth)
{
    require_valid(model);
    std::set<SuspensionTrace> traces;
    SuspensionTrace prefix;
    collect_straces(model, model.alphabet.actions_with_delta(), StateSet{model.initial}, prefix, depth, traces);
    return traces;
}

} // namespace tioco
