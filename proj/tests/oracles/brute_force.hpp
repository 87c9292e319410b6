#pragma once

// Reference semantics used only by the tests. Everything here works state by
// state and path by path; nothing is shared with the library's
// set-based implementation except the model types.

#include "tioco/lts.hpp"
#include "tioco/timed_automaton.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using tioco::Action;
using tioco::Lts;
using tioco::SuspensionTrace;

inline bool quiescent(const Lts& m, const std::string& s)
{
    for (const auto& t : m.transitions) {
        if (t.source == s && t.label.is_output()) {
            return false;
        }
    }
    return true;
}

/// States reachable from `s` along `trace`, path by path.
inline void reach(const Lts& m, const std::string& s, const SuspensionTrace& trace, std::size_t k,
                  std::set<std::string>& out)
{
    if (k == trace.size()) {
        out.insert(s);
        return;
    }
    const auto& a = trace[k];
    if (a.is_delta() && m.quiescence == tioco::Quiescence::Derived) {
        if (oracle::quiescent(m, s)) {
            oracle::reach(m, s, trace, k + 1, out);
        }
        return;
    }
    for (const auto& t : m.transitions) {
        if (t.source == s && t.label == a) {
            oracle::reach(m, t.target, trace, k + 1, out);
        }
    }
}

inline std::set<std::string> after(const Lts& m, const SuspensionTrace& trace)
{
    std::set<std::string> out;
    reach(m, m.initial, trace, 0, out);
    return out;
}

inline std::set<Action> outs(const Lts& m, const std::set<std::string>& states)
{
    std::set<Action> result;
    for (const auto& s : states) {
        for (const auto& t : m.transitions) {
            if (t.source == s && (t.label.is_output() || t.label.is_delta())) {
                result.insert(t.label);
            }
        }
        if (m.quiescence == tioco::Quiescence::Derived && oracle::quiescent(m, s)) {
            result.insert(tioco::delta());
        }
    }
    return result;
}

/// All words over the alphabet plus δ of length <= depth that have a path.
inline std::set<SuspensionTrace> straces(const Lts& m, std::size_t depth)
{
    std::set<SuspensionTrace> result{{}};
    std::vector<SuspensionTrace> frontier{{}};
    auto labels = m.alphabet.actions_with_delta();
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<SuspensionTrace> next;
        for (const auto& prefix : frontier) {
            for (const auto& a : labels) {
                auto word = prefix;
                word.push_back(a);
                if (!oracle::after(m, word).empty()) {
                    result.insert(word);
                    next.push_back(word);
                }
            }
        }
        frontier = std::move(next);
    }
    return result;
}

/// Shortlex-least suspension trace of `spec` of length <= depth after which
/// `impl` shows an output `spec` does not allow.
inline std::optional<SuspensionTrace> ioco_counterexample(const Lts& impl, const Lts& spec, std::size_t depth)
{
    std::vector<SuspensionTrace> frontier{{}};
    auto labels = spec.alphabet.actions_with_delta();
    for (std::size_t d = 0; d <= depth; ++d) {
        std::sort(frontier.begin(), frontier.end());
        for (const auto& word : frontier) {
            auto impl_outs = oracle::outs(impl, oracle::after(impl, word));
            auto spec_outs = oracle::outs(spec, oracle::after(spec, word));
            for (const auto& o : impl_outs) {
                if (!spec_outs.contains(o)) {
                    return word;
                }
            }
        }
        std::vector<SuspensionTrace> next;
        for (const auto& prefix : frontier) {
            for (const auto& a : labels) {
                auto word = prefix;
                word.push_back(a);
                if (!oracle::after(spec, word).empty()) {
                    next.push_back(word);
                }
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

/// Concrete timed semantics with exact rational delays and a real clock
/// value per location, independent of the symbolic delay classes.
struct ConcreteState
{
    std::string location;
    tioco::Rational clock;

    bool operator<(const ConcreteState& other) const
    {
        return location != other.location ? location < other.location : clock < other.clock;
    }
};

inline bool holds(tioco::ClockConstraint constraint, const tioco::Rational& value, const tioco::Rational& bound)
{
    switch (constraint) {
    case tioco::ClockConstraint::LtM: return value < bound;
    case tioco::ClockConstraint::EqM: return value == bound;
    case tioco::ClockConstraint::LeM: break;
    }
    return value <= bound;
}

/// Waits `delay` (the invariant must hold at every instant) and then takes a
/// `label` edge whose guard holds.
inline std::set<ConcreteState> concrete_step(const tioco::TimedAutomaton& ta, const std::set<ConcreteState>& from,
                                             const tioco::Rational& delay, const Action& label)
{
    std::set<ConcreteState> result;
    for (const auto& [location, clock] : from) {
        auto reached = clock + delay;
        if (auto it = ta.invariants.find(location); it != ta.invariants.end()) {
            // Invariants are downward closed, so holding at the end suffices.
            if (!holds(it->second, clock, ta.bound) || !holds(it->second, reached, ta.bound)) {
                continue;
            }
            if (it->second == tioco::ClockConstraint::EqM && delay != 0) {
                continue;
            }
        }
        for (const auto& t : ta.transitions) {
            if (t.source != location || t.label != label || !holds(t.guard, reached, ta.bound)) {
                continue;
            }
            auto entry = t.resets ? tioco::Rational(0) : reached;
            if (auto it = ta.invariants.find(t.target); it != ta.invariants.end() &&
                                                        !holds(it->second, entry, ta.bound)) {
                continue;
            }
            result.insert({t.target, entry});
        }
    }
    return result;
}

inline std::set<std::string> locations_of(const std::set<ConcreteState>& states)
{
    std::set<std::string> result;
    for (const auto& s : states) {
        result.insert(s.location);
    }
    return result;
}

} // namespace oracle
