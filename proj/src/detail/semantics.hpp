#pragma once

// Adapters giving LTSs and canonic timed automata one interface, so the pair
// search and the test generator run the same scheme over either semantics.

#include "tioco/lift.hpp"
#include "tioco/lts.hpp"
#include "tioco/timed_automaton.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <vector>

namespace tioco::detail {

struct LtsSemantics
{
    using Set = StateSet;
    using Step = Action;
    using Outs = OutSet;
    using Trace = SuspensionTrace;

    const Lts& model;

    [[nodiscard]] Set initial() const { return {model.initial}; }
    [[nodiscard]] Outs out(const Set& q) const { return out_set(model, q); }
    [[nodiscard]] std::set<Step> inputs(const Set& q) const { return in_set(model, q); }
    [[nodiscard]] Set after(const Set& q, const Step& step) const { return tioco::after(model, q, step); }
    /// Every output plus δ, in step order.
    [[nodiscard]] std::vector<Step> observations() const
    {
        auto result = model.alphabet.output_actions();
        result.push_back(tioco::delta());
        std::sort(result.begin(), result.end());
        return result;
    }
    [[nodiscard]] std::vector<Step> output_steps() const { return model.alphabet.output_actions(); }
};

struct TaSemantics
{
    using Set = LocationSet;
    using Step = TimedStep;
    using Outs = SymbolicOut;
    using Trace = TimedTrace;

    const TimedAutomaton& model;

    [[nodiscard]] Set initial() const { return {model.initial}; }
    [[nodiscard]] Outs out(const Set& q) const { return out_m(model, q); }
    [[nodiscard]] std::set<Step> inputs(const Set& q) const { return in_m(model, q); }
    [[nodiscard]] Set after(const Set& q, const Step& step) const { return after_m(model, q, step); }
    /// Outputs before M and δ at M: the observable canonic steps.
    [[nodiscard]] std::vector<Step> observations() const
    {
        std::vector<Step> result;
        for (const auto& o : model.alphabet.output_actions()) {
            result.push_back(lift_step(o));
        }
        result.push_back(lift_step(tioco::delta()));
        std::sort(result.begin(), result.end());
        return result;
    }
    [[nodiscard]] std::vector<Step> output_steps() const
    {
        std::vector<Step> result;
        for (const auto& o : model.alphabet.output_actions()) {
            result.push_back(lift_step(o));
        }
        return result;
    }
};

template <class Outs>
Outs difference(const Outs& lhs, const Outs& rhs)
{
    Outs result;
    std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::inserter(result, result.end()));
    return result;
}

template <class Outs>
Outs intersection(const Outs& lhs, const Outs& rhs)
{
    Outs result;
    std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::inserter(result, result.end()));
    return result;
}

} // namespace tioco::detail
