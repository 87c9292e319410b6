#pragma once

#include "tioco/lts.hpp"
#include "tioco/timed_automaton.hpp"

#include <cstddef>
#include <optional>

namespace tioco {

template <class Trace, class Outs>
struct Counterexample
{
    /// Shortest trace of the specification after which the implementation
    /// shows an unspecified output; ties go to the lexicographically smallest.
    Trace witness;
    /// Outputs of the implementation after `witness` that the specification lacks.
    Outs offending;

    bool operator==(const Counterexample&) const = default;
};

template <class Trace, class Outs>
struct ConformanceVerdict
{
    std::optional<Counterexample<Trace, Outs>> failure;
    /// Number of (implementation, specification) set pairs visited.
    std::size_t explored_pairs = 0;

    [[nodiscard]] bool conforms() const { return !failure.has_value(); }
};

using IocoVerdict = ConformanceVerdict<SuspensionTrace, OutSet>;
using TiocoVerdict = ConformanceVerdict<TimedTrace, SymbolicOut>;

/// Decides `impl ioco spec`. `impl` must be input-enabled and both models
/// must share one alphabet.
IocoVerdict check_ioco(const Lts& impl, const Lts& spec);

/// Decides tioco_M over the symbolic delay quotient. Both automata must be
/// canonic with the same M, and `impl` must be input-enabled.
TiocoVerdict check_tioco_m(const TimedAutomaton& impl, const TimedAutomaton& spec);

/// Second decision path: projects both automata, runs check_ioco and lifts
/// the witness back. Both automata must be images of lift.
TiocoVerdict check_tioco_via_projection(const TimedAutomaton& impl, const TimedAutomaton& spec);

} // namespace tioco
