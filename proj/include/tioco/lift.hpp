#pragma once

#include "tioco/lts.hpp"
#include "tioco/timed_automaton.hpp"

namespace tioco {

/// Lifts an LTS into its canonic single-clock timed automaton: every edge gets
/// guard c<M and resets c, every location gets invariant c<=M, and every
/// quiescent state gets a δ self-loop guarded by c=M.
TimedAutomaton lift(const Lts& model, const Rational& bound);

/// Forgets guards, invariants and resets. δ-edges are kept, so the result has
/// explicit quiescence.
Lts project_ta(const TimedAutomaton& ta);

SuspensionTrace project_trace(const TimedTrace& trace);

/// Inverse of project_trace on canonic traces: actions happen before M, δ at M.
TimedTrace lift_trace(const SuspensionTrace& trace);

TimedStep lift_step(const Action& action);
SymbolicOut lift_outs(const OutSet& outs);

/// True iff `ta` is canonic and carries a δ self-loop exactly on its quiescent locations.
bool is_lift_image(const TimedAutomaton& ta);

} // namespace tioco
