#pragma once

#include "tioco/lts.hpp"
#include "tioco/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace tioco {

/// Constraints over the single clock `c`, relative to the automaton bound M.
enum class ClockConstraint { LtM, EqM, LeM };

/// Symbolic delay: [0, M) or exactly M.
enum class DelayClass { BeforeM, AtM };

std::string display(ClockConstraint constraint);
std::string display(DelayClass delay);

/// Whether a delay in class `delay` (measured from a clock reset) satisfies `constraint`.
bool satisfies(DelayClass delay, ClockConstraint constraint);

struct TimedTransition
{
    std::string source;
    Action label;
    ClockConstraint guard = ClockConstraint::LtM;
    bool resets = true;
    std::string target;

    auto operator<=>(const TimedTransition&) const = default;
};

struct TimedAutomaton
{
    std::set<std::string> locations;
    std::string initial;
    Alphabet alphabet;
    Rational bound{1};
    /// Locations without an entry carry no invariant.
    std::map<std::string, ClockConstraint> invariants;
    std::set<TimedTransition> transitions;

    bool operator==(const TimedAutomaton&) const = default;
};

struct TimedStep
{
    DelayClass delay = DelayClass::BeforeM;
    Action label;

    bool operator==(const TimedStep&) const = default;
    /// Label first so timed and untimed traces sort alike.
    std::strong_ordering operator<=>(const TimedStep& other) const
    {
        if (auto c = label <=> other.label; c != 0) {
            return c;
        }
        return delay <=> other.delay;
    }
};

using TimedTrace = std::vector<TimedStep>;
using LocationSet = std::set<std::string>;
using SymbolicOut = std::set<TimedStep>;

std::string display(const TimedStep& step);
std::string display(const TimedTrace& trace);
std::string display(const SymbolicOut& outs);

/// Structural checks shared by every timed automaton (names, endpoints, labels).
std::vector<Violation> validate_ta_structure(const TimedAutomaton& ta);
std::vector<Violation> validate_canonic(const TimedAutomaton& ta);
void require_canonic(const TimedAutomaton& ta);

bool is_quiescent_location(const TimedAutomaton& ta, const std::string& location);

/// Locations reached by letting a delay of class `step.delay` pass and taking a
/// `step.label` edge. δ is observed through its `c = M` edges.
LocationSet after_m(const TimedAutomaton& ta, const LocationSet& locations, const TimedStep& step);
LocationSet after_m(const TimedAutomaton& ta, const LocationSet& locations, const TimedTrace& trace);
LocationSet after_m(const TimedAutomaton& ta, const TimedTrace& trace);

SymbolicOut out_m(const TimedAutomaton& ta, const LocationSet& locations);
/// Input steps enabled from some member of `locations`.
std::set<TimedStep> in_m(const TimedAutomaton& ta, const LocationSet& locations);

bool is_iota(const TimedAutomaton& ta);

std::set<TimedTrace> sttraces_upto(const TimedAutomaton& ta, std::size_t depth);

} // namespace tioco
