#pragma once

#include "tioco/lts.hpp"
#include "tioco/timed_automaton.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace tioco {

inline constexpr std::string_view pass_state = "pass";
inline constexpr std::string_view fail_state = "fail";

/// Tree-shaped LTS over Act ∪ {δ} with explicit δ-edges and the sinks
/// `pass` and `fail` (both always declared).
struct TestCase
{
    Lts graph;

    bool operator==(const TestCase&) const = default;
};

/// Canonic-shaped timed tree; `pass`/`fail` carry no invariant.
struct TimedTestCase
{
    TimedAutomaton graph;

    bool operator==(const TimedTestCase&) const = default;
};

/// Shape, sink, tree and determinism checks that need no specification.
std::vector<Violation> validate_test_structure(const TestCase& test);
std::vector<Violation> validate_test_structure(const TimedTestCase& test);

/// All test-case clauses against `spec`, including input-specifiedness,
/// soundness and correctness of every trace of the tree.
std::vector<Violation> validate_test_lts(const TestCase& test, const Lts& spec);
std::vector<Violation> validate_test_ta(const TimedTestCase& test, const TimedAutomaton& spec);

/// Renames internal nodes `q0, q1, ...` in breadth-first order, children by label.
TestCase canonicalize(const TestCase& test);
TimedTestCase canonicalize(const TimedTestCase& test);

struct Exhaustive
{
};

/// Draws `count` tests, choosing uniformly at every node among stop,
/// observe and each enabled input. Duplicates are dropped.
struct RandomSelection
{
    std::uint64_t seed = 0;
    std::size_t count = 0;
};

using GenerationMode = std::variant<Exhaustive, RandomSelection>;

template <class Test>
struct Suite
{
    /// Canonical tests ordered by their serialization, without duplicates.
    std::vector<Test> tests;

    bool operator==(const Suite&) const = default;
};

using TestSuite = Suite<TestCase>;
using TimedTestSuite = Suite<TimedTestCase>;

/// Test derivation. `depth` bounds the number of stimulate/observe decisions
/// on any path, so every trace of a generated test has length <= depth.
TestSuite generate_tests(const Lts& spec, std::size_t depth, const GenerationMode& mode);
/// The same scheme over the symbolic timed semantics of a canonic automaton.
TimedTestSuite generate_tests_ta(const TimedAutomaton& spec, std::size_t depth, const GenerationMode& mode);

/// Number of trees the exhaustive mode would build, saturating at UINT64_MAX.
std::uint64_t count_tests(const Lts& spec, std::size_t depth);
std::uint64_t count_tests_ta(const TimedAutomaton& spec, std::size_t depth);

/// The test that follows `trace` (stimulating inputs, observing outputs and δ)
/// and then observes once more. `trace` must be a suspension trace of `spec`.
TestCase trace_test(const Lts& spec, const SuspensionTrace& trace);

TimedTestCase lift_test(const TestCase& test, const Rational& bound);
/// Drops guards, invariants and resets of a timed test.
TestCase project_ta(const TimedTestCase& test);

template <class Trace>
struct TestVerdict
{
    /// Shortest trace shared by test and implementation that ends in `fail`.
    std::optional<Trace> failure;

    [[nodiscard]] bool passed() const { return !failure.has_value(); }
    bool operator==(const TestVerdict&) const = default;
};

TestVerdict<SuspensionTrace> run_test_lts(const TestCase& test, const Lts& impl);
TestVerdict<TimedTrace> run_test_ta(const TimedTestCase& test, const TimedAutomaton& impl);

template <class Trace>
struct SuiteSummary
{
    std::vector<TestVerdict<Trace>> verdicts;

    [[nodiscard]] bool passed() const
    {
        for (const auto& v : verdicts) {
            if (!v.passed()) {
                return false;
            }
        }
        return true;
    }
};

SuiteSummary<SuspensionTrace> run_suite(const TestSuite& suite, const Lts& impl);
SuiteSummary<TimedTrace> run_suite(const TimedTestSuite& suite, const TimedAutomaton& impl);

} // namespace tioco
