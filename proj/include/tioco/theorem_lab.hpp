#pragma once

#include "tioco/lts.hpp"
#include "tioco/rational.hpp"
#include "tioco/timed_automaton.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tioco {

struct RandomParams
{
    std::size_t max_states = 6;
    std::size_t n_inputs = 1;
    std::size_t n_outputs = 1;
    double edge_density = 0.25;
};

/// States `s0..`, inputs `i0..`, outputs `o0..`. Each state `sk` (k > 0) first
/// gets one edge from a uniformly chosen `sj`, j < k, with a uniform label.
/// Then for every state and label an edge to a uniform target is added with
/// probability `edge_density`, and a second one with a quarter of that.
/// States unreachable from `s0` (only possible without labels) are dropped.
/// Deterministic in (seed, params).
Lts random_lts(std::uint64_t seed, const RandomParams& params);

/// Adds an input self-loop wherever an input is missing.
Lts make_input_enabled(const Lts& model);

/// Copy of `model` with one edge retargeted, relabelled or removed, or one
/// edge added.
Lts mutate(const Lts& model, std::uint64_t seed);

/// The χ^M image with its δ-loops left out; only used to assert that the
/// oracles notice.
TimedAutomaton lift_without_delta(const Lts& model, const Rational& bound);

enum class Oracle { TraceLifting, IotaLifting, VerdictAgreement, DualPath, SuiteLifting, TestAgreement };

std::string_view name_of(Oracle oracle);
std::optional<Oracle> oracle_from_name(std::string_view name);
const std::vector<Oracle>& all_oracles();

struct BatchConfig
{
    std::size_t n_cases = 200;
    std::uint64_t seed = 42;
    std::size_t max_states = 6;
    std::size_t max_inputs = 2;
    std::size_t max_outputs = 2;
    double edge_density = 0.25;
    std::vector<Rational> m_samples{Rational(1), Rational(3, 2), Rational(5)};
    /// Test depth for the suite oracles.
    std::size_t depth = 3;
    /// Trace depth for the trace-membership oracle.
    std::size_t trace_depth = 4;
    /// Random depth-`depth` tests executed per case and M by the verdict oracle.
    std::size_t tests_per_case = 4;
    /// The suite-equality oracle skips (and reports) specs whose exhaustive
    /// suite exceeds this many tests.
    std::uint64_t suite_budget = 100000;
    std::set<Oracle> oracles{all_oracles().begin(), all_oracles().end()};
    bool inject_bug = false;
};

struct OracleOutcome
{
    bool passed = true;
    /// Short, deterministic description such as `verdict=fails` or the reason for a failure.
    std::string detail;
    /// Not evaluated because of a resource budget; counts as neither pass nor fail.
    bool skipped = false;
};

struct CaseModels
{
    Lts impl;
    Lts spec;
};

/// The (impl, spec) pair of case `index`; impl is always input-enabled.
CaseModels case_models(const BatchConfig& config, std::size_t index);

struct OracleLine
{
    std::size_t case_index = 0;
    Oracle oracle = Oracle::TraceLifting;
    OracleOutcome outcome;
};

struct TheoremReport
{
    std::size_t n_cases = 0;
    std::vector<OracleLine> lines;
    /// Failing cases with their models, in case order.
    std::vector<std::pair<OracleLine, CaseModels>> counterexamples;

    [[nodiscard]] bool passed() const { return counterexamples.empty(); }
    [[nodiscard]] std::size_t count(Oracle oracle, bool passed) const;
    [[nodiscard]] std::size_t skipped(Oracle oracle) const;
};

/// Runs one oracle on one pair; this is also how reported counterexamples are replayed.
OracleOutcome replay_oracle(Oracle oracle, const CaseModels& models, const BatchConfig& config,
                            std::size_t case_index = 0);

TheoremReport check_theorems(const BatchConfig& config);

/// One `case <k> <oracle> pass|FAIL|skip <detail>` line per oracle and case, a
/// summary block, and the serialized models of every failure.
std::string format_report(const TheoremReport& report, const BatchConfig& config);

} // namespace tioco
