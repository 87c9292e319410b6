#include "doctest.h"

#include "support.hpp"
#include "tioco/conformance.hpp"
#include "tioco/format.hpp"
#include "tioco/theorem_lab.hpp"

using namespace tioco;
using support::golden;

TEST_SUITE("theorem-lab")
{
    TEST_CASE("random models are valid, reachable and reproducible")
    {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            RandomParams params{1 + seed % 6, seed % 3, seed % 2, 0.4};
            auto m = random_lts(seed, params);
            CHECK(validate_lts(m).empty());
            CHECK(m == random_lts(seed, params));
            for (const auto& s : m.states) {
                bool reachable = s == m.initial;
                for (std::size_t depth = 1; !reachable && depth <= m.states.size(); ++depth) {
                    for (const auto& sigma : straces_upto(m, depth)) {
                        reachable = reachable || after(m, sigma).contains(s);
                    }
                }
                CHECK(reachable);
            }
        }
    }

    TEST_CASE("pinned random model")
    {
        auto m = random_lts(1, {4, 1, 1, 0.5});
        CHECK(serialize(m) == "lts\n"
                              "inputs: i0\n"
                              "outputs: o0\n"
                              "init: s0\n"
                              "s0 i0? s1\n"
                              "s0 i0? s2\n"
                              "s0 o0! s3\n"
                              "s1 i0? s3\n"
                              "s1 o0! s0\n"
                              "s2 i0? s2\n"
                              "s2 o0! s3\n"
                              "s3 i0? s3\n"
                              "s3 o0! s0\n"
                              "s3 o0! s3\n");
    }

    TEST_CASE("no outputs means every state is quiescent")
    {
        auto m = random_lts(3, {5, 2, 0, 0.5});
        for (const auto& s : m.states) {
            CHECK(is_quiescent_state(m, s));
        }
    }

    TEST_CASE("degenerate parameters")
    {
        CHECK_THROWS_AS((void)random_lts(1, {0, 1, 1, 0.5}), ModelError);
        CHECK_THROWS_AS((void)random_lts(1, {3, 1, 1, 1.5}), ModelError);
        CHECK_THROWS_AS((void)random_lts(1, {3, 1, 1, -0.1}), ModelError);
        CHECK(random_lts(1, {3, 0, 0, 0.5}).states.size() == 1);
    }

    TEST_CASE("input completion")
    {
        CHECK(make_input_enabled(golden("A")) == golden("B"));
        CHECK(make_input_enabled(golden("B")) == golden("B"));
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto m = random_lts(seed, {5, 2, 2, 0.3});
            auto enabled = make_input_enabled(m);
            CHECK(is_input_enabled(enabled));
            CHECK(make_input_enabled(enabled) == enabled);
            for (const auto& t : m.transitions) {
                CHECK(enabled.transitions.contains(t));
            }
        }
    }

    TEST_CASE("empty batch")
    {
        BatchConfig config;
        config.n_cases = 0;
        auto report = check_theorems(config);
        CHECK(report.passed());
        CHECK(report.lines.empty());
    }

    TEST_CASE("small batch passes and is deterministic")
    {
        BatchConfig config;
        config.n_cases = 20;
        auto first = format_report(check_theorems(config), config);
        auto second = format_report(check_theorems(config), config);
        CHECK(first == second);
        CHECK(first.find("result pass\n") != std::string::npos);
        CHECK(first.find("case 0 verdict-agreement pass") != std::string::npos);
    }

    TEST_CASE("dropping δ-loops is caught and replays")
    {
        BatchConfig config;
        config.inject_bug = true;
        config.oracles = {Oracle::VerdictAgreement};
        auto report = check_theorems(config);
        REQUIRE_FALSE(report.passed());
        const auto& [line, models] = report.counterexamples.front();
        auto replayed = replay_oracle(line.oracle, models, config, line.case_index);
        CHECK_FALSE(replayed.passed);
        CHECK(replayed.detail == line.outcome.detail);
        // Serialized models in the report replay the same way.
        CaseModels reparsed{parse_lts(serialize(models.impl)), parse_lts(serialize(models.spec))};
        CHECK_FALSE(replay_oracle(line.oracle, reparsed, config).passed);
        config.inject_bug = false;
        CHECK(replay_oracle(line.oracle, models, config).passed);
    }

    TEST_CASE("suite budget turns into a visible skip")
    {
        BatchConfig config;
        config.suite_budget = 1;
        config.n_cases = 3;
        config.oracles = {Oracle::SuiteLifting};
        auto report = check_theorems(config);
        CHECK(report.passed());
        CHECK(report.skipped(Oracle::SuiteLifting) == 3);
        CHECK(format_report(report, config).find("skipped=3") != std::string::npos);
    }

    TEST_CASE("oracle names")
    {
        for (auto oracle : all_oracles()) {
            CHECK(oracle_from_name(name_of(oracle)) == oracle);
        }
        CHECK_FALSE(oracle_from_name("no-such-oracle").has_value());
    }
}
