#include "tioco/theorem_lab.hpp"

#include "tioco/conformance.hpp"
#include "tioco/format.hpp"
#include "tioco/lift.hpp"
#include "tioco/testing.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

namespace tioco {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n)
{
    return static_cast<std::size_t>(rng() % n);
}

/// Uniform in [0, 1) from the top 53 bits, independent of the standard library.
double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string state_name(std::size_t k)
{
    return "s" + std::to_string(k);
}

Lts prune_unreachable(Lts model)
{
    std::set<std::string> seen{model.initial};
    std::deque<std::string> queue{model.initial};
    while (!queue.empty()) {
        auto state = queue.front();
        queue.pop_front();
        for (const auto& t : model.transitions) {
            if (t.source == state && seen.insert(t.target).second) {
                queue.push_back(t.target);
            }
        }
    }
    std::erase_if(model.transitions, [&](const Transition& t) { return !seen.contains(t.source); });
    model.states = seen;
    return model;
}

} // namespace

Lts random_lts(std::uint64_t seed, const RandomParams& params)
{
    if (params.max_states == 0) {
        throw ModelError("random_lts needs at least one state");
    }
    if (!(params.edge_density >= 0.0 && params.edge_density <= 1.0)) {
        throw ModelError("edge density must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    Lts model;
    for (std::size_t k = 0; k < params.n_inputs; ++k) {
        model.alphabet.inputs.insert("i" + std::to_string(k));
    }
    for (std::size_t k = 0; k < params.n_outputs; ++k) {
        model.alphabet.outputs.insert("o" + std::to_string(k));
    }
    for (std::size_t k = 0; k < params.max_states; ++k) {
        model.states.insert(state_name(k));
    }
    model.initial = state_name(0);
    auto labels = model.alphabet.actions();
    if (!labels.empty()) {
        for (std::size_t s = 1; s < params.max_states; ++s) {
            model.transitions.insert({state_name(pick(rng, s)), labels[pick(rng, labels.size())], state_name(s)});
        }
    }
    for (std::size_t s = 0; s < params.max_states; ++s) {
        for (const auto& label : labels) {
            if (unit(rng) < params.edge_density) {
                model.transitions.insert({state_name(s), label, state_name(pick(rng, params.max_states))});
                if (unit(rng) < params.edge_density / 4) {
                    model.transitions.insert({state_name(s), label, state_name(pick(rng, params.max_states))});
                }
            }
        }
    }
    return prune_unreachable(std::move(model));
}

Lts make_input_enabled(const Lts& model)
{
    require_valid(model);
    Lts result = model;
    for (const auto& state : model.states) {
        for (const auto& i : model.alphabet.input_actions()) {
            if (successors(model, state, i).empty()) {
                result.transitions.insert({state, i, state});
            }
        }
    }
    return result;
}

Lts mutate(const Lts& model, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Lts result = model;
    std::vector<Transition> edges(model.transitions.begin(), model.transitions.end());
    std::vector<std::string> states(model.states.begin(), model.states.end());
    auto labels = model.alphabet.actions();
    auto add_random = [&] {
        if (labels.empty()) {
            return;
        }
        result.transitions.insert(
            {states[pick(rng, states.size())], labels[pick(rng, labels.size())], states[pick(rng, states.size())]});
    };
    if (edges.empty()) {
        add_random();
        return result;
    }
    auto edge = edges[pick(rng, edges.size())];
    switch (pick(rng, 4)) {
    case 0:
        result.transitions.erase(edge);
        result.transitions.insert({edge.source, edge.label, states[pick(rng, states.size())]});
        break;
    case 1:
        result.transitions.erase(edge);
        result.transitions.insert({edge.source, labels[pick(rng, labels.size())], edge.target});
        break;
    case 2: result.transitions.erase(edge); break;
    default: add_random(); break;
    }
    return result;
}

TimedAutomaton lift_without_delta(const Lts& model, const Rational& bound)
{
    auto ta = lift(model, bound);
    std::erase_if(ta.transitions, [](const TimedTransition& t) { return t.label.is_delta(); });
    return ta;
}

std::string_view name_of(Oracle oracle)
{
    switch (oracle) {
    case Oracle::TraceLifting: return "trace-lifting";
    case Oracle::IotaLifting: return "iota-lifting";
    case Oracle::VerdictAgreement: return "verdict-agreement";
    case Oracle::DualPath: return "dual-path";
    case Oracle::SuiteLifting: return "suite-lifting";
    case Oracle::TestAgreement: break;
    }
    return "test-agreement";
}

const std::vector<Oracle>& all_oracles()
{
    static const std::vector<Oracle> oracles{Oracle::TraceLifting,   Oracle::IotaLifting, Oracle::VerdictAgreement,
                                             Oracle::DualPath, Oracle::SuiteLifting,   Oracle::TestAgreement};
    return oracles;
}

std::optional<Oracle> oracle_from_name(std::string_view name)
{
    for (auto oracle : all_oracles()) {
        if (name_of(oracle) == name) {
            return oracle;
        }
    }
    return std::nullopt;
}

namespace {

std::uint64_t case_seed(const BatchConfig& config, std::size_t index)
{
    return splitmix64(config.seed ^ splitmix64(index));
}

} // namespace

CaseModels case_models(const BatchConfig& config, std::size_t index)
{
    std::mt19937_64 rng(case_seed(config, index));
    RandomParams params;
    params.max_states = 1 + pick(rng, config.max_states);
    params.n_inputs = 1 + pick(rng, config.max_inputs);
    params.n_outputs = 1 + pick(rng, config.max_outputs);
    params.edge_density = config.edge_density;
    auto spec = random_lts(rng(), params);
    auto other_seed = rng();
    Lts impl;
    switch (index % 3) {
    case 0: impl = random_lts(other_seed, params); break;
    case 1: impl = spec; break;
    default: impl = mutate(spec, other_seed); break;
    }
    return {make_input_enabled(impl), std::move(spec)};
}

std::size_t TheoremReport::count(Oracle oracle, bool passed) const
{
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const OracleLine& line) {
        return line.oracle == oracle && !line.outcome.skipped && line.outcome.passed == passed;
    }));
}

std::size_t TheoremReport::skipped(Oracle oracle) const
{
    return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const OracleLine& line) {
        return line.oracle == oracle && line.outcome.skipped;
    }));
}

namespace {

struct Lab
{
    const BatchConfig& config;

    [[nodiscard]] TimedAutomaton chi(const Lts& model, const Rational& bound) const
    {
        return config.inject_bug ? lift_without_delta(model, bound) : lift(model, bound);
    }

    [[nodiscard]] OracleOutcome trace_lifting(const CaseModels& models) const
    {
        for (const auto* model : {&models.spec, &models.impl}) {
            auto untimed = straces_upto(*model, config.trace_depth);
            for (const auto& bound : config.m_samples) {
                auto timed = sttraces_upto(chi(*model, bound), config.trace_depth);
                for (const auto& sigma : untimed) {
                    if (!timed.contains(lift_trace(sigma))) {
                        return {false, "M=" + to_string(bound) + " lift of '" + display(sigma) +
                                           "' is not a symbolic timed trace"};
                    }
                }
                for (const auto& rho : timed) {
                    if (!untimed.contains(project_trace(rho))) {
                        return {false, "M=" + to_string(bound) + " projection of '" + display(rho) +
                                           "' is not a suspension trace"};
                    }
                }
            }
        }
        return {true, ""};
    }

    [[nodiscard]] OracleOutcome iota_lifting(const CaseModels& models) const
    {
        for (const auto* model : {&models.spec, &models.impl}) {
            if (!is_input_enabled(*model)) {
                continue;
            }
            for (const auto& bound : config.m_samples) {
                if (!is_iota(chi(*model, bound))) {
                    return {false, "M=" + to_string(bound) + " lift of an input-enabled model is not an IOTA"};
                }
            }
        }
        return {true, ""};
    }

    [[nodiscard]] OracleOutcome verdict_agreement(const CaseModels& models) const
    {
        auto untimed = check_ioco(models.impl, models.spec);
        std::optional<TiocoVerdict> first;
        for (const auto& bound : config.m_samples) {
            auto timed = check_tioco_m(chi(models.impl, bound), chi(models.spec, bound));
            auto where = "M=" + to_string(bound) + " ";
            if (timed.conforms() != untimed.conforms()) {
                return {false, where + "ioco " + (untimed.conforms() ? "conforms" : "fails") + " but tioco " +
                                   (timed.conforms() ? "conforms" : "fails")};
            }
            if (first && first->failure != timed.failure) {
                return {false, where + "timed verdict differs from M=" + to_string(config.m_samples.front())};
            }
            if (!first) {
                first = timed;
            }
            if (!timed.conforms()) {
                auto witness = project_trace(timed.failure->witness);
                auto impl_after = after(models.impl, witness);
                auto spec_after = after(models.spec, witness);
                auto impl_out = out_set(models.impl, impl_after);
                auto spec_out = out_set(models.spec, spec_after);
                bool escapes = std::any_of(impl_out.begin(), impl_out.end(),
                                           [&](const Action& a) { return !spec_out.contains(a); });
                if (spec_after.empty() || impl_after.empty() || !escapes) {
                    return {false, where + "projected witness '" + display(witness) +
                                       "' is not an untimed counterexample"};
                }
            }
        }
        if (untimed.conforms()) {
            return {true, "verdict=conforms"};
        }
        return {true, "verdict=fails witness=" + display(untimed.failure->witness)};
    }

    [[nodiscard]] OracleOutcome dual_path(const CaseModels& models) const
    {
        for (const auto& bound : config.m_samples) {
            auto impl = chi(models.impl, bound);
            auto spec = chi(models.spec, bound);
            auto symbolic = check_tioco_m(impl, spec);
            auto projected = check_tioco_via_projection(impl, spec);
            if (symbolic.failure != projected.failure) {
                auto show = [](const TiocoVerdict& v) {
                    return v.conforms() ? std::string("conforms") : "fails " + display(v.failure->witness);
                };
                return {false, "M=" + to_string(bound) + " symbolic " + show(symbolic) + " vs projection " +
                                   show(projected)};
            }
        }
        return {true, ""};
    }

    [[nodiscard]] OracleOutcome suite_lifting(const CaseModels& models) const
    {
        if (auto size = count_tests(models.spec, config.depth); size > config.suite_budget) {
            return {true, "tests=" + std::to_string(size) + " over budget", true};
        }
        auto suite = generate_tests(models.spec, config.depth, Exhaustive{});
        for (const auto& bound : config.m_samples) {
            std::set<std::string> lifted;
            for (const auto& test : suite.tests) {
                lifted.insert(serialize(lift_test(test, bound)));
            }
            std::set<std::string> direct;
            for (const auto& test : generate_tests_ta(chi(models.spec, bound), config.depth, Exhaustive{}).tests) {
                direct.insert(serialize(test));
            }
            if (lifted != direct) {
                std::size_t only_lifted = 0;
                for (const auto& text : lifted) {
                    only_lifted += direct.contains(text) ? 0 : 1;
                }
                std::size_t only_direct = 0;
                for (const auto& text : direct) {
                    only_direct += lifted.contains(text) ? 0 : 1;
                }
                return {false, "M=" + to_string(bound) + " " + std::to_string(only_lifted) +
                                   " lifted tests not generated, " + std::to_string(only_direct) +
                                   " generated tests not lifted"};
            }
        }
        return {true, "tests=" + std::to_string(suite.tests.size())};
    }

    [[nodiscard]] OracleOutcome test_agreement(const CaseModels& models, std::size_t case_index) const
    {
        auto seed = splitmix64(case_seed(config, case_index) + 1);
        auto suite = generate_tests(models.spec, config.depth, RandomSelection{seed, config.tests_per_case});
        std::size_t pairs = 0;
        std::size_t fails = 0;
        for (const auto& bound : config.m_samples) {
            auto impl = chi(models.impl, bound);
            for (std::size_t k = 0; k < suite.tests.size(); ++k) {
                const auto& test = suite.tests[k];
                auto untimed = run_test_lts(test, models.impl);
                auto timed = run_test_ta(lift_test(test, bound), impl);
                ++pairs;
                auto where = "M=" + to_string(bound) + " test " + std::to_string(k) + " ";
                if (untimed.passed() != timed.passed()) {
                    return {false, where + "untimed " + (untimed.passed() ? "passes" : "fails") + " but timed " +
                                       (timed.passed() ? "passes" : "fails")};
                }
                if (!untimed.passed()) {
                    ++fails;
                    if (lift_trace(*untimed.failure) != *timed.failure ||
                        project_trace(*timed.failure) != *untimed.failure) {
                        return {false, where + "witnesses '" + display(*untimed.failure) + "' and '" +
                                           display(*timed.failure) + "' do not correspond"};
                    }
                }
            }
        }
        return {true, "pairs=" + std::to_string(pairs) + " fails=" + std::to_string(fails)};
    }
};

} // namespace

OracleOutcome replay_oracle(Oracle oracle, const CaseModels& models, const BatchConfig& config,
                            std::size_t case_index)
{
    Lab lab{config};
    try {
        switch (oracle) {
        case Oracle::TraceLifting: return lab.trace_lifting(models);
        case Oracle::IotaLifting: return lab.iota_lifting(models);
        case Oracle::VerdictAgreement: return lab.verdict_agreement(models);
        case Oracle::DualPath: return lab.dual_path(models);
        case Oracle::SuiteLifting: return lab.suite_lifting(models);
        case Oracle::TestAgreement: break;
        }
        return lab.test_agreement(models, case_index);
    } catch (const std::exception& error) {
        return {false, std::string("error: ") + error.what()};
    }
}

TheoremReport check_theorems(const BatchConfig& config)
{
    TheoremReport report;
    report.n_cases = config.n_cases;
    for (std::size_t k = 0; k < config.n_cases; ++k) {
        auto models = case_models(config, k);
        for (auto oracle : all_oracles()) {
            if (!config.oracles.contains(oracle)) {
                continue;
            }
            OracleLine line{k, oracle, replay_oracle(oracle, models, config, k)};
            report.lines.push_back(line);
            if (!line.outcome.passed) {
                report.counterexamples.emplace_back(line, models);
            }
        }
    }
    return report;
}

std::string format_report(const TheoremReport& report, const BatchConfig& config)
{
    std::ostringstream out;
    std::string bounds;
    for (const auto& bound : config.m_samples) {
        bounds += (bounds.empty() ? "" : ",") + to_string(bound);
    }
    out << "config cases=" << config.n_cases << " seed=" << config.seed << " states<=" << config.max_states
        << " inputs<=" << config.max_inputs << " outputs<=" << config.max_outputs
        << " density=" << config.edge_density << " m=" << bounds << " depth=" << config.depth
        << " trace-depth=" << config.trace_depth << " tests-per-case=" << config.tests_per_case
        << " suite-budget=" << config.suite_budget
        << " inject-bug=" << (config.inject_bug ? "yes" : "no") << "\n";
    for (const auto& line : report.lines) {
        out << "case " << line.case_index << " " << name_of(line.oracle) << " "
            << (line.outcome.skipped ? "skip" : line.outcome.passed ? "pass" : "FAIL");
        if (!line.outcome.detail.empty()) {
            out << " " << line.outcome.detail;
        }
        out << "\n";
    }
    out << "summary\n";
    for (auto oracle : all_oracles()) {
        if (!config.oracles.contains(oracle)) {
            continue;
        }
        out << "  " << name_of(oracle) << " passed=" << report.count(oracle, true)
            << " failed=" << report.count(oracle, false) << " skipped=" << report.skipped(oracle) << "\n";
    }
    out << "result " << (report.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& [line, models] : report.counterexamples) {
        out << "counterexample case " << line.case_index << " " << name_of(line.oracle) << ": "
            << line.outcome.detail << "\n";
        out << "--- impl\n" << serialize(models.impl);
        out << "--- spec\n" << serialize(models.spec);
    }
    return out.str();
}

} // namespace tioco
