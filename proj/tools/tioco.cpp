// Command-line front end: conformance checks, lifting, test generation and
// execution, the theorem batch and DOT export.
//
// Exit codes: 0 conforms / pass / success, 1 fails (witness on stdout),
// 2 usage, parse or precondition error (message on stderr).

#include "tioco/conformance.hpp"
#include "tioco/format.hpp"
#include "tioco/lift.hpp"
#include "tioco/testing.hpp"
#include "tioco/theorem_lab.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace tioco;

namespace {

/// Raised for wrong argument combinations that CLI11 cannot express.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

bool use_color()
{
    return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout)) != 0;
}

std::string paint(const std::string& word, bool good)
{
    if (!use_color()) {
        return word;
    }
    return std::string(good ? "\033[32m" : "\033[31m") + word + "\033[0m";
}

Model load(const std::string& path)
{
    try {
        return parse(read_file(path));
    } catch (const ParseError& error) {
        throw std::runtime_error(path + (error.line() == 0 ? ": " : ":") + error.what());
    }
}

template <class T>
T load_as(const std::string& path, const char* what)
{
    auto model = load(path);
    if (auto* value = std::get_if<T>(&model)) {
        return *value;
    }
    throw UsageError(path + ": expected " + std::string(what));
}

void emit(const std::string& text, const std::string& output)
{
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        write_file(output, text);
    }
}

template <class Verdict>
int report_conformance(const Verdict& verdict)
{
    if (verdict.conforms()) {
        std::cout << "verdict: " << paint("conforms", true) << "\n";
        std::cout << "explored-pairs: " << verdict.explored_pairs << "\n";
        return 0;
    }
    std::cout << "verdict: " << paint("fails", false) << "\n";
    std::cout << "witness: " << display(verdict.failure->witness) << "\n";
    std::cout << "offending: " << display(verdict.failure->offending) << "\n";
    std::cout << "explored-pairs: " << verdict.explored_pairs << "\n";
    return 1;
}

template <class Verdict>
int report_test(const Verdict& verdict)
{
    if (verdict.passed()) {
        std::cout << "verdict: " << paint("pass", true) << "\n";
        return 0;
    }
    std::cout << "verdict: " << paint("fail", false) << "\n";
    std::cout << "witness: " << display(*verdict.failure) << "\n";
    return 1;
}

Rational parse_bound(const std::string& text)
{
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& error) {
        throw UsageError("--m: " + std::string(error.what()));
    }
}

/// Runs `test` against `impl` when their kinds match.
template <class Verdict>
std::optional<Verdict> run_any(const Model& test, const Model& impl, const std::string& test_path)
{
    if (const auto* t = std::get_if<TestCase>(&test)) {
        if (const auto* m = std::get_if<Lts>(&impl)) {
            if constexpr (std::is_same_v<Verdict, TestVerdict<SuspensionTrace>>) {
                return run_test_lts(*t, *m);
            }
            return std::nullopt;
        }
        throw UsageError(test_path + ": an untimed test needs an 'lts' implementation");
    }
    if (const auto* t = std::get_if<TimedTestCase>(&test)) {
        if (const auto* m = std::get_if<TimedAutomaton>(&impl)) {
            if constexpr (std::is_same_v<Verdict, TestVerdict<TimedTrace>>) {
                return run_test_ta(*t, *m);
            }
            return std::nullopt;
        }
        throw UsageError(test_path + ": a timed test needs a 'ta' implementation");
    }
    throw UsageError(test_path + ": not a test file");
}

template <class Suite>
void write_suite(const Suite& suite, const std::string& directory, const char* extension)
{
    fs::create_directories(directory);
    for (std::size_t k = 0; k < suite.tests.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "test_%04zu.%s", k, extension);
        write_file(fs::path(directory) / name, serialize(suite.tests[k]));
    }
    std::cout << "generated " << suite.tests.size() << " tests in " << directory << "\n";
}

std::vector<Rational> parse_m_set(const std::string& text)
{
    std::vector<Rational> bounds;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            bounds.push_back(parse_rational(item));
        } catch (const std::invalid_argument& error) {
            throw UsageError("--m-set: " + std::string(error.what()));
        }
        if (bounds.back() <= 0) {
            throw UsageError("--m-set: M must be positive");
        }
    }
    if (bounds.empty()) {
        throw UsageError("--m-set: at least one value is needed");
    }
    return bounds;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ioco and tioco_M conformance, lifting and test tooling"};
    app.require_subcommand(1);
    int status = 0;

    std::string impl_path;
    std::string spec_path;
    std::string model_path;
    std::string test_path;
    std::string output;
    std::string bound_text;

    auto* check_ioco_cmd = app.add_subcommand("check-ioco", "decide impl ioco spec");
    check_ioco_cmd->add_option("impl", impl_path, "input-enabled implementation (.lts)")->required();
    check_ioco_cmd->add_option("spec", spec_path, "specification (.lts)")->required();
    check_ioco_cmd->callback([&] {
        auto impl = load_as<Lts>(impl_path, "an lts model");
        auto spec = load_as<Lts>(spec_path, "an lts model");
        status = report_conformance(check_ioco(impl, spec));
    });

    std::string via = "symbolic";
    auto* check_tioco_cmd = app.add_subcommand("check-tioco", "decide impl tioco_M spec");
    check_tioco_cmd->add_option("--via", via, "decision path")
        ->check(CLI::IsMember({"symbolic", "projection"}))
        ->capture_default_str();
    check_tioco_cmd->add_option("impl", impl_path, "implementation (.ta)")->required();
    check_tioco_cmd->add_option("spec", spec_path, "specification (.ta)")->required();
    check_tioco_cmd->callback([&] {
        auto impl = load_as<TimedAutomaton>(impl_path, "a ta model");
        auto spec = load_as<TimedAutomaton>(spec_path, "a ta model");
        status = report_conformance(via == "symbolic" ? check_tioco_m(impl, spec)
                                                      : check_tioco_via_projection(impl, spec));
    });

    auto* lift_cmd = app.add_subcommand("lift", "lift an LTS to its canonic timed automaton");
    lift_cmd->add_option("--m", bound_text, "quiescence bound, p/q or integer")->required();
    lift_cmd->add_option("model", model_path, "model (.lts)")->required();
    lift_cmd->add_option("-o,--output", output, "output file (default stdout)");
    lift_cmd->callback([&] {
        emit(serialize(lift(load_as<Lts>(model_path, "an lts model"), parse_bound(bound_text))), output);
    });

    auto* project_cmd = app.add_subcommand("project", "forget the clock of a canonic automaton or timed test");
    project_cmd->add_option("model", model_path, "model (.ta)")->required();
    project_cmd->add_option("-o,--output", output, "output file (default stdout)");
    project_cmd->callback([&] {
        auto model = load(model_path);
        if (const auto* ta = std::get_if<TimedAutomaton>(&model)) {
            emit(serialize(project_ta(*ta)), output);
        } else if (const auto* test = std::get_if<TimedTestCase>(&model)) {
            emit(serialize(project_ta(*test)), output);
        } else {
            throw UsageError(model_path + ": expected a ta model or a timed test");
        }
    });

    std::size_t depth = 3;
    bool random = false;
    std::uint64_t seed = 0;
    std::size_t count = 10;
    auto* gen_cmd = app.add_subcommand("gen-tests", "derive a test suite from a specification");
    gen_cmd->add_option("--depth", depth, "maximum number of tester decisions")->required();
    gen_cmd->add_flag("--random", random, "draw tests instead of enumerating all");
    gen_cmd->add_option("--seed", seed, "seed for --random")->capture_default_str();
    gen_cmd->add_option("--count", count, "number of draws for --random")->capture_default_str();
    gen_cmd->add_option("spec", spec_path, "specification (.lts or .ta)")->required();
    gen_cmd->add_option("-o,--output", output, "output directory")->required();
    gen_cmd->callback([&] {
        GenerationMode mode = Exhaustive{};
        if (random) {
            mode = RandomSelection{seed, count};
        }
        auto spec = load(spec_path);
        if (const auto* lts = std::get_if<Lts>(&spec)) {
            write_suite(generate_tests(*lts, depth, mode), output, "lts");
        } else if (const auto* ta = std::get_if<TimedAutomaton>(&spec)) {
            write_suite(generate_tests_ta(*ta, depth, mode), output, "ta");
        } else {
            throw UsageError(spec_path + ": expected an lts or ta model");
        }
    });

    auto* lift_test_cmd = app.add_subcommand("lift-test", "lift an untimed test to a timed test");
    lift_test_cmd->add_option("--m", bound_text, "quiescence bound, p/q or integer")->required();
    lift_test_cmd->add_option("test", test_path, "test (.lts)")->required();
    lift_test_cmd->add_option("-o,--output", output, "output file (default stdout)");
    lift_test_cmd->callback([&] {
        emit(serialize(lift_test(load_as<TestCase>(test_path, "an untimed test"), parse_bound(bound_text))), output);
    });

    auto* run_test_cmd = app.add_subcommand("run-test", "execute one test against an implementation");
    run_test_cmd->add_option("test", test_path, "test (.lts or .ta)")->required();
    run_test_cmd->add_option("impl", impl_path, "implementation (.lts or .ta)")->required();
    run_test_cmd->callback([&] {
        auto test = load(test_path);
        auto impl = load(impl_path);
        if (std::holds_alternative<TestCase>(test)) {
            status = report_test(*run_any<TestVerdict<SuspensionTrace>>(test, impl, test_path));
        } else {
            status = report_test(*run_any<TestVerdict<TimedTrace>>(test, impl, test_path));
        }
    });

    std::string directory;
    auto* run_suite_cmd = app.add_subcommand("run-suite", "execute every test file of a directory");
    run_suite_cmd->add_option("dir", directory, "directory of test files")->required()->check(CLI::ExistingDirectory);
    run_suite_cmd->add_option("impl", impl_path, "implementation (.lts or .ta)")->required();
    run_suite_cmd->callback([&] {
        auto impl = load(impl_path);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(directory)) {
            auto extension = entry.path().extension();
            if (entry.is_regular_file() && (extension == ".lts" || extension == ".ta")) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        std::size_t failed = 0;
        for (const auto& file : files) {
            auto test = load(file.string());
            std::optional<std::string> witness;
            if (std::holds_alternative<TestCase>(test)) {
                auto verdict = *run_any<TestVerdict<SuspensionTrace>>(test, impl, file.string());
                if (!verdict.passed()) {
                    witness = display(*verdict.failure);
                }
            } else {
                auto verdict = *run_any<TestVerdict<TimedTrace>>(test, impl, file.string());
                if (!verdict.passed()) {
                    witness = display(*verdict.failure);
                }
            }
            std::cout << file.filename().string() << " " << (witness ? paint("fail", false) : paint("pass", true));
            if (witness) {
                ++failed;
                std::cout << " witness: " << *witness;
            }
            std::cout << "\n";
        }
        std::cout << "tests: " << files.size() << " failed: " << failed << "\n";
        std::cout << "verdict: " << (failed == 0 ? paint("pass", true) : paint("fail", false)) << "\n";
        status = failed == 0 ? 0 : 1;
    });

    BatchConfig batch;
    std::string m_set = "1,3/2,5";
    std::vector<std::string> oracle_names;
    std::string replay_impl;
    std::string replay_spec;
    auto* verify_cmd = app.add_subcommand("verify-theorems", "run the bounded theorem oracles on random models");
    verify_cmd->add_option("--cases", batch.n_cases, "number of random (impl, spec) pairs")->capture_default_str();
    verify_cmd->add_option("--seed", batch.seed, "batch seed")->capture_default_str();
    verify_cmd->add_option("--depth", batch.depth, "test depth for the suite oracles")->capture_default_str();
    verify_cmd->add_option("--trace-depth", batch.trace_depth, "trace depth for the trace oracle")
        ->capture_default_str();
    verify_cmd->add_option("--m-set", m_set, "comma-separated values of M")->capture_default_str();
    verify_cmd->add_option("--max-states", batch.max_states, "largest model size")->capture_default_str();
    verify_cmd->add_option("--max-inputs", batch.max_inputs, "largest input alphabet")->capture_default_str();
    verify_cmd->add_option("--max-outputs", batch.max_outputs, "largest output alphabet")->capture_default_str();
    verify_cmd->add_option("--density", batch.edge_density, "edge density of random models")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    verify_cmd->add_option("--tests-per-case", batch.tests_per_case, "tests drawn per case and M")
        ->capture_default_str();
    verify_cmd->add_option("--suite-budget", batch.suite_budget, "largest exhaustive suite compared")
        ->capture_default_str();
    verify_cmd->add_option("--oracle", oracle_names, "restrict to these oracles (repeatable)");
    verify_cmd->add_flag("--inject-bug", batch.inject_bug, "drop δ-loops when lifting");
    verify_cmd->add_option("--replay-impl", replay_impl, "replay the named oracles on this implementation");
    verify_cmd->add_option("--replay-spec", replay_spec, "replay the named oracles on this specification");
    verify_cmd->add_option("-o,--output", output, "report file (default stdout)");
    verify_cmd->callback([&] {
        batch.m_samples = parse_m_set(m_set);
        if (!oracle_names.empty()) {
            batch.oracles.clear();
            for (const auto& name : oracle_names) {
                auto oracle = oracle_from_name(name);
                if (!oracle) {
                    throw UsageError("unknown oracle '" + name + "'");
                }
                batch.oracles.insert(*oracle);
            }
        }
        if (replay_impl.empty() != replay_spec.empty()) {
            throw UsageError("--replay-impl and --replay-spec go together");
        }
        if (!replay_impl.empty()) {
            CaseModels models{load_as<Lts>(replay_impl, "an lts model"), load_as<Lts>(replay_spec, "an lts model")};
            std::ostringstream out;
            bool passed = true;
            for (auto oracle : all_oracles()) {
                if (!batch.oracles.contains(oracle)) {
                    continue;
                }
                auto outcome = replay_oracle(oracle, models, batch);
                passed = passed && outcome.passed;
                out << "replay " << name_of(oracle) << " "
                    << (outcome.skipped ? "skip" : outcome.passed ? "pass" : "FAIL");
                if (!outcome.detail.empty()) {
                    out << " " << outcome.detail;
                }
                out << "\n";
            }
            emit(out.str(), output);
            status = passed ? 0 : 1;
            return;
        }
        auto report = check_theorems(batch);
        emit(format_report(report, batch), output);
        status = report.passed() ? 0 : 1;
    });

    auto* dot_cmd = app.add_subcommand("export-dot", "render any model file as a DOT graph");
    dot_cmd->add_option("model", model_path, "model file")->required();
    dot_cmd->add_option("-o,--output", output, "output file (default stdout)");
    dot_cmd->callback([&] { emit(export_dot(load(model_path)), output); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
    return status;
}
