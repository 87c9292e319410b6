#include "tioco/testing.hpp"

#include "detail/semantics.hpp"
#include "detail/test_tree.hpp"
#include "tioco/format.hpp"
#include "tioco/lift.hpp"

#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace tioco {

namespace {

bool is_sink(const std::string& state)
{
    return state == pass_state || state == fail_state;
}

ClockConstraint guard_for(const Action& label)
{
    return label.is_delta() ? ClockConstraint::EqM : ClockConstraint::LtM;
}

std::optional<DelayClass> delay_for(ClockConstraint guard)
{
    switch (guard) {
    case ClockConstraint::LtM: return DelayClass::BeforeM;
    case ClockConstraint::EqM: return DelayClass::AtM;
    case ClockConstraint::LeM: break;
    }
    return std::nullopt;
}

/// Uniform view over the edges of an untimed or timed test tree.
struct Edge
{
    std::string source;
    Action label;
    std::optional<DelayClass> delay;
    std::string target;
};

std::vector<Edge> edges_of(const TestCase& test)
{
    std::vector<Edge> edges;
    for (const auto& t : test.graph.transitions) {
        edges.push_back({t.source, t.label, std::nullopt, t.target});
    }
    return edges;
}

std::vector<Edge> edges_of(const TimedTestCase& test)
{
    std::vector<Edge> edges;
    for (const auto& t : test.graph.transitions) {
        edges.push_back({t.source, t.label, delay_for(t.guard), t.target});
    }
    return edges;
}

/// Sink, tree, determinism and output/input shape shared by both test flavours.
void check_tree(const std::set<std::string>& states, const std::string& root, const Alphabet& alphabet,
                const std::vector<Edge>& edges, std::vector<Violation>& violations)
{
    for (auto sink : {pass_state, fail_state}) {
        if (!states.contains(std::string(sink))) {
            violations.push_back({"sink", "test does not declare '" + std::string(sink) + "'"});
        }
    }
    std::map<std::string, std::size_t> incoming;
    std::map<std::string, std::vector<const Edge*>> outgoing;
    for (const auto& e : edges) {
        ++incoming[e.target];
        outgoing[e.source].push_back(&e);
    }

    for (const auto& state : states) {
        const auto& out = outgoing[state];
        if (is_sink(state)) {
            if (!out.empty()) {
                violations.push_back({"sink", "'" + state + "' has outgoing edges"});
            }
            continue;
        }
        std::size_t expected_in = state == root ? 0 : 1;
        if (incoming[state] != expected_in) {
            violations.push_back({"tree", "'" + state + "' has " + std::to_string(incoming[state]) +
                                              " incoming edges, expected " + std::to_string(expected_in)});
        }

        std::set<Action> labels;
        std::set<Action> ins;
        std::set<Action> outs;
        for (const auto* e : out) {
            if (!labels.insert(e->label).second) {
                violations.push_back({"deterministic", "'" + state + "' has several " + display(e->label) + " edges"});
            }
            if (e->label.is_input()) {
                ins.insert(e->label);
            } else {
                outs.insert(e->label);
            }
        }
        std::set<Action> all_outputs;
        for (const auto& o : alphabet.output_actions()) {
            all_outputs.insert(o);
        }
        auto with_delta = all_outputs;
        with_delta.insert(delta());
        bool observe = ins.empty() && outs == with_delta;
        bool stimulate = ins.size() == 1 && outs == all_outputs;
        if (!observe && !stimulate) {
            violations.push_back({"shape", "'" + state + "' neither observes all outputs and δ nor stimulates one "
                                                         "input with all outputs enabled"});
        }
    }

    // Reachability from the root; with one incoming edge per node this also rules out cycles.
    std::set<std::string> seen{root};
    std::deque<std::string> queue{root};
    while (!queue.empty()) {
        auto state = queue.front();
        queue.pop_front();
        for (const auto* e : outgoing[state]) {
            if (seen.insert(e->target).second) {
                queue.push_back(e->target);
            }
        }
    }
    for (const auto& state : states) {
        if (!is_sink(state) && !seen.contains(state)) {
            violations.push_back({"tree", "'" + state + "' is unreachable from the root"});
        }
    }
}

bool has_rule(const std::vector<Violation>& violations, std::string_view rule)
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

/// Walks every root path of a structurally valid tree, tracking the spec's
/// set of states, and checks the three trace clauses.
template <class Sem, class ToStep>
void check_trace_clauses(const Sem& spec, const std::string& root, const std::vector<Edge>& edges, ToStep to_step,
                         std::vector<Violation>& violations)
{
    std::map<std::string, std::vector<const Edge*>> outgoing;
    for (const auto& e : edges) {
        outgoing[e.source].push_back(&e);
    }
    std::vector<std::string> trace_text;
    std::function<void(const std::string&, const typename Sem::Set&)> walk = [&](const std::string& node,
                                                                               const typename Sem::Set& q) {
        for (const auto* e : outgoing[node]) {
            auto step = to_step(*e);
            if (!step) {
                continue;
            }
            auto next = q.empty() ? q : spec.after(q, *step);
            bool in_spec = !next.empty();
            trace_text.push_back(display(*step));
            auto where = [&] {
                std::string text;
                for (const auto& s : trace_text) {
                    text += (text.empty() ? "" : " ") + s;
                }
                return text;
            };
            if (e->label.is_input() && !in_spec) {
                violations.push_back({"input-specifiedness", "input trace '" + where() + "' is not a specification trace"});
            }
            if (e->target == pass_state && !in_spec) {
                violations.push_back({"soundness", "trace '" + where() + "' reaches pass but is not a specification trace"});
            }
            if (e->target == fail_state && e->label.is_output() && in_spec) {
                violations.push_back({"correctness", "trace '" + where() + "' reaches fail but is a specification trace"});
            }
            if (!is_sink(e->target)) {
                walk(e->target, next);
            }
            trace_text.pop_back();
        }
    };
    walk(root, spec.initial());
}

} // namespace

std::vector<Violation> validate_test_structure(const TestCase& test)
{
    const auto& g = test.graph;
    auto violations = validate_lts(g);
    if (g.quiescence != Quiescence::Explicit) {
        violations.push_back({"quiescence", "test trees carry explicit δ-edges"});
    }
    check_tree(g.states, g.initial, g.alphabet, edges_of(test), violations);
    return violations;
}

std::vector<Violation> validate_test_structure(const TimedTestCase& test)
{
    const auto& g = test.graph;
    auto violations = validate_ta_structure(g);
    if (g.bound <= 0) {
        violations.push_back({"bound", "M must be positive, got " + to_string(g.bound)});
    }
    for (const auto& location : g.locations) {
        auto it = g.invariants.find(location);
        if (is_sink(location)) {
            if (it != g.invariants.end()) {
                violations.push_back({"invariant", "'" + location + "' must not carry an invariant"});
            }
        } else if (it == g.invariants.end() || it->second != ClockConstraint::LeM) {
            violations.push_back({"invariant", "'" + location + "' needs invariant c<=M"});
        }
    }
    for (const auto& t : g.transitions) {
        auto where = t.source + " " + display(t.label) + " " + t.target;
        if (t.guard != guard_for(t.label)) {
            violations.push_back({"guard", "edge '" + where + "' has guard " + display(t.guard)});
        }
        if (!t.resets) {
            violations.push_back({"reset", "edge '" + where + "' does not reset c"});
        }
    }
    check_tree(g.locations, g.initial, g.alphabet, edges_of(test), violations);
    return violations;
}

std::vector<Violation> validate_test_lts(const TestCase& test, const Lts& spec)
{
    require_valid(spec);
    auto violations = validate_test_structure(test);
    if (!(test.graph.alphabet == spec.alphabet)) {
        violations.push_back({"alphabet", "test and specification alphabets differ"});
    }
    if (!has_rule(violations, "tree") && !has_rule(violations, "alphabet") && !has_rule(violations, "unknown-label")) {
        check_trace_clauses(detail::LtsSemantics{spec}, test.graph.initial, edges_of(test),
                            [](const Edge& e) { return std::optional{e.label}; }, violations);
    }
    return violations;
}

std::vector<Violation> validate_test_ta(const TimedTestCase& test, const TimedAutomaton& spec)
{
    require_canonic(spec);
    auto violations = validate_test_structure(test);
    if (!(test.graph.alphabet == spec.alphabet)) {
        violations.push_back({"alphabet", "test and specification alphabets differ"});
    }
    if (test.graph.bound != spec.bound) {
        violations.push_back({"bound", "test M differs from specification M"});
    }
    if (!has_rule(violations, "tree") && !has_rule(violations, "alphabet") && !has_rule(violations, "unknown-label")) {
        check_trace_clauses(detail::TaSemantics{spec}, test.graph.initial, edges_of(test),
                            [](const Edge& e) -> std::optional<TimedStep> {
                                if (!e.delay) {
                                    return std::nullopt;
                                }
                                return TimedStep{*e.delay, e.label};
                            },
                            violations);
    }
    return violations;
}

namespace {

/// Breadth-first renaming of internal nodes, children in label order.
std::map<std::string, std::string> canonical_names(const std::string& root, const std::vector<Edge>& edges)
{
    std::map<std::string, std::vector<const Edge*>> outgoing;
    for (const auto& e : edges) {
        outgoing[e.source].push_back(&e);
    }
    for (auto& [state, out] : outgoing) {
        std::stable_sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) { return a->label < b->label; });
    }
    std::map<std::string, std::string> names{{std::string(pass_state), std::string(pass_state)},
                                             {std::string(fail_state), std::string(fail_state)}};
    std::size_t counter = 0;
    std::deque<std::string> queue;
    auto visit = [&](const std::string& state) {
        if (names.contains(state)) {
            return;
        }
        names.emplace(state, "q" + std::to_string(counter++));
        queue.push_back(state);
    };
    visit(root);
    while (!queue.empty()) {
        auto state = queue.front();
        queue.pop_front();
        for (const auto* e : outgoing[state]) {
            visit(e->target);
        }
    }
    return names;
}

const std::string& renamed(const std::map<std::string, std::string>& names, const std::string& state)
{
    auto it = names.find(state);
    if (it == names.end()) {
        throw ModelError("test node '" + state + "' is unreachable from the root");
    }
    return it->second;
}

} // namespace

TestCase canonicalize(const TestCase& test)
{
    const auto& g = test.graph;
    auto names = canonical_names(g.initial, edges_of(test));
    TestCase result;
    result.graph.alphabet = g.alphabet;
    result.graph.quiescence = Quiescence::Explicit;
    result.graph.initial = renamed(names, g.initial);
    result.graph.states = {std::string(pass_state), std::string(fail_state)};
    for (const auto& state : g.states) {
        result.graph.states.insert(renamed(names, state));
    }
    for (const auto& t : g.transitions) {
        result.graph.transitions.insert({renamed(names, t.source), t.label, renamed(names, t.target)});
    }
    return result;
}

TimedTestCase canonicalize(const TimedTestCase& test)
{
    const auto& g = test.graph;
    auto names = canonical_names(g.initial, edges_of(test));
    TimedTestCase result;
    result.graph.alphabet = g.alphabet;
    result.graph.bound = g.bound;
    result.graph.initial = renamed(names, g.initial);
    result.graph.locations = {std::string(pass_state), std::string(fail_state)};
    for (const auto& location : g.locations) {
        result.graph.locations.insert(renamed(names, location));
    }
    for (const auto& [location, constraint] : g.invariants) {
        result.graph.invariants.emplace(renamed(names, location), constraint);
    }
    for (const auto& t : g.transitions) {
        result.graph.transitions.insert({renamed(names, t.source), t.label, t.guard, t.resets, renamed(names, t.target)});
    }
    return result;
}

namespace {

/// Breadth-first naming of a generated tree; the result is already canonical.
template <class Step, class AddEdge>
std::string name_tree(const detail::TreePtr<Step>& root, AddEdge add_edge)
{
    auto name_of_sink = [](const detail::TreeNode<Step>& node) {
        return std::string(node.kind == detail::NodeKind::Pass ? pass_state : fail_state);
    };
    if (root->kind != detail::NodeKind::Branch) {
        return name_of_sink(*root);
    }
    std::size_t counter = 0;
    std::deque<std::pair<const detail::TreeNode<Step>*, std::string>> queue;
    queue.emplace_back(root.get(), "q" + std::to_string(counter++));
    while (!queue.empty()) {
        auto [node, name] = queue.front();
        queue.pop_front();
        for (const auto& [step, child] : node->edges) {
            std::string child_name;
            if (child->kind == detail::NodeKind::Branch) {
                child_name = "q" + std::to_string(counter++);
                queue.emplace_back(child.get(), child_name);
            } else {
                child_name = name_of_sink(*child);
            }
            add_edge(name, step, child_name);
        }
    }
    return "q0";
}

TestCase to_test(const detail::TreePtr<Action>& root, const Alphabet& alphabet)
{
    TestCase test;
    auto& g = test.graph;
    g.alphabet = alphabet;
    g.quiescence = Quiescence::Explicit;
    g.states = {std::string(pass_state), std::string(fail_state)};
    g.initial = name_tree(root, [&](const std::string& source, const Action& label, const std::string& target) {
        g.states.insert(source);
        g.states.insert(target);
        g.transitions.insert({source, label, target});
    });
    g.states.insert(g.initial);
    return test;
}

TimedTestCase to_timed_test(const detail::TreePtr<TimedStep>& root, const Alphabet& alphabet, const Rational& bound)
{
    TimedTestCase test;
    auto& g = test.graph;
    g.alphabet = alphabet;
    g.bound = bound;
    g.locations = {std::string(pass_state), std::string(fail_state)};
    auto add_location = [&](const std::string& location) {
        g.locations.insert(location);
        if (!is_sink(location)) {
            g.invariants.emplace(location, ClockConstraint::LeM);
        }
    };
    g.initial = name_tree(root, [&](const std::string& source, const TimedStep& step, const std::string& target) {
        add_location(source);
        add_location(target);
        g.transitions.insert(
            {source, step.label, step.delay == DelayClass::AtM ? ClockConstraint::EqM : ClockConstraint::LtM, true,
             target});
    });
    add_location(g.initial);
    return test;
}

template <class Test>
Suite<Test> make_suite(std::vector<Test> tests)
{
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(tests.size());
    for (std::size_t k = 0; k < tests.size(); ++k) {
        keys.emplace_back(serialize(tests[k]), k);
    }
    std::sort(keys.begin(), keys.end());
    Suite<Test> suite;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (k > 0 && keys[k].first == keys[k - 1].first) {
            continue;
        }
        suite.tests.push_back(std::move(tests[keys[k].second]));
    }
    return suite;
}

template <class Sem, class Convert>
auto generate(const Sem& sem, std::size_t depth, const GenerationMode& mode, Convert convert)
{
    detail::TreeGenerator<Sem> generator(sem);
    using Test = decltype(convert(generator.pass()));
    std::vector<Test> tests;
    if (std::holds_alternative<Exhaustive>(mode)) {
        for (const auto& tree : generator.all(sem.initial(), depth)) {
            tests.push_back(convert(tree));
        }
    } else {
        const auto& random = std::get<RandomSelection>(mode);
        std::mt19937_64 rng(random.seed);
        for (std::size_t k = 0; k < random.count; ++k) {
            tests.push_back(convert(generator.random(sem.initial(), depth, rng)));
        }
    }
    return make_suite(std::move(tests));
}

} // namespace

TestSuite generate_tests(const Lts& spec, std::size_t depth, const GenerationMode& mode)
{
    require_valid(spec);
    return generate(detail::LtsSemantics{spec}, depth, mode,
                    [&](const detail::TreePtr<Action>& tree) { return to_test(tree, spec.alphabet); });
}

TimedTestSuite generate_tests_ta(const TimedAutomaton& spec, std::size_t depth, const GenerationMode& mode)
{
    require_canonic(spec);
    return generate(detail::TaSemantics{spec}, depth, mode, [&](const detail::TreePtr<TimedStep>& tree) {
        return to_timed_test(tree, spec.alphabet, spec.bound);
    });
}

std::uint64_t count_tests(const Lts& spec, std::size_t depth)
{
    require_valid(spec);
    detail::LtsSemantics sem{spec};
    return detail::TreeGenerator<detail::LtsSemantics>(sem).count(sem.initial(), depth);
}

std::uint64_t count_tests_ta(const TimedAutomaton& spec, std::size_t depth)
{
    require_canonic(spec);
    detail::TaSemantics sem{spec};
    return detail::TreeGenerator<detail::TaSemantics>(sem).count(sem.initial(), depth);
}

TestCase trace_test(const Lts& spec, const SuspensionTrace& trace)
{
    require_valid(spec);
    if (after(spec, trace).empty()) {
        throw ModelError("'" + display(trace) + "' is not a suspension trace of the specification");
    }
    detail::LtsSemantics sem{spec};
    detail::TreeGenerator<detail::LtsSemantics> generator(sem);
    return to_test(generator.along(sem.initial(), trace, 0), spec.alphabet);
}

TimedTestCase lift_test(const TestCase& test, const Rational& bound)
{
    if (bound <= 0) {
        throw ModelError("lift_test needs M > 0, got " + to_string(bound));
    }
    if (auto violations = validate_test_structure(test); !violations.empty()) {
        throw ModelError("malformed test case: " + violations.front().message);
    }
    TimedTestCase lifted;
    auto& g = lifted.graph;
    g.locations = test.graph.states;
    g.initial = test.graph.initial;
    g.alphabet = test.graph.alphabet;
    g.bound = bound;
    for (const auto& state : test.graph.states) {
        if (!is_sink(state)) {
            g.invariants.emplace(state, ClockConstraint::LeM);
        }
    }
    for (const auto& t : test.graph.transitions) {
        g.transitions.insert({t.source, t.label, guard_for(t.label), true, t.target});
    }
    return lifted;
}

TestCase project_ta(const TimedTestCase& test)
{
    if (auto violations = validate_test_structure(test); !violations.empty()) {
        throw ModelError("malformed timed test case: " + violations.front().message);
    }
    TestCase projected;
    auto& g = projected.graph;
    g.states = test.graph.locations;
    g.initial = test.graph.initial;
    g.alphabet = test.graph.alphabet;
    g.quiescence = Quiescence::Explicit;
    for (const auto& t : test.graph.transitions) {
        g.transitions.insert({t.source, t.label, t.target});
    }
    return projected;
}

namespace {

/// Breadth-first product of a deterministic test tree with the
/// implementation's reachable sets. Levels are expanded in trace order, so
/// the first fail reached is the shortlex-least failing trace.
template <class Sem, class ToStep>
TestVerdict<typename Sem::Trace> run_product(const Sem& impl, const std::string& root,
                                             const std::vector<Edge>& edges, ToStep to_step)
{
    using Trace = typename Sem::Trace;
    std::map<std::string, std::vector<const Edge*>> outgoing;
    for (const auto& e : edges) {
        outgoing[e.source].push_back(&e);
    }
    for (auto& [state, out] : outgoing) {
        std::stable_sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) { return a->label < b->label; });
    }
    if (root == fail_state) {
        return {Trace{}};
    }
    struct Item
    {
        std::string node;
        typename Sem::Set states;
        Trace trace;
    };
    std::deque<Item> queue;
    queue.push_back({root, impl.initial(), {}});
    while (!queue.empty()) {
        auto item = std::move(queue.front());
        queue.pop_front();
        for (const auto* e : outgoing[item.node]) {
            auto step = to_step(*e);
            auto next = impl.after(item.states, step);
            if (next.empty()) {
                continue;
            }
            auto trace = item.trace;
            trace.push_back(step);
            if (e->target == fail_state) {
                return {std::move(trace)};
            }
            if (e->target != pass_state) {
                queue.push_back({e->target, std::move(next), std::move(trace)});
            }
        }
    }
    return {};
}

} // namespace

TestVerdict<SuspensionTrace> run_test_lts(const TestCase& test, const Lts& impl)
{
    if (auto violations = validate_test_structure(test); !violations.empty()) {
        throw ModelError("malformed test case: " + violations.front().message);
    }
    if (!(test.graph.alphabet == impl.alphabet)) {
        throw ModelError("test and implementation alphabets differ");
    }
    if (!is_input_enabled(impl)) {
        throw ModelError("implementation is not input-enabled");
    }
    return run_product(detail::LtsSemantics{impl}, test.graph.initial, edges_of(test),
                       [](const Edge& e) { return e.label; });
}

TestVerdict<TimedTrace> run_test_ta(const TimedTestCase& test, const TimedAutomaton& impl)
{
    if (auto violations = validate_test_structure(test); !violations.empty()) {
        throw ModelError("malformed timed test case: " + violations.front().message);
    }
    if (test.graph.bound != impl.bound) {
        throw ModelError("M differs: " + to_string(test.graph.bound) + " vs " + to_string(impl.bound));
    }
    if (!(test.graph.alphabet == impl.alphabet)) {
        throw ModelError("test and implementation alphabets differ");
    }
    if (!is_iota(impl)) {
        throw ModelError("implementation is not input-enabled (not an IOTA)");
    }
    return run_product(detail::TaSemantics{impl}, test.graph.initial, edges_of(test),
                       [](const Edge& e) { return TimedStep{e.delay.value(), e.label}; });
}

SuiteSummary<SuspensionTrace> run_suite(const TestSuite& suite, const Lts& impl)
{
    SuiteSummary<SuspensionTrace> summary;
    for (const auto& test : suite.tests) {
        summary.verdicts.push_back(run_test_lts(test, impl));
    }
    return summary;
}

SuiteSummary<TimedTrace> run_suite(const TimedTestSuite& suite, const TimedAutomaton& impl)
{
    SuiteSummary<TimedTrace> summary;
    for (const auto& test : suite.tests) {
        summary.verdicts.push_back(run_test_ta(test, impl));
    }
    return summary;
}

} // namespace tioco
