#include "tioco/conformance.hpp"

#include "detail/semantics.hpp"
#include "tioco/lift.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace tioco {

namespace {

/// Breadth-first search over pairs of (impl set, spec set) reachable by a
/// common trace of the specification. Successors are visited in step order,
/// so the first violating pair dequeued carries the shortlex-least witness.
template <class Sem>
ConformanceVerdict<typename Sem::Trace, typename Sem::Outs> pair_search(const Sem& impl, const Sem& spec)
{
    using Set = typename Sem::Set;
    using Step = typename Sem::Step;
    struct Node
    {
        Set impl_states;
        Set spec_states;
        std::size_t parent;
        Step via;
    };

    std::vector<Node> nodes;
    std::map<std::pair<Set, Set>, std::size_t> visited;
    std::deque<std::size_t> queue;

    nodes.push_back({impl.initial(), spec.initial(), 0, Step{}});
    visited.emplace(std::pair{nodes[0].impl_states, nodes[0].spec_states}, 0);
    queue.push_back(0);

    ConformanceVerdict<typename Sem::Trace, typename Sem::Outs> verdict;
    while (!queue.empty()) {
        auto index = queue.front();
        queue.pop_front();
        auto impl_outs = impl.out(nodes[index].impl_states);
        auto spec_outs = spec.out(nodes[index].spec_states);
        auto offending = detail::difference(impl_outs, spec_outs);
        if (!offending.empty()) {
            typename Sem::Trace witness;
            for (auto at = index; at != 0; at = nodes[at].parent) {
                witness.push_back(nodes[at].via);
            }
            std::reverse(witness.begin(), witness.end());
            verdict.failure = Counterexample<typename Sem::Trace, typename Sem::Outs>{std::move(witness),
                                                                                     std::move(offending)};
            break;
        }

        auto steps = spec.inputs(nodes[index].spec_states);
        for (const auto& shared : detail::intersection(impl_outs, spec_outs)) {
            steps.insert(shared);
        }
        for (const auto& step : steps) {
            auto spec_next = spec.after(nodes[index].spec_states, step);
            auto impl_next = impl.after(nodes[index].impl_states, step);
            if (spec_next.empty() || impl_next.empty()) {
                continue;
            }
            auto key = std::pair{impl_next, spec_next};
            if (visited.contains(key)) {
                continue;
            }
            visited.emplace(std::move(key), nodes.size());
            queue.push_back(nodes.size());
            nodes.push_back({std::move(impl_next), std::move(spec_next), index, step});
        }
    }
    verdict.explored_pairs = visited.size();

    if (verdict.failure) {
        // Replay the witness from scratch; the offending set must reappear.
        Set impl_states = impl.initial();
        Set spec_states = spec.initial();
        for (const auto& step : verdict.failure->witness) {
            impl_states = impl.after(impl_states, step);
            spec_states = spec.after(spec_states, step);
        }
        if (spec_states.empty() ||
            detail::difference(impl.out(impl_states), spec.out(spec_states)) != verdict.failure->offending) {
            throw std::logic_error("conformance witness does not replay");
        }
    }
    return verdict;
}

void require_same_alphabet(const Alphabet& impl, const Alphabet& spec)
{
    if (!(impl == spec)) {
        throw ModelError("implementation and specification alphabets differ");
    }
}

} // namespace

IocoVerdict check_ioco(const Lts& impl, const Lts& spec)
{
    require_valid(impl);
    require_valid(spec);
    require_same_alphabet(impl.alphabet, spec.alphabet);
    if (!is_input_enabled(impl)) {
        throw ModelError("implementation is not input-enabled");
    }
    return pair_search(detail::LtsSemantics{impl}, detail::LtsSemantics{spec});
}

namespace {

void require_timed_pair(const TimedAutomaton& impl, const TimedAutomaton& spec)
{
    if (impl.bound != spec.bound) {
        throw ModelError("M differs: " + to_string(impl.bound) + " vs " + to_string(spec.bound));
    }
    require_same_alphabet(impl.alphabet, spec.alphabet);
}

} // namespace

TiocoVerdict check_tioco_m(const TimedAutomaton& impl, const TimedAutomaton& spec)
{
    require_canonic(impl);
    require_canonic(spec);
    require_timed_pair(impl, spec);
    if (!is_iota(impl)) {
        throw ModelError("implementation is not input-enabled (not an IOTA)");
    }
    return pair_search(detail::TaSemantics{impl}, detail::TaSemantics{spec});
}

TiocoVerdict check_tioco_via_projection(const TimedAutomaton& impl, const TimedAutomaton& spec)
{
    if (!is_lift_image(impl) || !is_lift_image(spec)) {
        throw ModelError("projection path needs automata produced by lift");
    }
    require_timed_pair(impl, spec);
    auto untimed = check_ioco(project_ta(impl), project_ta(spec));

    TiocoVerdict verdict;
    verdict.explored_pairs = untimed.explored_pairs;
    if (untimed.failure) {
        verdict.failure = Counterexample<TimedTrace, SymbolicOut>{lift_trace(untimed.failure->witness),
                                                                 lift_outs(untimed.failure->offending)};
    }
    return verdict;
}

} // namespace tioco
