#include "doctest.h"

#include "oracles/brute_force.hpp"
#include "support.hpp"
#include "tioco/conformance.hpp"
#include "tioco/lift.hpp"
#include "tioco/theorem_lab.hpp"

using namespace tioco;
using support::golden;
using support::outs;
using support::trace;

TEST_SUITE("conformance")
{
    TEST_CASE("C conforms to A")
    {
        CHECK(check_ioco(golden("C"), golden("A")).conforms());
    }

    TEST_CASE("D does not conform to A")
    {
        auto verdict = check_ioco(golden("D"), golden("A"));
        REQUIRE_FALSE(verdict.conforms());
        // Shortest counterexample: after i? i? D may rest in the quiescent s4.
        CHECK(verdict.failure->witness == trace("i? i?"));
        CHECK(verdict.failure->offending == outs("δ"));
        CHECK(oracle::ioco_counterexample(golden("D"), golden("A"), 4) == trace("i? i?"));
    }

    TEST_CASE("i? δ i? is also a counterexample for D against A")
    {
        auto d = golden("D");
        auto a = golden("A");
        auto sigma = trace("i? δ i?");
        CHECK(out_set(d, after(d, sigma)).contains(delta()));
        CHECK_FALSE(out_set(a, after(a, sigma)).contains(delta()));
    }

    TEST_CASE("reflexive on input-enabled models")
    {
        for (const char* name : {"B", "C", "D"}) {
            CHECK(check_ioco(golden(name), golden(name)).conforms());
        }
    }

    TEST_CASE("preconditions")
    {
        CHECK_THROWS_AS((void)check_ioco(golden("A"), golden("A")), ModelError);
        auto other = support::lts("lts\ninputs: j\noutputs: o\ninit: s0\ns0 j? s0\n");
        CHECK_THROWS_AS((void)check_ioco(other, golden("A")), ModelError);
    }

    TEST_CASE("underspecified spec inputs are not followed")
    {
        auto spec = support::lts("lts\ninputs: a, b\noutputs: x\ninit: s0\ns0 a? s1\ns1 x! s0\n");
        auto impl = support::lts("lts\ninputs: a, b\noutputs: x\ninit: s0\n"
                                 "s0 a? s1\ns0 b? s2\ns1 a? s1\ns1 b? s1\ns1 x! s0\ns2 a? s2\ns2 b? s2\ns2 x! s2\n");
        CHECK(check_ioco(impl, spec).conforms());
    }

    TEST_CASE("timed checks on the figure models")
    {
        auto a = lift(golden("A"), 2);
        auto c = lift(golden("C"), 2);
        auto d = lift(golden("D"), 2);
        CHECK(check_tioco_m(c, a).conforms());
        CHECK(check_tioco_via_projection(c, a).conforms());
        auto symbolic = check_tioco_m(d, a);
        auto projected = check_tioco_via_projection(d, a);
        REQUIRE_FALSE(symbolic.conforms());
        CHECK(symbolic.failure->witness == lift_trace(trace("i? i?")));
        CHECK(symbolic.failure->offending == SymbolicOut{{DelayClass::AtM, delta()}});
        CHECK(symbolic.failure == projected.failure);
        CHECK(check_tioco_m(lift(golden("B"), 2), lift(golden("B"), 2)).conforms());
    }

    TEST_CASE("timed preconditions")
    {
        auto a = lift(golden("A"), 2);
        auto b = lift(golden("B"), 2);
        CHECK_THROWS_AS((void)check_tioco_m(b, lift(golden("A"), 3)), ModelError);
        CHECK_THROWS_AS((void)check_tioco_m(a, a), ModelError);
        auto broken = b;
        broken.invariants.erase("s0");
        CHECK_THROWS_AS((void)check_tioco_m(broken, a), ModelError);
        auto not_image = b;
        not_image.transitions.erase({"s0", delta(), ClockConstraint::EqM, true, "s0"});
        CHECK_THROWS_AS((void)check_tioco_via_projection(not_image, a), ModelError);
    }

    TEST_CASE("agrees with the brute force oracle on random pairs")
    {
        std::size_t failures = 0;
        for (std::uint64_t seed = 1; seed <= 150; ++seed) {
            RandomParams params{3, 1 + seed % 2, 1 + (seed / 2) % 2, 0.3};
            auto spec = random_lts(seed, params);
            auto impl = make_input_enabled(seed % 2 ? mutate(spec, seed) : random_lts(seed + 1000, params));
            auto verdict = check_ioco(impl, spec);
            auto reference = oracle::ioco_counterexample(impl, spec, 6);
            CAPTURE(seed);
            if (reference) {
                REQUIRE_FALSE(verdict.conforms());
            } else {
                // Only a witness beyond the oracle's horizon may be missed by it.
                CHECK((verdict.conforms() || verdict.failure->witness.size() > 6));
            }
            if (!verdict.conforms() && reference) {
                ++failures;
                CHECK(verdict.failure->witness == *reference);
                auto impl_outs = out_set(impl, after(impl, verdict.failure->witness));
                auto spec_outs = out_set(spec, after(spec, verdict.failure->witness));
                for (const auto& o : verdict.failure->offending) {
                    CHECK(impl_outs.contains(o));
                    CHECK_FALSE(spec_outs.contains(o));
                }
            }
        }
        CHECK(failures > 10);
    }
}
