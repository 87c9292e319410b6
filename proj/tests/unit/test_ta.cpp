#include "doctest.h"

#include "oracles/brute_force.hpp"
#include "support.hpp"
#include "tioco/lift.hpp"
#include "tioco/theorem_lab.hpp"
#include "tioco/timed_automaton.hpp"

#include <algorithm>

using namespace tioco;
using support::golden;

namespace {

TimedStep before(const std::string& token)
{
    return {DelayClass::BeforeM, support::label(token)};
}

TimedStep at(const std::string& token)
{
    return {DelayClass::AtM, support::label(token)};
}

bool has_rule(const std::vector<Violation>& violations, const std::string& rule)
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

} // namespace

TEST_SUITE("ta")
{
    TEST_CASE("rationals")
    {
        CHECK(parse_rational("3/2") == Rational(3, 2));
        CHECK(parse_rational("6/4") == Rational(3, 2));
        CHECK(parse_rational("5") == Rational(5));
        CHECK(parse_rational("-1") == Rational(-1));
        CHECK(to_string(Rational(3, 2)) == "3/2");
        CHECK(to_string(Rational(4, 2)) == "2");
        CHECK_THROWS_AS((void)parse_rational("1.5"), std::invalid_argument);
        CHECK_THROWS_AS((void)parse_rational("1/0"), std::invalid_argument);
        CHECK_THROWS_AS((void)parse_rational(""), std::invalid_argument);
        CHECK_THROWS_AS((void)parse_rational("x"), std::invalid_argument);
    }

    TEST_CASE("canonic validation")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(validate_canonic(ta).empty());

        auto eq_guard = ta;
        auto edge = *eq_guard.transitions.find({"s0", input("i"), ClockConstraint::LtM, true, "s1"});
        eq_guard.transitions.erase(edge);
        edge.guard = ClockConstraint::EqM;
        eq_guard.transitions.insert(edge);
        auto violations = validate_canonic(eq_guard);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].rule == "guard");

        auto zero = ta;
        zero.bound = 0;
        violations = validate_canonic(zero);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].rule == "bound");

        auto no_reset = ta;
        edge = *no_reset.transitions.begin();
        no_reset.transitions.erase(edge);
        edge.resets = false;
        no_reset.transitions.insert(edge);
        CHECK(has_rule(validate_canonic(no_reset), "reset"));

        auto no_invariant = ta;
        no_invariant.invariants.erase("s3");
        CHECK(has_rule(validate_canonic(no_invariant), "invariant"));

        auto bad_loop = ta;
        bad_loop.transitions.insert({"s1", delta(), ClockConstraint::EqM, true, "s1"});
        CHECK(has_rule(validate_canonic(bad_loop), "delta-loop"));
        CHECK_THROWS_AS(require_canonic(bad_loop), ModelError);
    }

    TEST_CASE("quiescent locations")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(is_quiescent_location(ta, "s0"));
        CHECK_FALSE(is_quiescent_location(ta, "s4"));
        CHECK(is_quiescent_location(ta, "s2"));
        CHECK_THROWS_AS((void)is_quiescent_location(ta, "zz"), ModelError);
    }

    TEST_CASE("after_m on the lifted figure model")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(after_m(ta, LocationSet{"s0"}, before("i?")) == LocationSet{"s1", "s2"});
        CHECK(after_m(ta, LocationSet{"s1", "s2"}, at("δ")) == LocationSet{"s2"});
        CHECK(after_m(ta, LocationSet{"s1"}, at("o!")).empty());
        CHECK(after_m(ta, LocationSet{"s0"}, before("δ")).empty());
        CHECK(after_m(ta, LocationSet{"s0"}, at("i?")).empty());
        CHECK_THROWS_AS((void)after_m(ta, LocationSet{"s0"}, before("x?")), ModelError);
    }

    TEST_CASE("out_m")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(out_m(ta, {"s4"}) == SymbolicOut{before("o!"), before("o_prime!")});
        CHECK(out_m(ta, {"s0"}) == SymbolicOut{at("δ")});
        CHECK(out_m(ta, {}).empty());
        CHECK(in_m(ta, {"s0"}) == std::set<TimedStep>{before("i?")});
    }

    TEST_CASE("iota")
    {
        CHECK(is_iota(lift(golden("B"), 2)));
        CHECK_FALSE(is_iota(lift(golden("A"), 2)));
        CHECK(is_iota(lift(support::lts("lts\ninputs:\noutputs: o\ninit: s0\ns0 o! s0\n"), 1)));
    }

    TEST_CASE("symbolic traces")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(sttraces_upto(ta, 0) == std::set<TimedTrace>{{}});
        CHECK(sttraces_upto(ta, 1) == std::set<TimedTrace>{{}, {before("i?")}, {at("δ")}});
        CHECK(sttraces_upto(lift(golden("D"), 2), 3).contains(TimedTrace{before("i?"), at("δ"), before("i?")}));
    }

    TEST_CASE("canonic automata never move on (=M, a) or (<M, δ)")
    {
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            auto ta = lift(random_lts(seed, {5, 2, 2, 0.3}), Rational(3, 2));
            for (const auto& location : ta.locations) {
                for (const auto& a : ta.alphabet.actions()) {
                    CHECK(after_m(ta, LocationSet{location}, TimedStep{DelayClass::AtM, a}).empty());
                }
                CHECK(after_m(ta, LocationSet{location}, TimedStep{DelayClass::BeforeM, delta()}).empty());
            }
        }
    }

    TEST_CASE("symbolic steps match concrete rational delays")
    {
        auto ta = lift(golden("B"), Rational(3, 2));
        const Rational m = ta.bound;
        for (const auto& location : ta.locations) {
            std::set<oracle::ConcreteState> start{{location, 0}};
            for (const auto& a : ta.alphabet.actions_with_delta()) {
                for (const Rational& d : {Rational(0), m / 2, m}) {
                    auto concrete = oracle::locations_of(oracle::concrete_step(ta, start, d, a));
                    auto symbolic = after_m(ta, LocationSet{location},
                                            TimedStep{d < m ? DelayClass::BeforeM : DelayClass::AtM, a});
                    CHECK(concrete == symbolic);
                }
            }
        }
    }

    TEST_CASE("display")
    {
        CHECK(display(TimedTrace{before("i?"), at("δ")}) == "(<M, i?) (=M, δ)");
        CHECK(display(ClockConstraint::LeM) == "c<=M");
        CHECK(display(SymbolicOut{at("δ")}) == "{(=M, δ)}");
    }
}
