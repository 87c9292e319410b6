#include "doctest.h"

#include "support.hpp"
#include "tioco/lift.hpp"
#include "tioco/theorem_lab.hpp"

#include <algorithm>

using namespace tioco;
using support::golden;
using support::trace;

TEST_SUITE("lift")
{
    TEST_CASE("lift of the figure model")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(ta.locations.size() == 7);
        CHECK(ta.bound == Rational(2));
        CHECK(std::all_of(ta.locations.begin(), ta.locations.end(), [&](const std::string& l) {
            return ta.invariants.at(l) == ClockConstraint::LeM;
        }));
        std::set<std::string> loops;
        for (const auto& t : ta.transitions) {
            CHECK(t.resets);
            if (t.label.is_delta()) {
                CHECK(t.guard == ClockConstraint::EqM);
                CHECK(t.source == t.target);
                loops.insert(t.source);
            } else {
                CHECK(t.guard == ClockConstraint::LtM);
            }
        }
        CHECK(loops == std::set<std::string>{"s0", "s2", "s3", "s5", "s6"});
        CHECK(ta.transitions.size() == 6 + 5);
        CHECK(serialize(ta) == read_file(support::golden_path("A_M2.ta")));
    }

    TEST_CASE("single state model")
    {
        auto ta = lift(support::lts("lts\ninputs:\noutputs:\ninit: s0\n"), 1);
        CHECK(ta.locations == std::set<std::string>{"s0"});
        CHECK(ta.invariants.at("s0") == ClockConstraint::LeM);
        REQUIRE(ta.transitions.size() == 1);
        CHECK(*ta.transitions.begin() == TimedTransition{"s0", delta(), ClockConstraint::EqM, true, "s0"});
    }

    TEST_CASE("lift preconditions")
    {
        CHECK_THROWS_AS((void)lift(golden("A"), 0), ModelError);
        CHECK_THROWS_AS((void)lift(golden("A"), -1), ModelError);
        auto explicit_model = project_ta(lift(golden("A"), 2));
        CHECK_THROWS_AS((void)lift(explicit_model, 2), ModelError);
    }

    TEST_CASE("lift of an input-enabled model is an iota")
    {
        CHECK(is_iota(lift(golden("B"), 2)));
    }

    TEST_CASE("projection keeps delta loops")
    {
        auto a = golden("A");
        auto projected = project_ta(lift(a, 2));
        CHECK(projected.quiescence == Quiescence::Explicit);
        auto expected = a;
        expected.quiescence = Quiescence::Explicit;
        for (const auto& s : a.states) {
            if (is_quiescent_state(a, s)) {
                expected.transitions.insert({s, delta(), s});
            }
        }
        CHECK(projected == expected);
        CHECK(project_ta(lift(a, 2)) == project_ta(lift(a, Rational(7, 3))));
    }

    TEST_CASE("projection rejects non canonic automata")
    {
        auto ta = lift(golden("A"), 2);
        ta.invariants.erase("s0");
        CHECK_THROWS_AS((void)project_ta(ta), ModelError);
    }

    TEST_CASE("trace lifting and projection")
    {
        TimedTrace lifted{{DelayClass::BeforeM, input("i")}, {DelayClass::AtM, delta()}, {DelayClass::BeforeM, input("i")}};
        CHECK(project_trace(lifted) == trace("i? δ i?"));
        CHECK(lift_trace(trace("i? δ i?")) == lifted);
        CHECK(project_trace({}).empty());
        CHECK(lift_trace({}).empty());
        CHECK(project_trace({{DelayClass::BeforeM, output("o")}}) == trace("o!"));
        CHECK(lift_trace(trace("o! δ")) ==
              TimedTrace{{DelayClass::BeforeM, output("o")}, {DelayClass::AtM, delta()}});
    }

    TEST_CASE("lift image recognition")
    {
        auto ta = lift(golden("A"), 2);
        CHECK(is_lift_image(ta));
        auto missing = ta;
        missing.transitions.erase({"s0", delta(), ClockConstraint::EqM, true, "s0"});
        CHECK_FALSE(is_lift_image(missing));
    }

    TEST_CASE("structural properties on random models")
    {
        for (std::uint64_t seed = 1; seed <= 80; ++seed) {
            auto m = random_lts(seed, {6, 2, 2, 0.3});
            for (const Rational& bound : {Rational(1), Rational(3, 2), Rational(5)}) {
                auto ta = lift(m, bound);
                CHECK(validate_canonic(ta).empty());
                CHECK(ta.locations == m.states);
                std::size_t actions = 0;
                std::size_t loops = 0;
                for (const auto& t : ta.transitions) {
                    (t.label.is_delta() ? loops : actions) += 1;
                }
                auto quiescent = std::count_if(m.states.begin(), m.states.end(),
                                               [&](const std::string& s) { return is_quiescent_state(m, s); });
                CHECK(actions == m.transitions.size());
                CHECK(loops == static_cast<std::size_t>(quiescent));
                if (is_input_enabled(m)) {
                    CHECK(is_iota(ta));
                }
                for (const auto& sigma : straces_upto(m, 3)) {
                    CHECK(project_trace(lift_trace(sigma)) == sigma);
                }
            }
        }
    }
}
