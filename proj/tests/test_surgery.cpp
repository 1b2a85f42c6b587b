#include <catch2/catch_amalgamated.hpp>

#include "floerd/knots.hpp"
#include "floerd/surgery.hpp"
#include "oracles.hpp"

using namespace floerd;

TEST_CASE("grading shift values") {
    CHECK(grading_shift(25, 0) == rational(-6));
    CHECK(grading_shift(25, 5) == rational(-2));
    CHECK(grading_shift(25, 10) == rational(0));
    CHECK(grading_shift(10, 5) == rational(1, 4));
    CHECK(grading_shift(9, 0) == rational(-2));
    CHECK(grading_shift(9, 3) == rational(0));
    CHECK_THROWS_AS(grading_shift(0, 0), math_error);
}

TEST_CASE("d-invariants of S^3_25(T(4,5)) vanish at m = 0, 5, 10") {
    auto t45 = torus_complex(5);
    for (long long m : {0LL, 5LL, 10LL}) {
        INFO("m = " << m);
        CHECK(d_invariant(t45, 25, m) == rational(0));
    }
}

TEST_CASE("unknot surgeries: tower bottom zero for m >= 0") {
    auto u = unknot_complex();
    for (long long q = 1; q <= 30; ++q)
        for (long long m = 0; 2 * m <= q - 1; ++m) {
            INFO("q=" << q << " m=" << m);
            CHECK(d_invariant(u, q, m) == -grading_shift(q, m));
            CHECK(d_invariant(u, q, -m) == d_invariant(u, q, m));
        }
}

TEST_CASE("conjugation symmetry for T(4,5) at q = 25") {
    auto t45 = torus_complex(5);
    DOptions opt;
    opt.validate_input = false;
    for (long long m = 1; m <= 12; ++m) {
        INFO("m = " << m);
        CHECK(d_invariant(t45, 25, m, std::nullopt, opt) ==
              d_invariant(t45, 25, -m, std::nullopt, opt));
    }
}

TEST_CASE("d is invariant under transpose at m = 0") {
    for (auto c : {torus_complex(5), doubled_trefoil_model(),
                   tensor(torus_complex(3), doubled_trefoil_model())}) {
        long long q = 2 * *c.genus + 3;
        auto ct = transpose(c);
        INFO(c.name);
        CHECK(d_invariant(c, q, 0) == d_invariant(ct, q, 0));
    }
}

TEST_CASE("tower bottoms agree with the U-action oracle") {
    std::vector<BifilteredComplex> cases;
    cases.push_back(unknot_complex());
    cases.push_back(torus_complex(3));
    cases.push_back(torus_complex(5));
    cases.push_back(doubled_trefoil_model());
    cases.push_back(transpose(doubled_trefoil_model()));
    cases.push_back(tensor(torus_complex(3), torus_complex(3)));
    cases.push_back(tensor(torus_complex(3), doubled_trefoil_model()));
    cases.push_back(
        tensor(tensor(torus_complex(3), doubled_trefoil_model()), doubled_trefoil_model()));
    for (const auto& c : cases) {
        for (long long m : {-1LL, 0LL, 1LL, 2LL}) {
            Chain gamma = c.hgen;
            int w = detail::safe_window(c, m);
            TruncatedQuotientComplex tq(c, m, w);
            int scan = detail::tower_bottom(tq, gamma);
            auto oracle = oracles::tower_bottom(c, m, w);
            INFO(c.name << " m=" << m);
            REQUIRE(oracle.has_value());
            CHECK(scan == *oracle);
        }
    }
}

TEST_CASE("SurgeryProblem bundles the same computation") {
    auto t45 = torus_complex(5);
    SurgeryProblem sp{&t45, 25, 5, std::nullopt};
    CHECK(d_invariant(sp) == rational(0));
}

TEST_CASE("dbar control table: the slice cover S^3_25(T(4,5))") {
    auto t45 = torus_complex(5);
    auto table = dbar_table(t45, 5);
    CHECK(table.d0 == rational(0));
    CHECK(table.dbar.at(1) == rational(0));
    CHECK(table.dbar.at(2) == rational(0));
}

TEST_CASE("dbar conjugation at the reduced indices") {
    // labels pk and p(p-k) are conjugate; p(p-k) folds to -(pk) mod p^2
    auto t45 = torus_complex(5);
    DOptions opt;
    opt.validate_input = false;
    for (long long k = 1; k <= 2; ++k) {
        rational dk = d_invariant(t45, 25, 5 * k, std::nullopt, opt);
        rational dconj = d_invariant(t45, 25, -5 * k, std::nullopt, opt);
        CHECK(dk == dconj);
    }
}

TEST_CASE("theorem bounds") {
    SECTION("p = 3 and p = 7 values") {
        auto b3 = theorem_bounds(3);
        CHECK(b3.d0_upper == rational(-4));
        CHECK(b3.dsp_value == rational(-2));
        CHECK(b3.min_ij_grading0 == 5);
        CHECK(b3.special_cycle == std::pair<long long, long long>{1, 4});
        auto b7 = theorem_bounds(7);
        CHECK(b7.d0_upper == rational(-8));
        CHECK(b7.dsp_value == rational(-6));
    }
    SECTION("closed forms across the prime family") {
        for (long long p : {3, 7, 11, 19, 23, 31}) {
            auto tb = theorem_bounds(p);
            INFO("p = " << p);
            CHECK(tb.d0_upper == rational(-p - 1));
            CHECK(tb.dsp_value == rational(-p + 1));
            CHECK(tb.min_ij_grading0 == (p * p + 4 * p - 1) / 4);
            CHECK(tb.special_cycle.first == (p * p - 1) / 8);
            CHECK(tb.special_cycle.second == (p * p + 8 * p - 1) / 8);
        }
    }
    SECTION("rejects p not 3 mod 4") {
        CHECK_THROWS_AS(theorem_bounds(5), math_error);
        CHECK_THROWS_AS(theorem_bounds(9), math_error);
    }
}

TEST_CASE("precondition violations") {
    auto t45 = torus_complex(5);
    CHECK_THROWS_AS(d_invariant(t45, 9, 0), math_error);    // q < 2g-1
    CHECK_THROWS_AS(d_invariant(t45, 25, 13), math_error);  // |m| too large
    auto bad = torus_complex(3);
    bad.diff.clear();  // three cycles, homology rank 3
    bad.hgen.clear();
    CHECK_THROWS_AS(d_invariant(bad, 25, 0), math_error);   // fails validation
}

TEST_CASE("deserialized complexes work without model metadata") {
    // round-trip drops genus and the stored generator cycle, so this drives
    // the generator_cycle and max_alexander fallbacks
    auto t45 = deserialize(serialize(torus_complex(5)));
    CHECK_FALSE(t45.genus.has_value());
    CHECK(t45.hgen.empty());
    CHECK(t45.max_alexander() == 6);
    for (long long m : {0LL, 5LL, 10LL}) CHECK(d_invariant(t45, 25, m) == rational(0));

    auto mixed = deserialize(serialize(tensor(torus_complex(3), doubled_trefoil_model())));
    auto original = tensor(torus_complex(3), doubled_trefoil_model());
    CHECK(d_invariant(mixed, 9, 1) == d_invariant(original, 9, 1));
}

TEST_CASE("a degenerate window fails loudly instead of lying") {
    auto t45 = torus_complex(5);
    DOptions opt;
    opt.window = 1;
    opt.validate_input = false;
    CHECK_THROWS_AS(d_invariant(t45, 25, 0, std::nullopt, opt), window_error);
}

TEST_CASE("determinism: repeated tables are identical") {
    auto c = tensor(torus_complex(3), doubled_trefoil_model());
    auto a = dbar_table(c, 3, true);
    auto b = dbar_table(c, 3, true);
    CHECK(a.d0 == b.d0);
    CHECK(a.dbar == b.dbar);
    CHECK(a.d_all == b.d_all);
}
