#include <catch2/catch_amalgamated.hpp>

#include "floerd/knots.hpp"
#include "oracles.hpp"

using namespace floerd;

TEST_CASE("torus Alexander polynomials") {
    SECTION("p = 3 is t - 1 + 1/t") {
        auto poly = torus_alexander(3);
        REQUIRE(poly.coeffs.size() == 3);
        CHECK(poly.coeffs.at(1) == 1);
        CHECK(poly.coeffs.at(0) == -1);
        CHECK(poly.coeffs.at(-1) == 1);
    }
    SECTION("p = 5 support") {
        auto poly = torus_alexander(5);
        std::vector<long long> support;
        for (auto& [e, a] : poly.coeffs) support.push_back(e);
        CHECK(support == std::vector<long long>{-6, -5, -2, 0, 2, 5, 6});
    }
    SECTION("matches honest polynomial division for odd p in 3..13") {
        for (long long p = 3; p <= 13; p += 2) {
            auto fast = torus_alexander(p);
            auto slow = oracles::torus_alexander(p);
            INFO("p = " << p);
            CHECK(fast.coeffs == slow.coeffs);
            CHECK(fast.coeffs.size() == static_cast<size_t>(2 * p - 3));
            CHECK(fast.coeffs.rbegin()->first == (p - 2) * (p - 1) / 2);
        }
    }
    SECTION("rejects even or small p") {
        CHECK_THROWS_AS(torus_alexander(4), math_error);
        CHECK_THROWS_AS(torus_alexander(1), math_error);
    }
}

TEST_CASE("gaps_and_deltas closed forms") {
    SECTION("trefoil") {
        auto sd = gaps_and_deltas(torus_alexander(3));
        CHECK(sd.exponents == std::vector<long long>{-1, 0, 1});
        CHECK(sd.deltas == std::vector<long long>{-2, -1, 0});
    }
    SECTION("T(4,5) gradings from the worked proof") {
        auto sd = gaps_and_deltas(torus_alexander(5));
        std::map<long long, long long> delta_at;
        for (size_t s = 0; s < sd.exponents.size(); ++s) delta_at[sd.exponents[s]] = sd.deltas[s];
        CHECK(delta_at[6] == 0);
        CHECK(delta_at[2] == -2);
        CHECK(delta_at[-2] == -6);
        CHECK(delta_at[-6] == -12);
        CHECK(delta_at[5] == -1);
        CHECK(delta_at[0] == -5);
        CHECK(delta_at[-5] == -11);
    }
    SECTION("delta_{k-2l} = -l(l+1) and the exponent families, odd p in 3..13") {
        for (long long p = 3; p <= 13; p += 2) {
            auto sd = gaps_and_deltas(torus_alexander(p));
            const long long g = (p - 2) * (p - 1) / 2;
            const size_t top = sd.exponents.size() - 1;
            for (long long l = 0; l <= p - 2; ++l) {
                INFO("p=" << p << " l=" << l);
                CHECK(sd.deltas[top - 2 * l] == -l * (l + 1));
                CHECK(sd.exponents[top - 2 * l] == g - l * (p - 1));
            }
            for (long long l = 0; l <= p - 3; ++l) {
                INFO("p=" << p << " l=" << l);
                CHECK(sd.exponents[top - 2 * l - 1] == g - l * p - 1);
            }
        }
    }
    SECTION("rejects non-alternating coefficients") {
        AlexanderPoly fig8;  // -t + 3 - 1/t
        fig8.coeffs = {{1, -1}, {0, 3}, {-1, -1}};
        CHECK_THROWS_AS(gaps_and_deltas(fig8), math_error);
    }
}

TEST_CASE("staircase complexes") {
    SECTION("trefoil arrows") {
        auto c = torus_complex(3);
        REQUIRE(c.size() == 3);
        REQUIRE(c.diff.size() == 2);
        // dG_0 = U G_1 + G_-1
        std::map<std::string, int> power;
        for (auto& e : c.diff) {
            CHECK(c.basis[e.src].id == "s0");
            power[c.basis[e.dst].id] = e.upower;
        }
        CHECK(power["s1"] == 1);
        CHECK(power["s-1"] == 0);
    }
    SECTION("T(4,5): U^3 of the top generator sits at (-3,3) in grading -6") {
        auto c = torus_complex(5);
        const auto& top = c.basis.back();
        CHECK(top.i - 3 == -3);
        CHECK(top.j - 3 == 3);
        CHECK(top.gr - 6 == -6);
    }
    SECTION("designated cycle for p = 5 is [x,1,3]") {
        auto c = torus_complex(5);
        auto cyc = infinity_cycle_at(c, 1, 3, 0);
        REQUIRE(cyc.has_value());
        REQUIRE(cyc->size() == 1);
        CHECK(c.basis[(*cyc)[0].idx].id == "s1");
    }
    SECTION("grading bounds by exhaustive translate scan, p in {3,5,7}") {
        for (long long p : {3, 5, 7}) {
            auto c = torus_complex(p);
            long long min0 = INT64_MAX, min1 = INT64_MAX;
            for (const auto& b : c.basis) {
                long long v = static_cast<long long>(b.i) + b.j - b.gr;
                if ((b.gr % 2) == 0) min0 = std::min(min0, v);
                else min1 = std::min(min1, v + 1);
            }
            INFO("p = " << p);
            CHECK(min0 == (p * p - 2 * p + 1) / 4);
            CHECK(min1 == (p * p - 1) / 4);
            CHECK(infinity_cycle_at(c, (p * p - 4 * p + 3) / 8, (p * p - 1) / 8, 0).has_value());
        }
    }
    SECTION("i=0 associated graded: one class per exponent at grading delta_s") {
        for (long long p = 3; p <= 13; p += 2) {
            auto sd = gaps_and_deltas(torus_alexander(p));
            auto c = staircase_complex(sd);
            auto table = alexander_table(c);
            INFO("p = " << p);
            CHECK(table.size() == sd.exponents.size());
            for (size_t s = 0; s < sd.exponents.size(); ++s) {
                auto it = table.find({static_cast<int>(sd.exponents[s]),
                                      static_cast<int>(sd.deltas[s])});
                REQUIRE(it != table.end());
                CHECK(it->second == 1);
            }
            CHECK(validate(c).ok());
        }
    }
    SECTION("the trivial polynomial gives the unknot staircase") {
        AlexanderPoly one;
        one.coeffs = {{0, 1}};
        auto sd = gaps_and_deltas(one);
        auto c = staircase_complex(sd);
        CHECK(c.size() == 1);
        CHECK(c.diff.empty());
        CHECK(c.basis[0].gr == 0);
        CHECK(validate(c).ok());
    }
    SECTION("inconsistent deltas are rejected") {
        StaircaseData sd;
        sd.exponents = {-1, 0, 1};
        sd.deltas = {-3, -1, 0};  // (delta_left - delta + 1)/2 not an integer
        CHECK_THROWS_AS(staircase_complex(sd), math_error);
    }
}

TEST_CASE("doubled trefoil model") {
    auto d = doubled_trefoil_model();
    CHECK(d.size() == 15);
    CHECK(validate(d).ok());
    CHECK(oracles::homology_rank(d) == 1);

    SECTION("i=0 associated graded matches the HFK display") {
        auto table = alexander_table(d);
        std::map<std::pair<int, int>, size_t> expected = {
            {{1, 0}, 2}, {{1, -1}, 2},
            {{0, -1}, 3}, {{0, -2}, 4},
            {{-1, -2}, 2}, {{-1, -3}, 2},
        };
        CHECK(table == expected);
    }
    SECTION("constraints") {
        auto rep = check_double_constraints(d);
        CHECK(rep.ok());
        auto rept = check_double_constraints(transpose(d));
        CHECK(rept.ok());
        auto rep3 = check_double_constraints(torus_complex(3));
        CHECK(rep3.ok());
        auto repu = check_double_constraints(unknot_complex());
        CHECK_FALSE(repu.grading0_bound);
        CHECK_FALSE(repu.ok());
    }
}

TEST_CASE("lp complexes") {
    SECTION("p = 3 materializes with the right size and genus") {
        auto lp = lp_complex(3);
        CHECK(lp.size() == 151875);
        CHECK(lp.genus == 5);
        CHECK(lp.max_alexander() == 5);
    }
    SECTION("p = 7 is refused with the projected count") {
        try {
            lp_complex(7);
            FAIL("expected size_error");
        } catch (const size_error& e) {
            CHECK(e.projected == 11LL * 576650390625LL);  // 11 * 15^10
        }
    }
    SECTION("p = 5 is not in the family") {
        CHECK_THROWS_AS(lp_complex(5), math_error);
    }
}
