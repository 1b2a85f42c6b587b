#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floerd/fmodule.hpp"

namespace floerd {

// Symmetric Alexander polynomial with integer coefficients, Delta(1) = 1.
struct AlexanderPoly {
    std::map<long long, long long> coeffs;  // exponent -> coefficient, nonzero only

    void check() const {
        long long sum = 0;
        for (auto& [e, a] : coeffs) {
            if (a == 0) throw math_error("AlexanderPoly stores a zero coefficient");
            auto mirror = coeffs.find(-e);
            if (mirror == coeffs.end() || mirror->second != a)
                throw math_error("AlexanderPoly is not symmetric at exponent " +
                                 std::to_string(e));
            sum += a;
        }
        if (sum != 1) throw math_error("AlexanderPoly does not evaluate to 1 at t=1");
    }
};

// Delta_{T_{p-1,p}} expanded via the telescoped form
//   t^g (1 - sum_{l=1}^{p-2} t^{-p(l-1)-1} + sum_{l=1}^{p-2} t^{-l(p-1)}),
// g = (p-2)(p-1)/2.  Exactly 2p-3 coefficients, all +-1.
inline AlexanderPoly torus_alexander(long long p) {
    if (p < 3 || p % 2 == 0)
        throw math_error("torus_alexander requires odd p >= 3, got " + std::to_string(p));
    const long long g = (p - 2) * (p - 1) / 2;
    AlexanderPoly poly;
    poly.coeffs[g] = 1;
    for (long long l = 1; l <= p - 2; ++l) {
        poly.coeffs[g - p * (l - 1) - 1] += -1;
        poly.coeffs[g - l * (p - 1)] += 1;
    }
    for (auto it = poly.coeffs.begin(); it != poly.coeffs.end();)
        it = (it->second == 0) ? poly.coeffs.erase(it) : std::next(it);
    if (static_cast<long long>(poly.coeffs.size()) != 2 * p - 3)
        throw math_error("torus_alexander: expected 2p-3 nonzero coefficients");
    poly.check();
    return poly;
}

// The gap sequence n_{-k} < ... < n_k and gradings delta_s of an L-space
// knot staircase.
struct StaircaseData {
    std::vector<long long> exponents;  // ascending, odd count, n_{-s} = -n_s
    std::vector<long long> deltas;     // aligned with exponents; delta_k = 0

    void check() const {
        if (exponents.size() % 2 == 0 || exponents.empty())
            throw math_error("StaircaseData needs an odd number of exponents");
        if (exponents.size() != deltas.size())
            throw math_error("StaircaseData exponent/delta size mismatch");
        for (size_t s = 0; s + 1 < exponents.size(); ++s)
            if (exponents[s] >= exponents[s + 1])
                throw math_error("StaircaseData exponents must strictly increase");
        size_t n = exponents.size();
        for (size_t s = 0; s < n; ++s)
            if (exponents[s] != -exponents[n - 1 - s])
                throw math_error("StaircaseData exponents are not symmetric");
        if (deltas.back() != 0) throw math_error("StaircaseData requires delta_k = 0");
    }
};

// delta_{k-2l} = -2 sum_{j=0}^{2l-1} (-1)^j n_{k-j} and
// delta_{k-2l-1} = delta_{k-2(l+1)} + 1, in closed form from the gaps.
inline StaircaseData gaps_and_deltas(const AlexanderPoly& poly) {
    poly.check();
    if (poly.coeffs.size() % 2 == 0)
        throw math_error("gaps_and_deltas: even number of nonzero coefficients");
    StaircaseData sd;
    for (auto& [e, a] : poly.coeffs) sd.exponents.push_back(e);
    // alternating signs, +1 on top (L-space knot form)
    long long expect = 1;
    for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
        if (it->second != expect)
            throw math_error("gaps_and_deltas: coefficients do not alternate +1/-1 "
                             "(not of L-space knot form)");
        expect = -expect;
    }
    const size_t n = sd.exponents.size();  // 2k+1
    sd.deltas.assign(n, 0);
    // even offsets from the top: running alternating sum of the top exponents
    long long alt = 0;
    size_t top = n - 1;
    for (size_t l = 0; 2 * l < n; ++l) {
        if (l > 0) {
            alt += sd.exponents[top - (2 * l - 2)];
            alt -= sd.exponents[top - (2 * l - 1)];
        }
        sd.deltas[top - 2 * l] = -2 * alt;
    }
    for (size_t off = 1; off < n; off += 2)
        sd.deltas[top - off] = sd.deltas[top - off - 1] + 1;
    sd.check();
    return sd;
}

// Staircase complex: one generator per exponent at (0, n_s) in grading
// delta_s; generators at odd offset from the top map to both neighbours,
// with U powers solved from the grading law.
inline BifilteredComplex staircase_complex(const StaircaseData& sd,
                                           const std::string& name = "staircase") {
    sd.check();
    BifilteredComplex c;
    c.name = name;
    const size_t n = sd.exponents.size();
    const long long k = (static_cast<long long>(n) - 1) / 2;
    for (size_t s = 0; s < n; ++s) {
        long long idx = static_cast<long long>(s) - k;
        c.basis.push_back({"s" + std::to_string(idx), static_cast<int>(sd.deltas[s]),
                           0, static_cast<int>(sd.exponents[s])});
    }
    for (size_t s = 1; s + 1 < n; s += 2) {  // odd offset from top iff (n-1-s) odd
        if (((n - 1 - s) % 2) == 0) continue;
        long long a2 = sd.deltas[s + 1] - sd.deltas[s] + 1;
        long long b2 = sd.deltas[s - 1] - sd.deltas[s] + 1;
        if (a2 % 2 || b2 % 2 || a2 < 0 || b2 < 0)
            throw math_error("staircase_complex: non-integer U-exponent from deltas");
        c.diff.push_back({static_cast<uint32_t>(s), static_cast<uint32_t>(s + 1),
                          static_cast<int>(a2 / 2)});
        c.diff.push_back({static_cast<uint32_t>(s), static_cast<uint32_t>(s - 1),
                          static_cast<int>(b2 / 2)});
    }
    c.genus = sd.exponents.back();
    c.hgen = {{static_cast<uint32_t>(n - 1), 0}};  // top generator, a cycle
    return c;
}

inline BifilteredComplex torus_complex(long long p) {
    auto sd = gaps_and_deltas(torus_alexander(p));
    return staircase_complex(sd, "torus(" + std::to_string(p - 1) + "," +
                                     std::to_string(p) + ")");
}

// The fixed model of CFK of the doubled trefoil: a trefoil-shaped staircase
// plus three acyclic boxes, 15 generators total.  The upper-left corner of
// a box maps to its two sides, both sides map to the lower-right corner.
inline BifilteredComplex doubled_trefoil_model() {
    BifilteredComplex c;
    c.name = "dtref";
    auto add = [&](const std::string& id, int gr, int i, int j) {
        c.basis.push_back({id, gr, i, j});
        return static_cast<uint32_t>(c.basis.size() - 1);
    };
    uint32_t x1 = add("x1", 0, 0, 1);
    uint32_t x0 = add("x0", -1, 0, 0);
    uint32_t xm1 = add("xm1", -2, 0, -1);
    c.diff.push_back({x0, x1, 1});
    c.diff.push_back({x0, xm1, 0});
    auto box = [&](const std::string& tag, int g1) {
        uint32_t b1 = add(tag + "1", g1, 0, 0);
        uint32_t b2 = add(tag + "2", g1 - 1, -1, 0);
        uint32_t b3 = add(tag + "3", g1 - 1, 0, -1);
        uint32_t b4 = add(tag + "4", g1 - 2, -1, -1);
        c.diff.push_back({b1, b2, 0});
        c.diff.push_back({b1, b3, 0});
        c.diff.push_back({b2, b4, 0});
        c.diff.push_back({b3, b4, 0});
    };
    box("A", -1);
    box("B", -2);
    box("C", -2);
    c.genus = 1;
    c.hgen = {{x1, 0}};
    return c;
}

// --- whole-complex slices of C^infty (finite in each grading) --------------

// Basis of the grading-d slice: each parity-matching generator appears once,
// as the translate U^{-t}x with t = (d - gr(x))/2.
inline std::vector<uint32_t> infinity_stratum(const BifilteredComplex& c, int d) {
    std::vector<uint32_t> s;
    for (uint32_t x = 0; x < c.basis.size(); ++x)
        if (((d - c.basis[x].gr) % 2) == 0) s.push_back(x);
    return s;
}

// A grading-d cycle supported entirely at filtration (pi, pj) and not a
// boundary in C^infty, if one exists.
inline std::optional<Chain> infinity_cycle_at(const BifilteredComplex& c, int pi, int pj,
                                              int d) {
    auto s_d = infinity_stratum(c, d);
    auto s_dm1 = infinity_stratum(c, d - 1);
    auto s_dp1 = s_dm1;  // same parity class
    std::unordered_map<uint32_t, uint32_t> row;
    for (uint32_t r = 0; r < s_dm1.size(); ++r) row.emplace(s_dm1[r], r);
    auto adj = c.out_adjacency();
    auto column = [&](uint32_t x) {
        gf2::SparseVec col;
        for (auto& [y, k] : adj[x]) col.push_back(row.at(y));
        std::sort(col.begin(), col.end());
        return col;
    };
    // image of the slice above
    gf2::Reducer image;
    {
        std::unordered_map<uint32_t, uint32_t> drow;
        for (uint32_t r = 0; r < s_d.size(); ++r) drow.emplace(s_d[r], r);
        for (uint32_t x : s_dp1) {
            gf2::SparseVec col;
            for (auto& [y, k] : adj[x]) col.push_back(drow.at(y));
            std::sort(col.begin(), col.end());
            if (!col.empty()) image.add(std::move(col));
        }
    }
    // cycles among the candidates at (pi, pj)
    std::vector<uint32_t> cands;
    for (uint32_t r = 0; r < s_d.size(); ++r) {
        uint32_t x = s_d[r];
        long long t = (static_cast<long long>(d) - c.basis[x].gr) / 2;
        if (c.basis[x].i + t == pi && c.basis[x].j + t == pj) cands.push_back(r);
    }
    gf2::AugReducer ker_finder;
    std::vector<gf2::SparseVec> kernel;
    for (uint32_t ci = 0; ci < cands.size(); ++ci) {
        gf2::SparseVec kv;
        if (!ker_finder.add(column(s_d[cands[ci]]), {ci}, &kv)) kernel.push_back(std::move(kv));
    }
    // a single candidate with empty differential is itself a kernel combo
    for (auto& combo : kernel) {
        gf2::SparseVec v;
        for (uint32_t ci : combo) v.push_back(cands[ci]);
        std::sort(v.begin(), v.end());
        if (!image.in_span(v)) {
            Chain out;
            for (uint32_t r : v) {
                uint32_t x = s_d[r];
                out.push_back({x, (c.basis[x].gr - d) / 2});
            }
            return out;
        }
    }
    return std::nullopt;
}

struct DoubleConstraintReport {
    bool grading0_bound = true;  // every grading-0 translate has i+j >= 1
    bool grading1_bound = true;  // every grading-1 translate has i+j >= 2
    bool cycle_at_01 = true;     // grading-0 generator cycle at (0,1)
    bool cycle_at_10 = true;     // and at (1,0)
    std::vector<std::string> problems;

    bool ok() const { return grading0_bound && grading1_bound && cycle_at_01 && cycle_at_10; }
};

// The three constraints the paper pins on any model of the doubled trefoil.
inline DoubleConstraintReport check_double_constraints(const BifilteredComplex& c) {
    DoubleConstraintReport rep;
    for (const auto& b : c.basis) {
        // translate x to grading 0 (or 1): i+j becomes i+j - gr (parity fixed)
        long long v = static_cast<long long>(b.i) + b.j - b.gr;
        if ((b.gr % 2) == 0 && v < 1) {
            rep.grading0_bound = false;
            rep.problems.push_back("grading-0 translate of " + b.id + " has i+j = " +
                                   std::to_string(v));
        }
        if ((b.gr % 2) != 0 && v + 1 < 2) {
            rep.grading1_bound = false;
            rep.problems.push_back("grading-1 translate of " + b.id + " has i+j = " +
                                   std::to_string(v + 1));
        }
    }
    if (!infinity_cycle_at(c, 0, 1, 0)) {
        rep.cycle_at_01 = false;
        rep.problems.push_back("no generating cycle at (0,1) in grading 0");
    }
    if (!infinity_cycle_at(c, 1, 0, 0)) {
        rep.cycle_at_10 = false;
        rep.problems.push_back("no generating cycle at (1,0) in grading 0");
    }
    return rep;
}

// Associated-graded ranks of the i=0 column: (alexander j, grading) -> count.
inline std::map<std::pair<int, int>, size_t> alexander_table(const BifilteredComplex& c) {
    std::map<std::pair<int, int>, size_t> table;
    for (const auto& b : c.basis)
        table[{b.j - b.i, b.gr - 2 * b.i}]++;
    return table;
}

inline long long lp_projected_generators(long long p) {
    __int128 pr = 2 * p - 3;
    for (long long c = 0; c < (3 * p - 1) / 2; ++c) {
        pr *= 15;
        if (pr > static_cast<__int128>(4) * 1000 * 1000 * 1000 * 1000 * 1000) break;
    }
    return pr > INT64_MAX ? INT64_MAX : static_cast<long long>(pr);
}

// CFK model of L_p = T_{p-1,p} # (3p-1)/2 . D(T_{2,3}); refuses to
// materialize past the generator cap.
inline BifilteredComplex lp_complex(long long p, long long max_generators = 500000) {
    if (p < 3 || p % 4 != 3)
        throw math_error("lp_complex requires a prime p = 3 mod 4, got " + std::to_string(p));
    for (long long f = 2; f * f <= p; ++f)
        if (p % f == 0) throw math_error("lp_complex requires prime p");
    long long projected = lp_projected_generators(p);
    if (projected > max_generators)
        throw size_error("lp_complex(" + std::to_string(p) + ") would have " +
                             std::to_string(projected) + " generators (cap " +
                             std::to_string(max_generators) + ")",
                         projected);
    BifilteredComplex c = torus_complex(p);
    BifilteredComplex d = doubled_trefoil_model();
    for (long long copy = 0; copy < (3 * p - 1) / 2; ++copy) c = tensor(c, d);
    c.name = "lp(" + std::to_string(p) + ")";
    c.genus = (p * p + 1) / 2;
    if (c.max_alexander() != *c.genus)
        throw math_error("lp_complex: top Alexander grading disagrees with genus");
    return c;
}

}  // namespace floerd
