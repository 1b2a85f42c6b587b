#pragma once

#include <cstdlib>
#include <map>
#include <optional>

#include "floerd/fmodule.hpp"
#include "floerd/knots.hpp"
#include "floerd/rational.hpp"
#include "floerd/truncation.hpp"

namespace floerd {

// s(q,m) = (-(2m-q)^2 + q) / 4q.
inline rational grading_shift(long long q, long long m) {
    if (q <= 0) throw math_error("grading_shift requires q > 0");
    long long t = 2 * m - q;
    return rational(-(t * t) + q, 4 * q);
}

struct DOptions {
    int window = 0;             // 0 = automatic
    bool validate_input = true;
};

namespace detail {

// Bottom grading of the U-nontorsion tower of the quotient complex.
//
// The tower is the image of the rank-1 H(C^infty) in the quotient homology,
// so its grading-d member is the class of gamma_d = U^{(d0-d)/2} gamma for a
// fixed generating cycle gamma.  A class survives arbitrarily many U
// multiplications iff it is such an image, and the image classes are
// nonzero exactly from the tower bottom upward; the scan therefore walks
// gradings from below and returns the first d where the projection of
// gamma_d is not a boundary.  Strata of the quotient are finite in each
// grading, and the window is sized so no stratum in the scan range is cut.
inline int tower_bottom(const TruncatedQuotientComplex& tq, const Chain& gamma) {
    const BifilteredComplex& c = tq.complex();
    if (gamma.empty()) throw math_error("tower_bottom: empty generator cycle");
    const int d0 = c.grading_of(gamma[0]);
    for (const auto& t : gamma)
        if (c.grading_of(t) != d0)
            throw math_error("tower_bottom: generator cycle is not homogeneous");

    int lo = tq.e_min();
    lo += (((d0 - lo) % 2) + 2) % 2;
    const int hi = tq.e_max() + 2;
    for (int d = lo; d <= hi; d += 2) {
        auto s_d = tq.stratum(d);
        if (s_d.empty()) continue;
        std::unordered_map<uint32_t, uint32_t> row;
        for (uint32_t r = 0; r < s_d.size(); ++r) row.emplace(s_d[r], r);
        gf2::SparseVec v;
        for (const auto& t : gamma) {
            if (!tq.contains(t.idx, d)) continue;  // this term left the region
            v.push_back(row.at(t.idx));
        }
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        auto s_up = tq.stratum(d + 1);
        gf2::Reducer image;
        for (auto& col : tq.boundary_columns(d + 1, s_up, s_d))
            if (!col.empty()) image.add(std::move(col));
        if (!image.in_span(std::move(v))) return d;
    }
    throw window_error("tower bottom not found in scan range (window " +
                       std::to_string(tq.window()) + ")");
}

inline int safe_window(const BifilteredComplex& c, long long m) {
    long long emin = 0, emax = 0;
    bool first = true;
    for (const auto& b : c.basis) {
        long long e = b.gr - 2 * std::max<long long>(b.i, b.j - m);
        if (first) { emin = emax = e; first = false; }
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    long long span = (emax - emin) / 2 + 2;
    return static_cast<int>(std::max<long long>(default_window(c), span));
}

}  // namespace detail

// d(S^3_q(K), s_m) through the quotient complex of the large-surgery
// identification: tower bottom grading minus the shift s(q,m).
inline rational d_invariant(const BifilteredComplex& c, long long q, long long m,
                            std::optional<long long> genus = std::nullopt,
                            DOptions opt = {}) {
    long long g = genus ? *genus : (c.genus ? *c.genus : c.max_alexander());
    if (q < 2 * g - 1)
        throw math_error("d_invariant requires q >= 2g-1 (q = " + std::to_string(q) +
                         ", g = " + std::to_string(g) + ")");
    if (2 * std::llabs(m) > q - 1)
        throw math_error("d_invariant requires |m| <= (q-1)/2");
    if (opt.validate_input) {
        auto rep = validate(c);
        if (!rep.ok())
            throw math_error("d_invariant: complex fails validation: " +
                             (rep.problems.empty() ? std::string("unknown") : rep.problems[0]));
    }
    Chain gamma = c.hgen;
    if (gamma.empty()) gamma = generator_cycle(c);
    else if (!is_cycle(c, gamma))
        throw math_error("d_invariant: stored homology generator is not a cycle");

    int window = opt.window > 0 ? opt.window : detail::safe_window(c, m);
    TruncatedQuotientComplex tq(c, m, window);
    int b = detail::tower_bottom(tq, gamma);
    TruncatedQuotientComplex tq2(c, m, window + 1);
    if (detail::tower_bottom(tq2, gamma) != b)
        throw window_error("tower bottom unstable under window increase");
    return rational(b) - grading_shift(q, m);
}

// A surgery computation bundled as a value: the complex, the coefficient q,
// the Spin^c label m, and the genus backing the q >= 2g-1 hypothesis.
struct SurgeryProblem {
    const BifilteredComplex* complex = nullptr;
    long long q = 0;
    long long m = 0;
    std::optional<long long> genus;
};

inline rational d_invariant(const SurgeryProblem& sp, DOptions opt = {}) {
    if (!sp.complex) throw math_error("SurgeryProblem has no complex");
    return d_invariant(*sp.complex, sp.q, sp.m, sp.genus, opt);
}

// dbar values for one surgered manifold S^3_{p^2}(K): entries are indexed by
// the reduced labels k with Spin^c label m = p k.
struct DBarTable {
    long long p = 0;
    long long q = 0;
    rational d0;                          // d at the spin structure s_0
    std::map<long long, rational> dbar;   // k -> dbar(s_{pk}), k = 1..(p-1)/2
    std::map<long long, rational> d_all;  // label m -> d(s_m), when requested
};

inline DBarTable dbar_table(const BifilteredComplex& c, long long p, bool all_labels = false,
                            DOptions opt = {}) {
    if (p < 3 || p % 2 == 0) throw math_error("dbar_table requires an odd prime p");
    DBarTable table;
    table.p = p;
    table.q = p * p;
    if (opt.validate_input) {
        auto rep = validate(c);
        if (!rep.ok())
            throw math_error("dbar_table: complex fails validation: " +
                             (rep.problems.empty() ? std::string("unknown") : rep.problems[0]));
    }
    DOptions inner = opt;
    inner.validate_input = false;
    table.d0 = d_invariant(c, table.q, 0, std::nullopt, inner);
    table.d_all[0] = table.d0;
    for (long long k = 1; 2 * k <= p - 1; ++k) {
        rational dk = d_invariant(c, table.q, p * k, std::nullopt, inner);
        table.dbar[k] = dk - table.d0;
        table.d_all[p * k] = dk;
    }
    if (all_labels) {
        for (long long m = 0; 2 * m <= p * (p - 1); ++m)
            if (!table.d_all.count(m))
                table.d_all[m] = d_invariant(c, table.q, m, std::nullopt, inner);
    }
    return table;
}

// Symbolic Theorem 5.6-style bounds, computed without materializing the
// tensor complex.
struct TheoremBounds {
    long long p = 0;
    rational d0_upper;                             // -p-1
    rational dsp_value;                            // -p+1
    long long min_ij_grading0 = 0;                 // DP minimum of i+j in grading 0
    std::pair<long long, long long> special_cycle; // ((p^2-1)/8, (p^2+8p-1)/8)
};

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

inline TheoremBounds theorem_bounds(long long p) {
    if (!is_prime(p) || p % 4 != 3)
        throw math_error("theorem_bounds requires a prime p = 3 mod 4, got " +
                         std::to_string(p));
    TheoremBounds tb;
    tb.p = p;
    // per-factor minima of i+j restricted to gradings {-1, 0, 1}
    const std::map<int, long long> torus_min = {
        {-1, (p * p - 9) / 4}, {0, (p * p - 2 * p + 1) / 4}, {1, (p * p - 1) / 4}};
    const std::map<int, long long> double_min = {{-1, 0}, {0, 1}, {1, 2}};
    const long long copies = (3 * p - 1) / 2;
    std::map<long long, long long> dp;
    for (auto& [g, v] : torus_min) dp[g] = v;
    for (long long c = 0; c < copies; ++c) {
        std::map<long long, long long> next;
        for (auto& [sum, v] : dp)
            for (auto& [g, w] : double_min) {
                auto it = next.find(sum + g);
                if (it == next.end() || v + w < it->second) next[sum + g] = v + w;
            }
        dp = std::move(next);
    }
    tb.min_ij_grading0 = dp.at(0);
    // U^K theta reaches i+j >= -1, hence max(i,j) >= 0, for K = (B+1)/2
    long long K2 = tb.min_ij_grading0 + 1;
    if (K2 % 2) throw math_error("theorem_bounds: parity failure in the /8 formulas");
    tb.d0_upper = rational(-K2) - grading_shift(p * p, 0);
    // special cycle: torus cycle @ p copies of (0,1) @ (p-1)/2 copies of (1,0)
    long long ti = (p * p - 4 * p + 3) / 8, tj = (p * p - 1) / 8;
    tb.special_cycle = {ti + (p - 1) / 2, tj + p};
    tb.dsp_value = rational(-2 * ((p * p - 1) / 8)) - grading_shift(p * p, p);
    return tb;
}

// The Theorem genthm(3) cycle inside the materialized lp complex: the
// designated torus staircase cycle tensored with p copies of the (0,1)
// staircase-top cycle and (p-1)/2 copies of the (1,0) translate.
inline Chain lp_special_cycle(const BifilteredComplex& lp, long long p) {
    const long long copies = (3 * p - 1) / 2;
    const long long torus_size = 2 * p - 3;
    long long expect = torus_size;
    for (long long c = 0; c < copies; ++c) expect *= 15;
    if (static_cast<long long>(lp.size()) != expect)
        throw math_error("lp_special_cycle: complex size does not match lp(" +
                         std::to_string(p) + ")");
    // torus staircase: designated cycle is U^{-l(l+1)/2} G_1 with l = (p-3)/2
    const long long l = (p - 3) / 2;
    const long long k = p - 2;
    long long idx = 1 + k;  // ascending position of exponent index s = 1
    int upow = static_cast<int>(-(l * (l + 1)) / 2);
    // dtref basis: x1 at position 0, xm1 at position 2
    for (long long c = 0; c < copies; ++c) {
        bool top_cycle = c < p;  // first p copies use (0,1), the rest (1,0)
        idx = idx * 15 + (top_cycle ? 0 : 2);
        upow += top_cycle ? 0 : -1;
    }
    return {{static_cast<uint32_t>(idx), upow}};
}

// Nonzero-in-homology test for a homogeneous cycle, against the full
// grading slice of C^infty.
inline bool is_homology_generator(const BifilteredComplex& c, const Chain& chain) {
    if (chain.empty() || !is_cycle(c, chain)) return false;
    int d = c.grading_of(chain[0]);
    auto s_d = infinity_stratum(c, d);
    auto s_up = infinity_stratum(c, d + 1);
    std::unordered_map<uint32_t, uint32_t> row;
    for (uint32_t r = 0; r < s_d.size(); ++r) row.emplace(s_d[r], r);
    auto adj = c.out_adjacency();
    gf2::Reducer image;
    for (uint32_t x : s_up) {
        gf2::SparseVec col;
        for (auto& [y, kk] : adj[x]) col.push_back(row.at(y));
        std::sort(col.begin(), col.end());
        if (!col.empty()) image.add(std::move(col));
    }
    gf2::SparseVec v;
    for (const auto& t : chain) v.push_back(row.at(t.idx));
    std::sort(v.begin(), v.end());
    return !image.in_span(std::move(v));
}

}  // namespace floerd
