#pragma once

// Independent reference implementations used only to check the library:
// dense GF(2) elimination, literal Laurent-polynomial division for the
// torus Alexander polynomial, a tower locator driven by the homology
// U-action, and numeric root evaluation.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "floerd/fmodule.hpp"
#include "floerd/knots.hpp"
#include "floerd/qpoly.hpp"
#include "floerd/truncation.hpp"

namespace oracles {

struct DenseMat {
    size_t rows = 0, cols = 0;
    std::vector<std::vector<uint64_t>> bits;

    DenseMat(size_t r, size_t c) : rows(r), cols(c), bits(r, std::vector<uint64_t>((c + 63) / 64, 0)) {}
    void set(size_t r, size_t c) { bits[r][c / 64] ^= (uint64_t{1} << (c % 64)); }

    size_t rank() const {
        auto m = bits;
        size_t rk = 0;
        for (size_t c = 0; c < cols && rk < rows; ++c) {
            size_t piv = SIZE_MAX;
            for (size_t r = rk; r < m.size(); ++r)
                if (m[r][c / 64] >> (c % 64) & 1) { piv = r; break; }
            if (piv == SIZE_MAX) continue;
            std::swap(m[rk], m[piv]);
            for (size_t r = 0; r < m.size(); ++r) {
                if (r == rk) continue;
                if (m[r][c / 64] >> (c % 64) & 1)
                    for (size_t w = 0; w < m[r].size(); ++w) m[r][w] ^= m[rk][w];
            }
            ++rk;
        }
        return rk;
    }
};

// Homology rank over F2[U,U^-1] by dense elimination of the U=1 collapse.
inline long long homology_rank(const floerd::BifilteredComplex& c) {
    DenseMat m(c.basis.size(), c.basis.size());
    for (const auto& e : c.diff) m.set(e.dst, e.src);
    return static_cast<long long>(c.basis.size()) - 2 * static_cast<long long>(m.rank());
}

// Delta_{T_{p-1,p}} by honest polynomial division of
// (t^{(p-1)p} - 1)(t - 1) by (t^{p-1} - 1)(t^p - 1), then recentering.
inline floerd::AlexanderPoly torus_alexander(long long p) {
    auto mul = [](const std::vector<long long>& a, const std::vector<long long>& b) {
        std::vector<long long> out(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    auto mono = [](long long deg, long long lead, long long c0) {
        std::vector<long long> f(deg + 1, 0);
        f[deg] = lead;
        f[0] = c0;
        return f;
    };
    auto num = mul(mono((p - 1) * p, 1, -1), mono(1, 1, -1));
    auto den = mul(mono(p - 1, 1, -1), mono(p, 1, -1));
    // exact division, highest degree first
    std::vector<long long> quot(num.size() - den.size() + 1, 0);
    for (long long d = static_cast<long long>(num.size()) - 1;
         d >= static_cast<long long>(den.size()) - 1; --d) {
        long long q = num[d];  // den is monic
        if (q == 0) continue;
        long long shift = d - (static_cast<long long>(den.size()) - 1);
        quot[shift] = q;
        for (size_t k = 0; k < den.size(); ++k) num[k + shift] -= q * den[k];
    }
    for (long long c : num)
        if (c != 0) throw floerd::math_error("oracle division not exact");
    const long long g = (p - 2) * (p - 1) / 2;
    floerd::AlexanderPoly poly;
    for (size_t k = 0; k < quot.size(); ++k)
        if (quot[k] != 0) poly.coeffs[static_cast<long long>(k) - g] = quot[k];
    return poly;
}

// Tower bottom via the truncated homology's induced U-action: smallest
// grading still reached by composing U all the way down from the top of the
// faithful range.
inline std::optional<int> tower_bottom(const floerd::BifilteredComplex& c, long long m,
                                       int window = 0) {
    auto th = floerd::truncated_homology(c, m, window);
    for (int d = th.range_lo; d <= th.range_hi; ++d) {
        if (th.dim(d) == 0) continue;
        int g = th.range_hi;
        if (((g - d) % 2) != 0) --g;
        if (g <= d) continue;
        std::vector<floerd::gf2::SparseVec> cols(th.dim(g));
        for (uint32_t i = 0; i < cols.size(); ++i) cols[i] = {i};
        bool dead = false;
        for (int gg = g; gg > d && !dead; gg -= 2) {
            auto it = th.u_action.find(gg);
            if (it == th.u_action.end()) { dead = true; break; }
            const auto& act = it->second;
            for (auto& col : cols) {
                floerd::gf2::SparseVec img;
                for (uint32_t i : col) floerd::gf2::sym_diff(img, act[i]);
                col = std::move(img);
            }
        }
        if (dead) continue;
        for (const auto& col : cols)
            if (!col.empty()) return d;
    }
    return std::nullopt;
}

// |f(w)| at all q-th roots of unity; true iff some root (numerically)
// vanishes.
inline bool vanishes_at_qth_root(const floerd::ZPoly& f, long long q) {
    for (long long k = 0; k < q; ++k) {
        std::complex<double> w = std::polar(1.0, 2.0 * 3.14159265358979323846 * k / q);
        std::complex<double> acc{0.0, 0.0}, t{1.0, 0.0};
        for (long long c : f) {
            acc += static_cast<double>(c) * t;
            t *= w;
        }
        if (std::abs(acc) < 1e-7) return true;
    }
    return false;
}

}  // namespace oracles
