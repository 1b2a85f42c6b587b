#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "floerd/errors.hpp"

namespace floerd {

// Integer polynomials, ascending coefficients, used for gcd computations in
// Q[t] (Gauss' lemma: the gcd of primitive integer polynomials over Q is
// their primitive integer gcd up to sign).  Intermediate arithmetic runs on
// 128-bit integers; the remainder sequences of the degree <= 15 inputs here
// stay far below that.
using ZPoly = std::vector<long long>;

inline void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ZPoly zprimitive(ZPoly f) {
    ztrim(f);
    long long g = 0;
    for (long long c : f) g = std::gcd(g, c < 0 ? -c : c);
    if (g > 1)
        for (auto& c : f) c /= g;
    if (!f.empty() && f.back() < 0)
        for (auto& c : f) c = -c;
    return f;
}

namespace detail {

using i128 = __int128;
using WPoly = std::vector<i128>;

inline i128 iabs(i128 x) { return x < 0 ? -x : x; }

inline i128 igcd(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline void wtrim(WPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline void wprimitive(WPoly& f) {
    wtrim(f);
    i128 g = 0;
    for (i128 c : f) g = igcd(g, c);
    if (g > 1)
        for (auto& c : f) c /= g;
    if (!f.empty() && f.back() < 0)
        for (auto& c : f) c = -c;
}

inline void wmul_check(i128 a, i128 b) {
    // inputs stay below 2^62 after content stripping; guard anyway
    if (iabs(a) > (i128(1) << 62) || iabs(b) > (i128(1) << 62))
        throw math_error("polynomial gcd: coefficient overflow");
}

// Remainder of a by b up to a scalar; content is stripped every step, which
// preserves the remainder class up to units of Q[t] (all a gcd needs).
inline WPoly wpseudo_rem(WPoly a, const WPoly& b) {
    wtrim(a);
    const i128 lb = b.back();
    while (static_cast<int>(a.size()) >= static_cast<int>(b.size()) && !a.empty()) {
        const i128 la = a.back();
        const size_t shift = a.size() - b.size();
        const i128 g = igcd(la, lb);
        const i128 fa = lb / g, fb = la / g;
        wmul_check(fa, la);
        for (auto& c : a) c *= fa;
        for (size_t k = 0; k < b.size(); ++k) {
            wmul_check(fb, b[k]);
            a[k + shift] -= fb * b[k];
        }
        wprimitive(a);
        if (a.empty()) break;
    }
    return a;
}

}  // namespace detail

// Primitive gcd in Z[t] (equals the gcd in Q[t] up to units).
inline ZPoly zgcd(ZPoly a0, ZPoly b0) {
    detail::WPoly a(a0.begin(), a0.end()), b(b0.begin(), b0.end());
    detail::wprimitive(a);
    detail::wprimitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        detail::WPoly r = detail::wpseudo_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    ZPoly out;
    out.reserve(a.size());
    for (detail::i128 c : a) {
        if (detail::iabs(c) > INT64_MAX)
            throw math_error("polynomial gcd: result coefficient overflow");
        out.push_back(static_cast<long long>(c));
    }
    return out;
}

inline ZPoly zpoly_tq_minus_1(long long q) {
    ZPoly f(q + 1, 0);
    f[0] = -1;
    f[q] = 1;
    return f;
}

inline std::string zpoly_str(const ZPoly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < f.size(); ++k) {
        if (f[k] == 0) continue;
        if (!s.empty()) s += f[k] > 0 ? " + " : " - ";
        else if (f[k] < 0) s += "-";
        long long a = f[k] < 0 ? -f[k] : f[k];
        if (a != 1 || k == 0) s += std::to_string(a);
        if (k >= 1) {
            s += "t";
            if (k >= 2) s += "^" + std::to_string(k);
        }
    }
    return s;
}

}  // namespace floerd
