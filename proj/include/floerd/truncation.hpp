#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "floerd/errors.hpp"
#include "floerd/fmodule.hpp"
#include "floerd/gf2.hpp"

namespace floerd {

// The quotient complex C{max(i, j-m) >= 0} of a bifiltered complex, cut off
// at `window` U-translates per basis element.  A translate U^{-t} x sits at
// filtration (i+t, j+t) and grading gr(x) + 2t; it enters the region at
//   t0(x) = -max(i_x, j_x - m),
// so the grading-d slice of the quotient is finite and consists of the x
// with e(x) := gr(x) + 2 t0(x) <= d (matching parity), t = (d - gr(x))/2.
// The window keeps offsets t - t0(x) < N; slices with d < e_min + 2N are
// exactly the slices of the untruncated quotient.
class TruncatedQuotientComplex {
  public:
    TruncatedQuotientComplex(const BifilteredComplex& c, long long m, int window)
        : c_(&c), m_(m), window_(window) {
        if (window < 1) throw math_error("window must be >= 1");
        entry_grade_.resize(c.basis.size());
        for (size_t x = 0; x < c.basis.size(); ++x) {
            const auto& b = c.basis[x];
            long long t0 = -std::max<long long>(b.i, b.j - m);
            entry_grade_[x] = static_cast<int>(b.gr + 2 * t0);
        }
        e_min_ = e_max_ = entry_grade_.empty() ? 0 : entry_grade_[0];
        for (int e : entry_grade_) {
            e_min_ = std::min(e_min_, e);
            e_max_ = std::max(e_max_, e);
        }
        adj_ = c.out_adjacency();
    }

    const BifilteredComplex& complex() const { return *c_; }
    long long m() const { return m_; }
    int window() const { return window_; }
    int entry_grade(uint32_t x) const { return entry_grade_[x]; }
    int e_min() const { return e_min_; }
    int e_max() const { return e_max_; }

    // Largest grading whose slice (and the slice above it) is guaranteed
    // identical to the untruncated quotient.
    int faithful_top() const { return e_min_ + 2 * window_ - 2; }

    bool contains(uint32_t x, int d) const {
        int e = entry_grade_[x];
        return ((d - c_->basis[x].gr) % 2) == 0 && e <= d && d <= e + 2 * (window_ - 1);
    }

    std::vector<uint32_t> stratum(int d) const {
        std::vector<uint32_t> s;
        for (uint32_t x = 0; x < c_->basis.size(); ++x)
            if (contains(x, d)) s.push_back(x);
        return s;
    }

    // Columns of the induced differential from the grading-d slice to the
    // grading-(d-1) slice, in the coordinate order of the given strata.
    // Targets below the region are dropped (quotient convention); targets
    // never overflow the window because offsets only decrease along d.
    std::vector<gf2::SparseVec> boundary_columns(int d, const std::vector<uint32_t>& s_d,
                                                 const std::vector<uint32_t>& s_dm1) const {
        std::unordered_map<uint32_t, uint32_t> row;
        row.reserve(s_dm1.size());
        for (uint32_t r = 0; r < s_dm1.size(); ++r) row.emplace(s_dm1[r], r);
        std::vector<gf2::SparseVec> cols(s_d.size());
        for (uint32_t cidx = 0; cidx < s_d.size(); ++cidx) {
            uint32_t x = s_d[cidx];
            for (auto& [y, k] : adj_[x]) {
                if (!contains(y, d - 1)) continue;  // left the region
                auto it = row.find(y);
                if (it == row.end()) throw math_error("inconsistent stratum lookup");
                cols[cidx].push_back(it->second);
            }
            std::sort(cols[cidx].begin(), cols[cidx].end());
        }
        return cols;
    }

  private:
    const BifilteredComplex* c_;
    long long m_;
    int window_;
    std::vector<int> entry_grade_;
    int e_min_ = 0, e_max_ = 0;
    std::vector<std::vector<std::pair<uint32_t, int>>> adj_;
};

struct TruncatedHomology {
    std::map<int, size_t> dims;  // grading -> F2 dimension, over the faithful range
    // U-action on homology: for each grading d, columns (one per basis class
    // of H_d) expressed in the homology basis of H_{d-2}.
    std::map<int, std::vector<gf2::SparseVec>> u_action;
    int window = 0;
    int range_lo = 0;  // faithful grading range [range_lo, range_hi]
    int range_hi = 0;

    size_t dim(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
};

inline int default_window(const BifilteredComplex& c) {
    return static_cast<int>(c.filtration_width()) + 2;
}

namespace detail {

inline TruncatedHomology truncated_homology_once(const BifilteredComplex& c, long long m,
                                                 int window) {
    TruncatedQuotientComplex tq(c, m, window);
    TruncatedHomology out;
    out.window = window;
    const int lo = tq.e_min();
    const int hi = tq.faithful_top();
    out.range_lo = lo;
    out.range_hi = hi;

    struct Stratum {
        std::vector<uint32_t> gens;
        gf2::Reducer boundaries;           // im(d) from the slice above
        gf2::AugReducer classes;           // homology basis, markers = class ids
        std::vector<gf2::SparseVec> reps;  // cycle representatives
    };
    std::map<int, Stratum> strata;
    for (int d = lo; d <= hi + 1; ++d) strata[d].gens = tq.stratum(d);

    // boundaries: columns of d_{d+1} reduce into stratum d
    for (int d = lo; d <= hi; ++d) {
        auto& up = strata[d + 1];
        auto cols = tq.boundary_columns(d + 1, up.gens, strata[d].gens);
        for (auto& col : cols)
            if (!col.empty()) strata[d].boundaries.add(std::move(col));
    }
    // cycles via kernel of d_d, then homology classes mod boundaries
    for (int d = lo; d <= hi; ++d) {
        auto& st = strata[d];
        std::vector<uint32_t> below = (strata.count(d - 1)) ? strata[d - 1].gens
                                                            : tq.stratum(d - 1);
        auto cols = tq.boundary_columns(d, st.gens, below);
        gf2::AugReducer ker_finder;
        std::vector<gf2::SparseVec> kernel;
        for (uint32_t k = 0; k < cols.size(); ++k) {
            gf2::SparseVec kv;
            if (!ker_finder.add(std::move(cols[k]), {k}, &kv)) kernel.push_back(std::move(kv));
        }
        for (auto& z : kernel) {
            gf2::SparseVec r = z;
            st.boundaries.reduce(r);
            if (r.empty()) continue;
            uint32_t cls = static_cast<uint32_t>(st.reps.size());
            gf2::SparseVec stored = r;
            if (st.classes.add(std::move(r), {cls})) st.reps.push_back(std::move(stored));
        }
        if (!st.reps.empty()) out.dims[d] = st.reps.size();
    }
    // U-action: translate representatives down one U power and express them
    // in the homology basis two gradings below.
    for (int d = lo + 2; d <= hi; ++d) {
        auto& st = strata[d];
        if (st.reps.empty()) continue;
        auto& lowst = strata[d - 2];
        std::unordered_map<uint32_t, uint32_t> lowrow;
        for (uint32_t r = 0; r < lowst.gens.size(); ++r) lowrow.emplace(lowst.gens[r], r);
        std::vector<gf2::SparseVec> images;
        for (const auto& rep : st.reps) {
            gf2::SparseVec img;
            for (uint32_t ridx : rep) {
                uint32_t x = st.gens[ridx];
                // U(U^{-t}x) = U^{-(t-1)}x, dropped if it leaves the region
                if (!tq.contains(x, d - 2)) continue;
                img.push_back(lowrow.at(x));
            }
            std::sort(img.begin(), img.end());
            gf2::SparseVec coeff;
            lowst.boundaries.reduce(img);
            lowst.classes.reduce(img, coeff);
            if (!img.empty())
                throw math_error("U image of a homology class failed to resolve");
            images.push_back(std::move(coeff));
        }
        out.u_action[d] = std::move(images);
    }
    return out;
}

}  // namespace detail

// Graded homology dimensions of the truncated quotient complex plus the
// induced U-action, with a mandatory stability re-check at window+1.
inline TruncatedHomology truncated_homology(const BifilteredComplex& c, long long m,
                                            int window = 0) {
    if (window <= 0) window = default_window(c);
    TruncatedHomology a = detail::truncated_homology_once(c, m, window);
    TruncatedHomology b = detail::truncated_homology_once(c, m, window + 1);
    for (int d = a.range_lo; d <= a.range_hi; ++d) {
        if (a.dim(d) != b.dim(d))
            throw window_error("truncation window " + std::to_string(window) +
                               " is unstable at grading " + std::to_string(d));
    }
    return a;
}

inline TruncatedHomology truncated_homology(const TruncatedQuotientComplex& tq) {
    return truncated_homology(tq.complex(), tq.m(), tq.window());
}

}  // namespace floerd
