#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace floerd::gf2 {

// A vector over GF(2), stored as a sorted list of the indices of its
// nonzero coordinates.
using SparseVec = std::vector<uint32_t>;

// a ^= b (symmetric difference of sorted index lists).
inline void sym_diff(SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] < b[ib]) out.push_back(a[ia++]);
        else if (b[ib] < a[ia]) out.push_back(b[ib++]);
        else { ++ia; ++ib; }
    }
    out.insert(out.end(), a.begin() + static_cast<ptrdiff_t>(ia), a.end());
    out.insert(out.end(), b.begin() + static_cast<ptrdiff_t>(ib), b.end());
    a.swap(out);
}

// Column reducer with the "low entry" pivot convention: each stored column
// owns its largest nonzero row index.  Supports rank computation and
// membership tests against the accumulated column space.
class Reducer {
  public:
    // Reduce v against the stored columns (v is modified in place).
    void reduce(SparseVec& v) const {
        while (!v.empty()) {
            auto it = pivots_.find(v.back());
            if (it == pivots_.end()) return;
            sym_diff(v, cols_[it->second]);
        }
    }

    // Reduce, then claim the residual's pivot if nonzero.
    // Returns true when v was independent of the current span.
    bool add(SparseVec v) {
        reduce(v);
        if (v.empty()) return false;
        pivots_.emplace(v.back(), cols_.size());
        cols_.push_back(std::move(v));
        return true;
    }

    bool in_span(SparseVec v) const {
        reduce(v);
        return v.empty();
    }

    size_t rank() const { return cols_.size(); }
    const std::vector<SparseVec>& columns() const { return cols_; }

  private:
    std::vector<SparseVec> cols_;
    std::unordered_map<uint32_t, size_t> pivots_;
};

// Reducer that carries a companion vector through every elimination step.
// Feeding the columns of a matrix with unit companions yields kernel
// elements: whenever add() reduces a column to zero, the companion holds
// the combination of input columns that vanished.
class AugReducer {
  public:
    void reduce(SparseVec& v, SparseVec& companion) const {
        while (!v.empty()) {
            auto it = pivots_.find(v.back());
            if (it == pivots_.end()) return;
            sym_diff(v, cols_[it->second].first);
            sym_diff(companion, cols_[it->second].second);
        }
    }

    bool add(SparseVec v, SparseVec companion, SparseVec* kernel_out = nullptr) {
        reduce(v, companion);
        if (v.empty()) {
            if (kernel_out) *kernel_out = std::move(companion);
            return false;
        }
        pivots_.emplace(v.back(), cols_.size());
        cols_.emplace_back(std::move(v), std::move(companion));
        return true;
    }

    // Membership in the span of the stored (reduced) columns.
    bool in_span(SparseVec v) const {
        while (!v.empty()) {
            auto it = pivots_.find(v.back());
            if (it == pivots_.end()) return false;
            sym_diff(v, cols_[it->second].first);
        }
        return true;
    }

    size_t rank() const { return cols_.size(); }

  private:
    std::vector<std::pair<SparseVec, SparseVec>> cols_;
    std::unordered_map<uint32_t, size_t> pivots_;
};

}  // namespace floerd::gf2
