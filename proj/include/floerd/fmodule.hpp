#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "floerd/errors.hpp"
#include "floerd/gf2.hpp"

namespace floerd {

// One generator of a bifiltered complex over F2[U,U^-1]: a Maslov grading
// and an (algebraic, Alexander) filtration pair.
struct BasisElement {
    std::string id;
    int gr = 0;
    int i = 0;
    int j = 0;
};

// d(basis[src]) contains U^upower * basis[dst].  Coefficients are in F2,
// and the grading law pins upower = (gr(dst) - gr(src) + 1) / 2.
struct DifferentialEntry {
    uint32_t src = 0;
    uint32_t dst = 0;
    int upower = 0;
};

// A term U^upow * basis[idx] of a chain.
struct UTerm {
    uint32_t idx = 0;
    int upow = 0;
};
using Chain = std::vector<UTerm>;

// Finitely generated reduced complex over F2[U,U^-1].  Immutable after
// construction; all operations return fresh values.
struct BifilteredComplex {
    std::string name;
    std::vector<BasisElement> basis;
    std::vector<DifferentialEntry> diff;

    // Model metadata (not part of the serialized schema): Seifert genus of
    // the underlying knot, and a homogeneous cycle generating the rank-1
    // homology.  Constructors fill these; deserialized complexes recompute
    // on demand.
    std::optional<long long> genus;
    Chain hgen;

    size_t size() const { return basis.size(); }

    int grading_of(const UTerm& t) const { return basis[t.idx].gr - 2 * t.upow; }

    std::unordered_map<std::string, uint32_t> id_index() const {
        std::unordered_map<std::string, uint32_t> m;
        m.reserve(basis.size());
        for (uint32_t k = 0; k < basis.size(); ++k) {
            if (!m.emplace(basis[k].id, k).second)
                throw math_error("duplicate basis id '" + basis[k].id + "' in " + name);
        }
        return m;
    }

    // Out-adjacency grouped by source.
    std::vector<std::vector<std::pair<uint32_t, int>>> out_adjacency() const {
        std::vector<std::vector<std::pair<uint32_t, int>>> adj(basis.size());
        for (const auto& e : diff) adj[e.src].emplace_back(e.dst, e.upower);
        return adj;
    }

    long long max_alexander() const {
        long long m = 0;
        bool first = true;
        for (const auto& b : basis) {
            long long a = static_cast<long long>(b.j) - b.i;
            if (first || a > m) { m = a; first = false; }
        }
        return m;
    }

    long long filtration_width() const {
        if (basis.empty()) return 0;
        long long lo = basis[0].i + basis[0].j, hi = lo;
        for (const auto& b : basis) {
            long long s = static_cast<long long>(b.i) + b.j;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        return hi - lo;
    }
};

struct ValidationReport {
    bool grading_ok = true;       // gr(dst) - 2u = gr(src) - 1 on every entry
    bool filtration_ok = true;    // every entry strictly drops the bifiltration
    bool d_squared_ok = true;     // dd = 0 over F2[U,U^-1]
    bool homology_rank_ok = true; // rank over F2[U,U^-1] equals 1
    long long homology_rank = -1;
    std::vector<std::string> problems;

    bool entries_ok() const { return grading_ok && filtration_ok; }
    bool ok() const { return entries_ok() && d_squared_ok && homology_rank_ok; }
};

namespace detail {

inline bool strictly_below(int it, int jt, int k, int is, int js) {
    int di = it - k, dj = jt - k;
    return di <= is && dj <= js && !(di == is && dj == js);
}

}  // namespace detail

// Rank over F2[U,U^-1] of the homology.  Monomials U^k are homogeneous
// units, so the complex collapses at U=1 to a finite F2 complex on the same
// basis; the rank is |basis| - 2 rank(d at U=1).
inline long long homology_rank_over_laurent(const BifilteredComplex& c) {
    auto adj = c.out_adjacency();
    gf2::Reducer red;
    for (uint32_t x = 0; x < c.basis.size(); ++x) {
        gf2::SparseVec col;
        col.reserve(adj[x].size());
        for (auto& [dst, k] : adj[x]) col.push_back(dst);
        std::sort(col.begin(), col.end());
        if (!col.empty()) red.add(std::move(col));
    }
    return static_cast<long long>(c.basis.size()) - 2 * static_cast<long long>(red.rank());
}

inline ValidationReport validate(const BifilteredComplex& c) {
    ValidationReport rep;
    auto note = [&](const std::string& s) { rep.problems.push_back(s); };

    // id uniqueness
    try {
        c.id_index();
    } catch (const math_error& e) {
        rep.grading_ok = false;
        note(e.what());
    }

    // entry-level laws; duplicates count as failures (not reduced mod 2)
    {
        auto key = [](const DifferentialEntry& e) {
            return std::tuple<uint32_t, uint32_t, int>(e.src, e.dst, e.upower);
        };
        std::vector<DifferentialEntry> sorted = c.diff;
        std::sort(sorted.begin(), sorted.end(),
                  [&](const auto& a, const auto& b) { return key(a) < key(b); });
        for (size_t k = 0; k + 1 < sorted.size(); ++k) {
            if (key(sorted[k]) == key(sorted[k + 1])) {
                rep.grading_ok = false;
                note("duplicate differential entry " + c.basis[sorted[k].src].id + " -> " +
                     c.basis[sorted[k].dst].id);
                break;
            }
        }
    }
    for (const auto& e : c.diff) {
        if (e.src >= c.basis.size() || e.dst >= c.basis.size()) {
            rep.grading_ok = false;
            note("entry references unknown basis index");
            break;
        }
        const auto& s = c.basis[e.src];
        const auto& t = c.basis[e.dst];
        if (e.upower < 0) {
            rep.filtration_ok = false;
            note("negative U power on entry " + s.id + " -> " + t.id);
            break;
        }
        if (t.gr - 2 * e.upower != s.gr - 1) {
            rep.grading_ok = false;
            note("grading law violated on entry " + s.id + " -> " + t.id);
            break;
        }
        if (!detail::strictly_below(t.i, t.j, e.upower, s.i, s.j)) {
            rep.filtration_ok = false;
            note("filtration does not strictly drop on entry " + s.id + " -> " + t.id);
            break;
        }
    }
    if (!rep.entries_ok()) {
        rep.d_squared_ok = rep.homology_rank_ok = false;
        return rep;
    }

    // dd = 0: composite entries must cancel in pairs mod 2
    {
        auto adj = c.out_adjacency();
        std::map<std::pair<uint32_t, int>, int> counts;
        for (uint32_t x = 0; x < c.basis.size() && rep.d_squared_ok; ++x) {
            counts.clear();
            for (auto& [y, k1] : adj[x])
                for (auto& [z, k2] : adj[y]) counts[{z, k1 + k2}]++;
            for (auto& [key, cnt] : counts) {
                if (cnt % 2) {
                    rep.d_squared_ok = false;
                    note("dd != 0 from " + c.basis[x].id + " to " + c.basis[key.first].id);
                    break;
                }
            }
        }
    }

    rep.homology_rank = homology_rank_over_laurent(c);
    if (rep.homology_rank != 1) {
        rep.homology_rank_ok = false;
        note("homology over F2[U,U^-1] has rank " + std::to_string(rep.homology_rank) +
             ", expected 1");
    }
    return rep;
}

// A homogeneous cycle generating the rank-1 homology, found by reducing the
// U=1 collapse: kernel elements not in the image give representatives.
inline Chain generator_cycle(const BifilteredComplex& c) {
    auto adj = c.out_adjacency();
    gf2::AugReducer aug;
    std::vector<gf2::SparseVec> kernel;
    for (uint32_t x = 0; x < c.basis.size(); ++x) {
        gf2::SparseVec col;
        for (auto& [dst, k] : adj[x]) col.push_back(dst);
        std::sort(col.begin(), col.end());
        gf2::SparseVec ker;
        if (!aug.add(std::move(col), {x}, &ker)) kernel.push_back(std::move(ker));
    }
    // aug's stored columns span im(d); a kernel basis vector outside that
    // span represents a nonzero homology class.
    for (auto& v : kernel) {
        if (!aug.in_span(v)) {
            // v is a nonzero homology class; lift to a homogeneous U-chain
            int d0 = c.basis[v[0]].gr & 1 ? 1 : 0;
            Chain out;
            out.reserve(v.size());
            for (uint32_t idx : v) {
                int g = c.basis[idx].gr;
                if (((g - d0) % 2) != 0)
                    throw math_error("generator cycle is not parity homogeneous");
                out.push_back({idx, (g - d0) / 2});
            }
            return out;
        }
    }
    throw math_error("no homology generator found (is the homology rank 0?)");
}

// Verify that a chain is a cycle (used on metadata generators).
inline bool is_cycle(const BifilteredComplex& c, const Chain& chain) {
    auto adj = c.out_adjacency();
    std::map<std::pair<uint32_t, int>, int> acc;
    for (const auto& t : chain)
        for (auto& [dst, k] : adj[t.idx]) acc[{dst, t.upow + k}]++;
    for (auto& [key, cnt] : acc)
        if (cnt % 2) return false;
    return true;
}

inline BifilteredComplex tensor(const BifilteredComplex& a, const BifilteredComplex& b) {
    BifilteredComplex out;
    out.name = a.name + "+" + b.name;
    const size_t nb = b.basis.size();
    out.basis.reserve(a.basis.size() * nb);
    for (const auto& x : a.basis)
        for (const auto& y : b.basis)
            out.basis.push_back({x.id + "|" + y.id, x.gr + y.gr, x.i + y.i, x.j + y.j});
    out.diff.reserve(a.diff.size() * nb + a.basis.size() * b.diff.size());
    // Leibniz rule over F2: d(x@y) = dx@y + x@dy
    for (const auto& e : a.diff)
        for (uint32_t y = 0; y < nb; ++y)
            out.diff.push_back({static_cast<uint32_t>(e.src * nb + y),
                                static_cast<uint32_t>(e.dst * nb + y), e.upower});
    for (uint32_t x = 0; x < a.basis.size(); ++x)
        for (const auto& e : b.diff)
            out.diff.push_back({static_cast<uint32_t>(x * nb + e.src),
                                static_cast<uint32_t>(x * nb + e.dst), e.upower});
    if (a.genus && b.genus) out.genus = *a.genus + *b.genus;
    if (!a.hgen.empty() && !b.hgen.empty()) {
        for (const auto& ta : a.hgen)
            for (const auto& tb : b.hgen)
                out.hgen.push_back({static_cast<uint32_t>(ta.idx * nb + tb.idx),
                                    ta.upow + tb.upow});
    }
    return out;
}

inline BifilteredComplex transpose(const BifilteredComplex& c) {
    BifilteredComplex out = c;
    out.name = "transpose(" + c.name + ")";
    for (auto& b : out.basis) std::swap(b.i, b.j);
    return out;
}

inline BifilteredComplex unknot_complex() {
    BifilteredComplex c;
    c.name = "unknot";
    c.basis.push_back({"o", 0, 0, 0});
    c.genus = 0;
    c.hgen = {{0, 0}};
    return c;
}

// --- canonical JSON serialization ------------------------------------------

inline nlohmann::json to_json(const BifilteredComplex& c) {
    std::vector<size_t> order(c.basis.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return c.basis[a].id < c.basis[b].id; });

    nlohmann::json jb = nlohmann::json::array();
    for (size_t k : order) {
        const auto& b = c.basis[k];
        jb.push_back({{"id", b.id}, {"gr", b.gr}, {"i", b.i}, {"j", b.j}});
    }
    std::vector<std::tuple<std::string, std::string, int>> entries;
    entries.reserve(c.diff.size());
    for (const auto& e : c.diff)
        entries.emplace_back(c.basis[e.src].id, c.basis[e.dst].id, e.upower);
    std::sort(entries.begin(), entries.end());
    nlohmann::json jd = nlohmann::json::array();
    for (auto& [s, d, u] : entries)
        jd.push_back({{"src", s}, {"dst", d}, {"u", u}});
    return {{"name", c.name}, {"basis", jb}, {"diff", jd}};
}

inline std::string serialize(const BifilteredComplex& c) {
    return to_json(c).dump(2) + "\n";
}

inline BifilteredComplex from_json(const nlohmann::json& j) {
    BifilteredComplex c;
    c.name = j.at("name").get<std::string>();
    for (const auto& jb : j.at("basis"))
        c.basis.push_back({jb.at("id").get<std::string>(), jb.at("gr").get<int>(),
                           jb.at("i").get<int>(), jb.at("j").get<int>()});
    auto index = c.id_index();
    for (const auto& jd : j.at("diff")) {
        auto s = index.find(jd.at("src").get<std::string>());
        auto d = index.find(jd.at("dst").get<std::string>());
        if (s == index.end() || d == index.end())
            throw math_error("differential entry references unknown id");
        c.diff.push_back({s->second, d->second, jd.at("u").get<int>()});
    }
    return c;
}

inline BifilteredComplex deserialize(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return from_json(j);
}

}  // namespace floerd
