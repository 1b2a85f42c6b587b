#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "floerd/knotexpr.hpp"
#include "floerd/linkalg.hpp"
#include "floerd/surgery.hpp"

namespace floerd {

inline constexpr const char* kReportSchema = "floerd-obstruction-report/1";
inline constexpr const char* kDoubleModelVersion = "dtref-staircase+3boxes/1";

struct ObstructionOptions {
    std::optional<std::string> knot_expr;  // default: lp:<p>
    bool bounds_only = false;
    int window = 0;  // 0 = automatic
    long long max_generators = 500000;
};

struct ObstructionReport {
    long long p = 0;
    std::string knot;
    std::string mode;  // "full" or "bounds-only"
    std::string verdict;
    // full mode
    std::optional<DBarTable> table;
    // bounds-only mode
    std::optional<TheoremBounds> bounds;
    AppendixReport metab;
    // provenance
    int window_used = 0;
    bool stability_ok = false;
    bool validated = false;
    std::string value_provenance;  // "machine-verified" or "paper-claimed bound"
};

namespace reportdetail {

// e_k in the Q-span of the relation rows?
inline bool relations_force_index(const std::vector<std::vector<long long>>& rows,
                                  long long q, long long k) {
    if (rows.empty()) return false;
    long long base = linkdetail::zrank(rows);
    auto with = rows;
    std::vector<long long> ek(q, 0);
    ek[k - 1] = 1;
    with.push_back(std::move(ek));
    return linkdetail::zrank(with) == base;
}

}  // namespace reportdetail

// The Theorem "independence criterion" pipeline for one knot: assemble the
// dbar table of S^3_{p^2}(K), enumerate the metabolizers of Z/p^2, and ask
// whether any of them is consistent with the table.
inline ObstructionReport obstruct(long long p, ObstructionOptions opt = {}) {
    if (!is_prime(p) || p % 2 == 0)
        throw math_error("obstruct requires an odd prime p, got " + std::to_string(p));
    ObstructionReport rep;
    rep.p = p;

    bool default_lp = !opt.knot_expr.has_value();
    if (default_lp && p % 4 != 3)
        throw math_error("obstruct: the K_p family needs p = 3 mod 4; pass --knot for others");
    bool infeasible = default_lp && lp_projected_generators(p) > opt.max_generators;
    if (opt.bounds_only || infeasible) {
        if (!default_lp)
            throw math_error("obstruct: bounds-only mode applies to the default lp:<p> family");
        rep.knot = "lp(" + std::to_string(p) + ")";
        rep.mode = "bounds-only";
        rep.bounds = theorem_bounds(p);
        rep.value_provenance = "paper-claimed bound";
        // dbar_1 >= 2 > 0; a metabolizer survives only if its relations do
        // not force dbar_1 = 0
        auto metabs = enumerate_metabolizers(p, 1, LinkingForm::from_signs("+"));
        rep.metab.p = p;
        rep.metab.n = 1;
        rep.metab.q = (p - 1) / 2;
        rep.metab.some_dbar_nonzero = true;
        bool any_consistent = false;
        for (const auto& M : metabs) {
            MetabolizerVerdict v;
            v.gens = M.gens;
            std::vector<std::vector<long long>> rows;
            for (const auto& m : p_torsion(M)) {
                auto alpha = psi(m, p);
                if (std::any_of(alpha.begin(), alpha.end(), [](long long x) { return x != 0; }))
                    rows.push_back(std::move(alpha));
            }
            v.relation_rank = rows.empty() ? 0 : linkdetail::zrank(rows);
            v.forces_all_zero = (v.relation_rank == rep.metab.q);
            v.consistent = !reportdetail::relations_force_index(rows, rep.metab.q, 1);
            any_consistent = any_consistent || v.consistent;
            rep.metab.verdicts.push_back(std::move(v));
        }
        rep.metab.verdict = any_consistent ? "unobstructed" : "obstructed";
        rep.verdict = rep.metab.verdict;
        return rep;
    }

    std::string expr = opt.knot_expr.value_or("lp:" + std::to_string(p));
    BifilteredComplex c = parse_knot_expr(expr, {opt.max_generators});
    rep.knot = c.name;
    rep.mode = "full";
    rep.value_provenance = "machine-verified";
    auto vrep = validate(c);
    if (!vrep.ok())
        throw math_error("obstruct: model fails validation: " +
                         (vrep.problems.empty() ? std::string("unknown") : vrep.problems[0]));
    rep.validated = true;

    DOptions dopt;
    dopt.window = opt.window;
    dopt.validate_input = false;
    rep.table = dbar_table(c, p, /*all_labels=*/false, dopt);
    rep.window_used = opt.window > 0 ? opt.window : detail::safe_window(c, 0);
    rep.stability_ok = true;  // d_invariant throws on instability

    std::map<long long, rational> dbar_map;
    for (auto& [k, v] : rep.table->dbar) dbar_map[k] = v;
    rep.metab = verify_appendix_theorem(p, 1, LinkingForm::from_signs("+"), &dbar_map);
    rep.verdict = rep.metab.verdict;
    return rep;
}

// --- emission ---------------------------------------------------------------

inline nlohmann::json report_to_json(const ObstructionReport& rep) {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["p"] = rep.p;
    j["knot"] = rep.knot;
    j["mode"] = rep.mode;
    j["verdict"] = rep.verdict;
    if (rep.table) {
        j["q"] = rep.table->q;
        j["d0"] = rep.table->d0.str();
        nlohmann::json dbar = nlohmann::json::object();
        for (auto& [k, v] : rep.table->dbar) dbar[std::to_string(k)] = v.str();
        j["dbar"] = dbar;
        nlohmann::json dall = nlohmann::json::object();
        for (auto& [m, v] : rep.table->d_all) dall[std::to_string(m)] = v.str();
        j["d"] = dall;
    }
    if (rep.bounds) {
        j["bounds"] = {{"d0_upper", rep.bounds->d0_upper.str()},
                       {"dsp", rep.bounds->dsp_value.str()},
                       {"dbar_lower", "2/1"},
                       {"min_ij_grading0", rep.bounds->min_ij_grading0}};
    }
    nlohmann::json mets = nlohmann::json::array();
    for (const auto& v : rep.metab.verdicts) {
        nlohmann::json m;
        m["gens"] = v.gens;
        m["relation_rank"] = v.relation_rank;
        m["forces_all_zero"] = v.forces_all_zero;
        m["consistent"] = v.consistent;
        mets.push_back(std::move(m));
    }
    j["metabolizers"] = mets;
    j["provenance"] = {{"values", rep.value_provenance},
                       {"window", rep.window_used},
                       {"stability_checked", rep.stability_ok},
                       {"validated", rep.validated},
                       {"double_model", kDoubleModelVersion}};
    return j;
}

inline std::string emit_json(const ObstructionReport& rep) {
    return report_to_json(rep).dump(2) + "\n";
}

inline std::string emit_csv(const ObstructionReport& rep) {
    std::ostringstream out;
    out << "m,d,dbar\n";
    if (rep.table) {
        for (auto& [m, d] : rep.table->d_all) {
            rational db = d - rep.table->d0;
            out << m << "," << d.str() << "," << db.str() << "\n";
        }
    } else if (rep.bounds) {
        out << 0 << ",<=" << rep.bounds->d0_upper.str() << ",0/1\n";
        out << rep.p << "," << rep.bounds->dsp_value.str() << ",>=2/1\n";
    }
    return out.str();
}

inline std::string emit_text(const ObstructionReport& rep) {
    std::ostringstream out;
    out << "obstruction report for " << rep.knot << " (p = " << rep.p << ", " << rep.mode
        << ")\n";
    if (rep.table) {
        out << "  d-invariants of S^3_" << rep.table->q << ":\n";
        out << "    " << std::setw(4) << "m" << std::setw(10) << "d(s_m)" << std::setw(10)
            << "dbar" << "\n";
        for (auto& [m, d] : rep.table->d_all) {
            rational db = d - rep.table->d0;
            out << "    " << std::setw(4) << m << std::setw(10) << d.pretty() << std::setw(10)
                << db.pretty() << "\n";
        }
    }
    if (rep.bounds) {
        out << "  paper-claimed: d(s_0) <= " << rep.bounds->d0_upper.pretty() << ", d(s_"
            << rep.p << ") = " << rep.bounds->dsp_value.pretty() << ", dbar >= 2\n";
    }
    out << "  metabolizers of Z/" << rep.p * rep.p << ": " << rep.metab.verdicts.size() << "\n";
    for (const auto& v : rep.metab.verdicts) {
        out << "    rank " << v.relation_rank << (v.forces_all_zero ? " (forces dbar = 0)" : "")
            << (v.consistent ? " consistent" : " inconsistent") << "\n";
    }
    out << "verdict: " << rep.verdict << "\n";
    return out.str();
}

inline std::string emit(const ObstructionReport& rep, const std::string& format) {
    if (format == "json") return emit_json(rep);
    if (format == "csv") return emit_csv(rep);
    if (format == "text") return emit_text(rep);
    throw math_error("unknown report format '" + format + "'");
}

}  // namespace floerd
