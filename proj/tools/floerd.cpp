// floerd: exact d-invariants of large surgeries on model knot Floer
// complexes, and the metabolizer obstruction built on them.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "floerd/knotexpr.hpp"
#include "floerd/linkalg.hpp"
#include "floerd/report.hpp"
#include "floerd/surgery.hpp"

namespace {

long long max_generators_from_env() {
    const char* env = std::getenv("FLOERD_MAX_GENERATORS");
    if (!env) return 500000;
    try {
        return std::stoll(env);
    } catch (const std::exception&) {
        throw floerd::math_error("FLOERD_MAX_GENERATORS is not an integer");
    }
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw floerd::io_error("cannot open '" + out_path + "' for writing");
    f << text;
    if (!f) throw floerd::io_error("write to '" + out_path + "' failed");
}

std::vector<floerd::GroupElement> parse_generators(const std::string& text, long long p) {
    std::vector<floerd::GroupElement> gens;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        floerd::GroupElement g;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                long long v = std::stoll(cell);
                g.push_back(((v % (p * p)) + p * p) % (p * p));
            } catch (const std::exception&) {
                throw floerd::math_error("cannot parse generator entry '" + cell + "'");
            }
        }
        if (!g.empty()) gens.push_back(std::move(g));
    }
    if (gens.empty()) throw floerd::math_error("no generators given");
    for (const auto& g : gens)
        if (g.size() != gens[0].size())
            throw floerd::math_error("generators have inconsistent lengths");
    return gens;
}

std::string dbar_json(const floerd::DBarTable& t) {
    nlohmann::json j;
    j["p"] = t.p;
    j["q"] = t.q;
    j["d0"] = t.d0.str();
    nlohmann::json dbar = nlohmann::json::object();
    for (auto& [k, v] : t.dbar) dbar[std::to_string(k)] = v.str();
    j["dbar"] = dbar;
    nlohmann::json rows = nlohmann::json::array();
    for (auto& [m, d] : t.d_all)
        rows.push_back({{"m", m}, {"d", d.str()}, {"dbar", (d - t.d0).str()}});
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string dbar_csv(const floerd::DBarTable& t) {
    std::ostringstream out;
    out << "m,d,dbar\n";
    for (auto& [m, d] : t.d_all) out << m << "," << d.str() << "," << (d - t.d0).str() << "\n";
    return out.str();
}

std::string dbar_text(const floerd::DBarTable& t) {
    std::ostringstream out;
    out << "d-invariants of S^3_" << t.q << " (p = " << t.p << ")\n";
    out << "  " << std::setw(4) << "m" << std::setw(10) << "d(s_m)" << std::setw(10) << "dbar"
        << "\n";
    for (auto& [m, d] : t.d_all)
        out << "  " << std::setw(4) << m << std::setw(10) << d.pretty() << std::setw(10)
            << (d - t.d0).pretty() << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact knot Floer d-invariants and concordance obstructions"};
    app.require_subcommand(1);

    std::string knot_expr, out_path, format = "json", form_signs, gens_text, dbar_path;
    long long q = 0, m = 0, p = 0;
    int n = 1, window = 0;
    bool all_m = false, bounds_only = false;

    auto* cmd_d = app.add_subcommand("d", "d(S^3_q(K), s_m) for one Spin^c label");
    cmd_d->add_option("--knot", knot_expr, "knot expression")->required();
    cmd_d->add_option("--q", q, "surgery coefficient")->required();
    cmd_d->add_option("--m", m, "Spin^c label")->required();
    cmd_d->add_option("--window", window, "truncation window override");
    cmd_d->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_dbar = app.add_subcommand("dbar", "dbar table of S^3_{p^2}(K)");
    cmd_dbar->add_option("--knot", knot_expr, "knot expression")->required();
    cmd_dbar->add_option("--p", p, "prime p (surgery p^2)")->required();
    cmd_dbar->add_flag("--all-m", all_m, "compute every label 0..p(p-1)/2");
    cmd_dbar->add_option("--window", window, "truncation window override");
    cmd_dbar->add_option("--format", format, "json|csv|text");
    cmd_dbar->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_bounds = app.add_subcommand("bounds", "symbolic d bounds for lp:<p>");
    cmd_bounds->add_option("--p", p, "prime p = 3 mod 4")->required();
    cmd_bounds->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_metab = app.add_subcommand("metab", "metabolizer algebra on (Z/p^2)^n");
    auto* cmd_enum = cmd_metab->add_subcommand("enumerate", "list metabolizers");
    cmd_enum->add_option("--p", p, "odd prime")->required();
    cmd_enum->add_option("--n", n, "rank")->required();
    cmd_enum->add_option("--form", form_signs, "diagonal signs, e.g. ++")->required();
    cmd_enum->add_option("--out", out_path, "output file (default stdout)");
    auto* cmd_sv = cmd_metab->add_subcommand("special-vector", "Theorem A.2 element");
    cmd_sv->add_option("--p", p, "odd prime")->required();
    cmd_sv->add_option("--gens", gens_text, "generators, e.g. \"1,3\" or \"1,0;0,3\"")
        ->required();
    cmd_sv->add_option("--out", out_path, "output file (default stdout)");
    auto* cmd_verify = cmd_metab->add_subcommand("verify", "consistency against a dbar table");
    cmd_verify->add_option("--p", p, "odd prime")->required();
    cmd_verify->add_option("--n", n, "rank")->required();
    cmd_verify->add_option("--dbar", dbar_path, "dbar JSON file")->required();
    cmd_verify->add_option("--form", form_signs, "diagonal signs (default all +)");
    cmd_verify->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_obstruct = app.add_subcommand("obstruct", "end-to-end obstruction report");
    cmd_obstruct->add_option("--p", p, "odd prime")->required();
    cmd_obstruct->add_option("--knot", knot_expr, "knot expression (default lp:<p>)");
    cmd_obstruct->add_flag("--bounds-only", bounds_only, "use Theorem bounds, no tensor");
    cmd_obstruct->add_option("--window", window, "truncation window override");
    cmd_obstruct->add_option("--format", format, "json|csv|text");
    cmd_obstruct->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const long long cap = max_generators_from_env();
        if (cmd_d->parsed()) {
            auto c = floerd::parse_knot_expr(knot_expr, {cap});
            floerd::DOptions opt;
            opt.window = window;
            auto d = floerd::d_invariant(c, q, m, std::nullopt, opt);
            nlohmann::json j{{"q", q}, {"m", m}, {"d", d.str()}};
            write_output(j.dump(2) + "\n", out_path);
        } else if (cmd_dbar->parsed()) {
            auto c = floerd::parse_knot_expr(knot_expr, {cap});
            floerd::DOptions opt;
            opt.window = window;
            auto t = floerd::dbar_table(c, p, all_m, opt);
            if (format == "json") write_output(dbar_json(t), out_path);
            else if (format == "csv") write_output(dbar_csv(t), out_path);
            else if (format == "text") write_output(dbar_text(t), out_path);
            else throw floerd::math_error("unknown format '" + format + "'");
        } else if (cmd_bounds->parsed()) {
            auto tb = floerd::theorem_bounds(p);
            nlohmann::json j{{"p", p},
                             {"d0_upper", tb.d0_upper.str()},
                             {"dsp", tb.dsp_value.str()},
                             {"min_ij_grading0", tb.min_ij_grading0},
                             {"special_cycle", {tb.special_cycle.first, tb.special_cycle.second}},
                             {"provenance", "paper-claimed bound"}};
            write_output(j.dump(2) + "\n", out_path);
        } else if (cmd_enum->parsed()) {
            auto metabs = floerd::enumerate_metabolizers(
                p, n, floerd::LinkingForm::from_signs(form_signs));
            nlohmann::json j = nlohmann::json::array();
            for (const auto& M : metabs)
                j.push_back({{"gens", M.gens}, {"order", M.elements.size()}});
            write_output(j.dump(2) + "\n", out_path);
        } else if (cmd_sv->parsed()) {
            auto gens = parse_generators(gens_text, p);
            auto M = floerd::subgroup_from_generators(p, static_cast<int>(gens[0].size()), gens);
            auto sv = floerd::special_vector(M);
            nlohmann::json j{{"p", p},
                             {"z", sv.z},
                             {"column_perm", sv.column_perm},
                             {"generators", sv.generator_count},
                             {"entries_equal_p", sv.entries_equal_p}};
            write_output(j.dump(2) + "\n", out_path);
        } else if (cmd_verify->parsed()) {
            std::ifstream f(dbar_path);
            if (!f) throw floerd::io_error("cannot open '" + dbar_path + "'");
            nlohmann::json jin;
            f >> jin;
            std::map<long long, floerd::rational> dbar;
            for (auto& [key, val] : jin.at("dbar").items())
                dbar[std::stoll(key)] = floerd::rational::parse(val.get<std::string>());
            if (form_signs.empty()) form_signs = std::string(n, '+');
            auto rep = floerd::verify_appendix_theorem(
                p, n, floerd::LinkingForm::from_signs(form_signs), &dbar);
            nlohmann::json j;
            j["p"] = rep.p;
            j["n"] = rep.n;
            j["verdict"] = rep.verdict;
            nlohmann::json mets = nlohmann::json::array();
            for (const auto& v : rep.verdicts)
                mets.push_back({{"gens", v.gens},
                                {"relation_rank", v.relation_rank},
                                {"forces_all_zero", v.forces_all_zero},
                                {"consistent", v.consistent}});
            j["metabolizers"] = mets;
            write_output(j.dump(2) + "\n", out_path);
        } else if (cmd_obstruct->parsed()) {
            floerd::ObstructionOptions opt;
            if (!knot_expr.empty()) opt.knot_expr = knot_expr;
            opt.bounds_only = bounds_only;
            opt.window = window;
            opt.max_generators = cap;
            auto rep = floerd::obstruct(p, opt);
            write_output(floerd::emit(rep, format), out_path);
        }
    } catch (const floerd::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
