#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wha/assembly.hpp"
#include "wha/frt_quotient.hpp"
#include "wha/graph.hpp"
#include "wha/grouplike.hpp"
#include "wha/json_io.hpp"
#include "wha/temperley_lieb.hpp"
#include "wha/wba_axioms.hpp"

namespace wha::cli {

inline constexpr const char* kOutputDirEnv = "WHA_OUTPUT_DIR";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int r = 4;
    int root_exponent = 1;
    std::optional<int> max_degree;
    std::string format = "text";
    std::string out;
    std::optional<unsigned> seed;
    bool perturb = false;

    int default_max_degree() const { return 2 * (r - 2) + 2; }
    int max_degree_or(int fallback) const { return max_degree ? *max_degree : fallback; }

    void validate() const {
        if (r < 3) throw UsageError("r must be at least 3");
        if (format != "text" && format != "json") throw UsageError("format must be text or json");
        if (max_degree && *max_degree < 0) throw UsageError("max degree must be non-negative");
        field_for_level(r, root_exponent);
    }
};

struct CommandResult {
    bool ok = true;
    std::string text;
    json data;

    std::string render(const std::string& format) const { return format == "json" ? dump(data) : text; }
};

inline std::string show(const CycloNumber& x) { return x.to_string() + "  ~ " + x.to_decimal(30); }

inline json field_json(const LevelField& L) {
    return {{"r", L.r}, {"root_exponent", L.root_exponent}, {"N", L.F->N}, {"q_half", "A"}};
}

inline std::string path_text(const PathSpace& S, int m, int i) {
    std::ostringstream os;
    os << "(";
    auto& vs = S.path(m, i).vertices;
    for (std::size_t t = 0; t < vs.size(); ++t) os << (t ? "," : "") << vs[t];
    os << ")";
    return os.str();
}

inline std::string element_text(const WbaElement& x, const PathSpace& S) {
    std::ostringstream os;
    for (auto& [k, c] : x.terms())
        os << "  [" << path_text(S, k.m, k.p) << "|" << path_text(S, k.m, k.q) << "]_" << k.m << "  " << show(c) << "\n";
    if (x.is_zero()) os << "  0\n";
    return os.str();
}

inline std::string rmatrix_text(const RMatrix& R) {
    std::ostringstream os;
    auto p3 = [](const RMatrix::Path3& p) {
        return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]) + ")";
    };
    for (auto& [k, c] : R.entries) os << "  R" << p3(k.first) << p3(k.second) << " = " << show(c) << "\n";
    return os.str();
}

inline std::string status(bool ok) { return ok ? "PASS" : "FAIL"; }

inline CommandResult cmd_graph(const RunConfig& cfg) {
    cfg.validate();
    auto g = sl2_dimension_graph(cfg.r);
    CommandResult res;
    res.data = to_json(g);
    std::ostringstream os;
    os << "dimension graph r=" << cfg.r << ": " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
    for (auto& e : g.edges()) os << "  edge " << e.id << ": " << e.source << " -> " << e.target << "\n";
    res.text = os.str();
    return res;
}

enum class RMatrixMode { derive, closed_form, compare };

inline CommandResult cmd_rmatrix(const RunConfig& cfg, RMatrixMode mode) {
    cfg.validate();
    auto L = field_for_level(cfg.r, cfg.root_exponent);
    TemperleyLieb T(L);
    CommandResult res;
    std::ostringstream os;
    if (mode == RMatrixMode::derive || mode == RMatrixMode::closed_form) {
        RMatrix R = mode == RMatrixMode::derive ? T.derive_r_matrix() : closed_form_r(L);
        res.data = to_json(R);
        res.data["field"] = field_json(L);
        os << (mode == RMatrixMode::derive ? "derived" : "closed-form") << " R-matrix, r=" << cfg.r << ", "
           << R.entries.size() << " nonzero entries\n"
           << rmatrix_text(R);
    } else {
        RMatrix D = T.derive_r_matrix(), C = closed_form_r(L);
        std::set<std::pair<RMatrix::Path3, RMatrix::Path3>> keys;
        for (auto& [k, v] : D.entries) keys.insert(k);
        for (auto& [k, v] : C.entries) keys.insert(k);
        json diffs = json::array();
        std::optional<CycloNumber> ratio;
        bool constant_ratio = true;
        for (auto& k : keys) {
            CycloNumber d = D(k.first, k.second), c = C(k.first, k.second);
            if (d == c) continue;
            diffs.push_back({{"p", k.first}, {"q", k.second}, {"derived", to_json(d)}, {"closed_form", to_json(c)}});
            if (c.is_zero() || d.is_zero()) constant_ratio = false;
            else {
                CycloNumber q = d / c;
                if (ratio && !(*ratio == q)) constant_ratio = false;
                ratio = q;
            }
        }
        res.ok = diffs.empty();
        res.data = {{"r", cfg.r}, {"field", field_json(L)}, {"match", res.ok}, {"differences", diffs}};
        if (res.ok) os << "EXACT MATCH (" << D.entries.size() << " entries)\n";
        else {
            os << "MISMATCH: " << diffs.size() << " of " << keys.size() << " entries differ\n";
            if (constant_ratio && ratio && diffs.size() == keys.size()) {
                os << "  derived = c * closed form for every entry, c = " << show(*ratio) << "\n";
                res.data["global_ratio"] = to_json(*ratio);
            }
        }
    }
    res.text = os.str();
    return res;
}

/// mask of a random digraph on 3 vertices drawn from the seed
inline DimensionGraph random_digraph(unsigned seed, int n = 3) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(0.5);
    DimensionGraph g(n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (coin(rng)) g.add_edge(s, t);
    return g;
}

inline CommandResult cmd_check(const RunConfig& cfg, const std::string& which) {
    cfg.validate();
    CommandResult res;
    std::ostringstream os;
    if (cfg.perturb && which != "wba-axioms" && which != "ybe")
        throw UsageError("perturbation is only available for wba-axioms and ybe");
    if (which == "wba-axioms") {
        DimensionGraph g = cfg.seed ? random_digraph(*cfg.seed) : sl2_dimension_graph(cfg.r);
        int cap = cfg.max_degree_or(cfg.seed ? 3 : 4);
        HgAxiomChecker checker(g, cap);
        if (cfg.perturb) checker.corrupt_product({0, 0, 0}, {0, 0, 0});
        auto rep = checker.run();
        res.ok = rep.ok();
        os << "WBA axioms for H[G], " << (cfg.seed ? "random digraph seed " + std::to_string(*cfg.seed) : "sl2 graph r=" + std::to_string(cfg.r))
           << ", degree cap " << cap << (cfg.perturb ? ", product [0|0]_0 [0|0]_0 corrupted" : "") << "\n"
           << rep.summary();
        res.data = {{"check", which}, {"graph", to_json(g)}, {"cap", cap}, {"perturbed", cfg.perturb}, {"ok", res.ok},
                    {"axioms", to_json(rep)}};
    } else if (which == "ybe") {
        auto L = field_for_level(cfg.r, cfg.root_exponent);
        auto g = sl2_dimension_graph(cfg.r);
        RMatrix R = TemperleyLieb(L).derive_r_matrix();
        std::string note;
        if (cfg.perturb) {
            // shift the first off-diagonal entry, or the first entry when there is none
            auto it = R.entries.begin();
            for (auto jt = R.entries.begin(); jt != R.entries.end(); ++jt)
                if (jt->first.first != jt->first.second) { it = jt; break; }
            auto key = it->first;
            R.set(key.first, key.second, it->second + L.one());
            note = ", entry (" + std::to_string(key.first[0]) + "," + std::to_string(key.first[1]) + "," +
                   std::to_string(key.first[2]) + ")(" + std::to_string(key.second[0]) + "," +
                   std::to_string(key.second[1]) + "," + std::to_string(key.second[2]) + ") shifted by 1";
        }
        auto rep = check_star_triangular(R, g);
        res.ok = rep.ok;
        os << "star-triangularity R1 R2 R1 = R2 R1 R2 on paths of length 3, r=" << cfg.r << note << ": "
           << status(rep.ok) << "\n";
        if (!rep.ok) os << "  " << rep.nonzero_entries << " nonzero residual entries; witness " << rep.witness << "\n";
        res.data = {{"check", which}, {"r", cfg.r}, {"perturbed", cfg.perturb}, {"ok", rep.ok},
                    {"nonzero_entries", rep.nonzero_entries}};
        if (!rep.ok) res.data["witness"] = rep.witness;
    } else if (which == "coideal") {
        auto L = field_for_level(cfg.r, cfg.root_exponent);
        auto g = sl2_dimension_graph(cfg.r);
        int cap = cfg.max_degree_or(4);
        PathWba H(g, cap, L.F);
        FrtQuotient Q(g, frt_relations(H, TemperleyLieb(L).derive_r_matrix()), cap, L.F);
        auto rep = Q.check_coideal();
        res.ok = rep.counit_ok && rep.coproduct_ok;
        os << "FRT ideal is a coideal, r=" << cfg.r << ", " << rep.generators << " generators\n"
           << "  " << status(rep.counit_ok) << " generators lie in ker(eps)\n"
           << "  " << status(rep.coproduct_ok) << " Delta(generators) lie in I (x) H + H (x) I\n";
        res.data = {{"check", which}, {"r", cfg.r}, {"generators", rep.generators}, {"counit_ok", rep.counit_ok},
                    {"coproduct_ok", rep.coproduct_ok}, {"ok", res.ok}};
    } else if (which == "rform") {
        auto L = field_for_level(cfg.r, cfg.root_exponent);
        auto g = sl2_dimension_graph(cfg.r);
        int deg = cfg.max_degree_or(2);
        PathWba H(g, 2 * deg, L.F);
        RMatrix R = TemperleyLieb(L).derive_r_matrix();
        FrtQuotient Q(g, frt_relations(H, R), 2 * deg, L.F);
        RForm rf(Q.space(), R), rb(Q.space(), invert_r_matrix(R, g), true);
        auto rep = check_rform(Q, rf, rb, deg);
        res.ok = rep.ok();
        AxiomReport ar;
        ar.checks = rep.all();
        os << "universal r-form laws on basis pairs of degree <= " << deg << ", r=" << cfg.r << "\n" << ar.summary();
        res.data = {{"check", which}, {"r", cfg.r}, {"max_degree", deg}, {"ok", res.ok}, {"laws", to_json(ar)}};
    } else {
        throw UsageError("unknown check '" + which + "' (wba-axioms | ybe | coideal | rform)");
    }
    res.text = os.str();
    return res;
}

struct QuotientRow {
    int m = 0;
    long long ambient = 0, ideal_rank = 0, dim = 0, predicted = 0;
    bool match() const { return dim == predicted; }
};

inline std::vector<QuotientRow> quotient_rows(const FrtQuotient& Q, const FusionOracle& o, int max_degree) {
    std::vector<QuotientRow> rows;
    for (int m = 0; m <= max_degree; ++m)
        rows.push_back({m, Q.ambient_dim(m), Q.ideal_rank(m), Q.dim(m), o.degree_dims[m]});
    return rows;
}

inline CommandResult cmd_quotient(const RunConfig& cfg) {
    cfg.validate();
    auto L = field_for_level(cfg.r, cfg.root_exponent);
    auto g = sl2_dimension_graph(cfg.r);
    int M = cfg.max_degree_or(cfg.default_max_degree());
    PathWba H(g, M, L.F);
    FrtQuotient Q(g, frt_relations(H, TemperleyLieb(L).derive_r_matrix()), M, L.F);
    auto o = fusion_oracle(sl2_fusion_data(cfg.r), g, M);
    CommandResult res;
    std::ostringstream os;
    os << "graded quotient H[G,E], r=" << cfg.r << "\n  m  ambient  ideal_rank  quotient_dim  fusion_prediction  match\n";
    json rows = json::array();
    for (auto& row : quotient_rows(Q, o, M)) {
        res.ok = res.ok && row.match();
        os << "  " << row.m << "  " << row.ambient << "  " << row.ideal_rank << "  " << row.dim << "  " << row.predicted << "  "
           << (row.match() ? "yes" : "NO") << "\n";
        rows.push_back({{"m", row.m}, {"ambient", row.ambient}, {"ideal_rank", row.ideal_rank}, {"quotient_dim", row.dim},
                        {"prediction", row.predicted}, {"match", row.match()}});
    }
    res.data = {{"r", cfg.r}, {"field", field_json(L)}, {"rows", rows}, {"ok", res.ok}};
    res.text = os.str();
    return res;
}

inline json certificate_json(const GroupLikeCertificate& c) {
    return {{"right_grouplike", c.right_ok()}, {"left_grouplike", c.left_ok()}, {"central", c.central()},
            {"centrality_checked", c.centrality_checked}, {"x_fixed", c.x_fixed()}};
}

inline std::string certificate_text(const GroupLikeCertificate& c) {
    std::ostringstream os;
    os << "  " << status(c.right_residual.is_zero()) << " Delta g = g1' (x) g1''\n"
       << "  " << status(c.left_residual.is_zero()) << " Delta g = 1'g (x) 1''g\n"
       << "  " << status(c.eps_s_residual.is_zero()) << " eps_s(g) = 1\n"
       << "  " << status(c.eps_t_residual.is_zero()) << " eps_t(g) = 1\n"
       << "  " << status(c.x_fixed()) << " X(g) = g\n"
       << "  " << status(c.central()) << " central against " << c.centrality_checked << " monomials of degree <= 1";
    if (!c.central()) os << " (" << c.centrality_failures.size() << " fail)";
    os << "\n";
    return os.str();
}

enum class GrouplikeMode { verify_closed_form, solve };

inline CommandResult cmd_grouplike(const RunConfig& cfg, GrouplikeMode mode, int degree) {
    cfg.validate();
    auto L = field_for_level(cfg.r, cfg.root_exponent);
    auto g = sl2_dimension_graph(cfg.r);
    RMatrix R = TemperleyLieb(L).derive_r_matrix();
    CommandResult res;
    std::ostringstream os;
    if (mode == GrouplikeMode::verify_closed_form) {
        int cap = 3;
        PathWba H(g, cap, L.F);
        FrtQuotient Q(g, frt_relations(H, R), cap, L.F);
        auto printed = verify_grouplike(Q, grouplike_g2(H, L));
        auto normal = verify_grouplike(Q, grouplike_g2_normalized(H, L));
        res.ok = printed.grouplike() && printed.x_fixed() && normal.grouplike() && normal.x_fixed() && normal.central();
        os << "degree-2 group-like, r=" << cfg.r << "\nprinted closed form (weights alpha_j alpha_l):\n"
           << certificate_text(printed) << "central representative (weights c_j [j+1]/[l+1]):\n" << certificate_text(normal)
           << "normal form of the central representative:\n" << element_text(normal.element, Q.space());
        res.data = {{"r", cfg.r}, {"field", field_json(L)}, {"printed", certificate_json(printed)},
                    {"normalized", certificate_json(normal)}, {"g2", to_json(normal.element, Q.space())}, {"ok", res.ok}};
    } else {
        if (degree < 0) throw UsageError("degree must be non-negative");
        int cap = degree + 1;
        PathWba H(g, cap, L.F);
        FrtQuotient Q(g, frt_relations(H, R), cap, L.F);
        RForm rf(Q.space(), R);
        auto sol = grouplike_solve(Q, degree, &rf);
        res.ok = sol.status != GroupLikeSolution::Status::underdetermined;
        os << "homogeneous group-likes of degree " << degree << ", r=" << cfg.r << ": " << to_string(sol.status);
        if (!sol.note.empty()) os << " (" << sol.note << ")";
        os << "\n";
        json sols = json::array();
        std::optional<WbaElement> power;
        if (degree % 2 == 0 && degree >= 2) {
            WbaElement g2 = Q.reduce(grouplike_g2_normalized(H, L));
            power = g2;
            for (int k = 2; k < degree; k += 2) power = Q.multiply(*power, g2);
        }
        for (auto& s : sol.solutions) {
            bool eq = power && s == *power;
            os << "solution" << (power ? (eq ? " (equals g2^" + std::to_string(degree / 2) + ")" : " (differs from g2^" + std::to_string(degree / 2) + ")") : "")
               << ":\n" << element_text(s, Q.space());
            sols.push_back({{"element", to_json(s, Q.space())}, {"equals_g2_power", eq}});
        }
        res.data = {{"r", cfg.r}, {"field", field_json(L)}, {"degree", degree}, {"status", to_string(sol.status)},
                    {"linear_nullity", sol.linear_nullity}, {"solutions", sols}, {"ok", res.ok}};
    }
    res.text = os.str();
    return res;
}

struct AssemblyRun {
    AssembledWha wha;
    AxiomReport axioms;
    AntipodeResult antipode;
    FusionOracle oracle;
    WbaElement g2;
    bool ok() const {
        return axioms.ok() && antipode.exists && antipode.unique && antipode.checks.ok() && wha.dim() == oracle.total;
    }
};

inline AssemblyRun run_assembly(const RunConfig& cfg) {
    cfg.validate();
    auto L = field_for_level(cfg.r, cfg.root_exponent);
    auto g = sl2_dimension_graph(cfg.r);
    int M = cfg.max_degree_or(cfg.default_max_degree());
    PathWba H(g, M, L.F);
    FrtQuotient Q(g, frt_relations(H, TemperleyLieb(L).derive_r_matrix()), M, L.F);
    AssemblyRun run;
    run.g2 = Q.reduce(grouplike_g2_normalized(H, L));
    run.wha = assemble_wha(Q, run.g2, M);
    run.axioms = check_wba_axioms(run.wha.A);
    run.antipode = solve_antipode(run.wha.A);
    run.oracle = fusion_oracle(sl2_fusion_data(cfg.r), g, M);
    return run;
}

inline CommandResult cmd_assemble(const RunConfig& cfg) {
    auto run = run_assembly(cfg);
    auto L = field_for_level(cfg.r, cfg.root_exponent);
    PathSpace S(sl2_dimension_graph(cfg.r), 2);
    CommandResult res;
    res.ok = run.ok();
    std::ostringstream os;
    const auto& W = run.wha;
    os << "weak Hopf algebra H = H[G,E]/(1 - g2), r=" << cfg.r << "\n"
       << "  stabilization degree m0 = " << W.m0 << "\n";
    json steps = json::array();
    for (auto& s : W.steps) {
        os << "  L_" << s.degree << ": " << s.dim << " -> " << s.dim_plus_two << (s.bijective ? " bijective" : "") << "\n";
        steps.push_back({{"degree", s.degree}, {"dim", s.dim}, {"dim_plus_two", s.dim_plus_two}, {"bijective", s.bijective}});
    }
    os << "  dim H = " << W.even_dim << " + " << W.odd_dim << " = " << W.dim() << " (fusion oracle " << run.oracle.total << ") "
       << status(W.dim() == run.oracle.total) << "\n"
       << run.axioms.summary() << "antipode: " << (run.antipode.exists ? (run.antipode.unique ? "unique" : "not unique") : "none")
       << " (nullity " << run.antipode.nullity << ")\n"
       << run.antipode.checks.summary();
    json S_entries = json::array();
    if (run.antipode.exists)
        for (std::size_t a = 0; a < run.antipode.S.rows(); ++a)
            for (std::size_t b = 0; b < run.antipode.S.cols(); ++b)
                if (!run.antipode.S(a, b).is_zero()) S_entries.push_back({a, b, to_json(run.antipode.S(a, b))});
    res.data = {{"r", cfg.r},
                {"field", field_json(L)},
                {"dims", {{"even", W.even_dim}, {"odd", W.odd_dim}, {"total", W.dim()}, {"oracle", run.oracle.total}}},
                {"stabilization_degree", W.m0},
                {"stabilization", steps},
                {"grouplike", to_json(run.g2, S)},
                {"antipode", {{"exists", run.antipode.exists}, {"unique", run.antipode.unique}, {"entries", S_entries}}},
                {"axioms", to_json(run.axioms)},
                {"antipode_axioms", to_json(run.antipode.checks)},
                {"ok", res.ok}};
    res.text = os.str();
    return res;
}

inline std::filesystem::path output_dir(const RunConfig& cfg) {
    if (!cfg.out.empty()) return cfg.out;
    if (const char* e = std::getenv(kOutputDirEnv)) return e;
    return ".";
}

/// resolves --out for single-file commands; relative paths go below the environment override when set
inline std::filesystem::path output_file(const RunConfig& cfg) {
    std::filesystem::path p(cfg.out);
    if (p.is_relative())
        if (const char* e = std::getenv(kOutputDirEnv)) return std::filesystem::path(e) / p;
    return p;
}

inline void write_file(const std::filesystem::path& p, const std::string& s) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

inline CommandResult cmd_export(const RunConfig& cfg) {
    cfg.validate();
    auto dir = output_dir(cfg);
    auto L = field_for_level(cfg.r, cfg.root_exponent);
    std::vector<std::pair<std::string, CommandResult>> parts;
    parts.emplace_back("graph.json", cmd_graph(cfg));
    {
        CommandResult f;
        f.data = to_json(sl2_fusion_data(cfg.r));
        parts.emplace_back("fusion.json", f);
    }
    parts.emplace_back("rmatrix_derived.json", cmd_rmatrix(cfg, RMatrixMode::derive));
    parts.emplace_back("rmatrix_closed_form.json", cmd_rmatrix(cfg, RMatrixMode::closed_form));
    parts.emplace_back("quotient.json", cmd_quotient(cfg));
    parts.emplace_back("grouplike.json", cmd_grouplike(cfg, GrouplikeMode::verify_closed_form, 2));
    parts.emplace_back("assembled.json", cmd_assemble(cfg));
    CommandResult res;
    std::ostringstream os;
    json files = json::array();
    for (auto& [name, part] : parts) {
        write_file(dir / name, dump(part.data));
        res.ok = res.ok && part.ok;
        os << "wrote " << (dir / name).string() << (part.ok ? "" : "  (certificate FAIL)") << "\n";
        files.push_back({{"file", name}, {"ok", part.ok}});
    }
    res.data = {{"r", cfg.r}, {"field", field_json(L)}, {"directory", dir.string()}, {"files", files}, {"ok", res.ok}};
    res.text = os.str();
    return res;
}

}  // namespace wha::cli
