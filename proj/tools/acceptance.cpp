#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wha/cli.hpp"

using namespace wha;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
};

void note(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.ok = false;
        o.detail += (o.detail.empty() ? "" : "; ") + what;
    }
}

Outcome wba_axioms() {
    Outcome o;
    long long graphs = 0;
    for (int n = 1; n <= 3; ++n)
        for (auto& g : all_digraphs(n)) {
            ++graphs;
            auto rep = check_wba_axioms(g, 3);
            if (!rep.ok()) note(o, false, "digraph on " + std::to_string(n) + " vertices: " + rep.first_failure()->name);
        }
    for (int r = 3; r <= 6; ++r) {
        auto rep = check_wba_axioms(sl2_dimension_graph(r), 4);
        if (!rep.ok()) note(o, false, "sl2 r=" + std::to_string(r) + ": " + rep.first_failure()->name);
    }
    if (o.ok) o.detail = std::to_string(graphs) + " digraphs at cap 3, sl2 r=3..6 at cap 4";
    return o;
}

Outcome star_triangular() {
    Outcome o;
    for (int r = 3; r <= 6; ++r) {
        auto rep = check_star_triangular(TemperleyLieb(r).derive_r_matrix(), sl2_dimension_graph(r));
        note(o, rep.ok, "r=" + std::to_string(r) + " witness " + rep.witness);
    }
    if (o.ok) o.detail = "R1R2R1 = R2R1R2 on paths of length 3, r=3..6";
    return o;
}

Outcome rmatrix_oracle() {
    Outcome o;
    for (int r = 3; r <= 6; ++r) {
        cli::RunConfig cfg;
        cfg.r = r;
        auto res = cli::cmd_rmatrix(cfg, cli::RMatrixMode::compare);
        std::string why = "r=" + std::to_string(r) + ": " + std::to_string(res.data["differences"].size()) + " entries differ";
        if (res.data.contains("global_ratio")) {
            bool is_q = cyclo_from_json(res.data["global_ratio"]) == field_for_level(r).q;
            why += is_q ? ", derived = q * closed form" : ", derived = c * closed form for a constant c";
        }
        note(o, res.ok, why);
    }
    if (o.ok) o.detail = "derived = closed form, r=3..6";
    return o;
}

Outcome jones_wenzl() {
    Outcome o;
    int count = 0;
    for (int r = 3; r <= 6; ++r) {
        TemperleyLieb T(r);
        const LevelField& L = T.level();
        for (int n = 1; n <= r - 2; ++n) {
            auto P = T.jones_wenzl(n);
            std::string at = "r=" + std::to_string(r) + " n=" + std::to_string(n);
            note(o, T.multiply(P, P) == P, at + ": P^2 != P");
            for (int i = 1; i < n; ++i) note(o, T.multiply(T.cupcap(n, i), P).is_zero(), at + ": e_i P != 0");
            CycloNumber expect = (n % 2 ? -L.one() : L.one()) * L.qint(n + 1);
            note(o, T.closure(P) == expect, at + ": closure != (-1)^n [n+1]");
            ++count;
        }
    }
    if (o.ok) o.detail = std::to_string(count) + " projectors, r=3..6";
    return o;
}

Outcome quotient_dims() {
    Outcome o;
    for (int r = 3; r <= 6; ++r) {
        cli::RunConfig cfg;
        cfg.r = r;
        cfg.max_degree = 6;
        auto res = cli::cmd_quotient(cfg);
        note(o, res.ok, "r=" + std::to_string(r) + " dimension mismatch");
        if (r == 4) {
            auto& rows = res.data["rows"];
            note(o, rows[2]["quotient_dim"] == 18 && rows[3]["quotient_dim"] == 16 && rows[4]["quotient_dim"] == 18,
                 "r=4 spot values");
        }
    }
    if (o.ok) o.detail = "r=3..6, m<=6 equal the fusion prediction; r=4: 18, 16, 18 at m=2, 3, 4";
    return o;
}

Outcome grouplike() {
    Outcome o;
    std::ostringstream extra;
    for (int r = 3; r <= 6; ++r) {
        std::string at = "r=" + std::to_string(r);
        auto L = field_for_level(r);
        auto g = sl2_dimension_graph(r);
        RMatrix R = TemperleyLieb(L).derive_r_matrix();
        PathWba H(g, 5, L.F);
        FrtQuotient Q(g, frt_relations(H, R), 5, L.F);
        RForm rf(Q.space(), R);
        WbaElement printed = Q.reduce(grouplike_g2(H, L));
        WbaElement normal = Q.reduce(grouplike_g2_normalized(H, L));
        auto cp = verify_grouplike(Q, printed);
        auto cn = verify_grouplike(Q, normal);
        note(o, cp.grouplike(), at + ": printed g2 fails the group-like axioms");
        note(o, cp.x_fixed(), at + ": printed g2 not X-fixed");
        note(o, cp.central(), at + ": printed g2 not central");
        auto s2 = grouplike_solve(Q, 2, &rf);
        auto s4 = grouplike_solve(Q, 4, &rf);
        bool one2 = s2.status == GroupLikeSolution::Status::unique, one4 = s4.status == GroupLikeSolution::Status::unique;
        note(o, one2 && s2.solutions[0] == printed, at + ": degree-2 solution differs from printed g2");
        note(o, one4 && s4.solutions[0] == Q.multiply(printed, printed), at + ": degree-4 solution differs from printed g2^2");
        bool extracted = false;
        try {
            auto ex = grouplike_from_comodule(Q, sl2_unit_subcomodule(L, Q.space()), rf);
            extracted = ex.normalized == printed;
        } catch (const std::exception&) {
        }
        note(o, extracted, at + ": extraction differs from printed g2");
        // corrected representative, reported alongside
        bool corrected = cn.grouplike() && cn.x_fixed() && cn.central() && one2 && s2.solutions[0] == normal && one4 &&
                         s4.solutions[0] == Q.multiply(normal, normal);
        extra << (extra.tellp() ? "," : "") << r << (corrected ? "" : "(no)");
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("central representative passes every check at r=") + extra.str();
    return o;
}

Outcome assembly() {
    Outcome o;
    const int expected[] = {8, 34, 104};
    for (int r = 3; r <= 5; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        cli::RunConfig cfg;
        cfg.r = r;
        auto run = cli::run_assembly(cfg);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string at = "r=" + std::to_string(r);
        note(o, run.wha.dim() == expected[r - 3], at + ": dim " + std::to_string(run.wha.dim()));
        note(o, run.wha.dim() == run.oracle.total, at + ": fusion oracle mismatch");
        note(o, run.axioms.ok(), at + ": WBA axioms");
        note(o, run.antipode.exists && run.antipode.unique && run.antipode.checks.ok(), at + ": antipode");
        note(o, secs < 300, at + ": over 5 minutes");
        if (o.ok) o.detail += (o.detail.empty() ? "" : ", ") + at + " dim " + std::to_string(run.wha.dim()) + " m0 " +
                              std::to_string(run.wha.m0);
    }
    return o;
}

Outcome rform() {
    Outcome o;
    cli::RunConfig cfg;
    cfg.r = 4;
    cfg.max_degree = 2;
    auto res = cli::cmd_check(cfg, "rform");
    for (auto& law : res.data["laws"]) note(o, law["ok"].get<bool>(), law["name"].get<std::string>());
    if (o.ok) o.detail = "all r-form laws on basis pairs of degree <= 2, r=4";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> known, only;
    app.add_option("--known-deviations", known, "criteria documented as failing; exit 0 iff exactly these fail")
        ->delimiter(',');
    app.add_option("--only", only, "run a subset of criteria")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    std::vector<Criterion> criteria = {
        {1, "WBA axioms for H[G]", 60, wba_axioms},
        {2, "star-triangularity", 10, star_triangular},
        {3, "derived R-matrix equals the closed form", 60, rmatrix_oracle},
        {4, "Jones-Wenzl suite", 30, jones_wenzl},
        {5, "quotient dimensions match the fusion rules", 300, quotient_dims},
        {6, "group-like g2 certificate, solver and extraction", 120, grouplike},
        {7, "assembly, axioms and unique antipode", 900, assembly},
        {8, "r-form laws at degree <= 2", 120, rform},
    };
    std::set<int> failed;
    for (auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) note(o, false, "time limit exceeded");
        if (!o.ok) failed.insert(c.id);
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << secs;
        std::cout << "criterion " << c.id << " " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  [" << t.str() << "s / "
                  << c.limit_seconds << "s]  " << o.detail << std::endl;
    }
    if (known.empty()) return failed.empty() ? 0 : 1;
    std::set<int> expect(known.begin(), known.end());
    if (!only.empty()) {
        std::set<int> sel(only.begin(), only.end()), e2;
        for (int k : expect)
            if (sel.count(k)) e2.insert(k);
        expect = e2;
    }
    bool same = failed == expect;
    std::cout << "known deviations " << (same ? "match" : "DO NOT match") << " the failing set" << std::endl;
    return same ? 0 : 1;
}
