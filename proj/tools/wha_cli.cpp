#include <iostream>

#include <CLI11.hpp>

#include "wha/cli.hpp"

using namespace wha;
using namespace wha::cli;

int main(int argc, char** argv) {
    CLI::App app{"Exact reconstruction of weak Hopf algebras from fusion data"};
    app.require_subcommand(1);
    RunConfig cfg;
    int max_degree = -1;
    unsigned seed = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--r", cfg.r, "level r (q = exp(i pi / r))")->capture_default_str();
        sub->add_option("--root-exponent", cfg.root_exponent, "A = zeta_{4r}^k, k coprime to 4r")->capture_default_str();
        sub->add_option("--max-degree", max_degree, "degree cap (default 2(r-2)+2)");
        sub->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        sub->add_option("--out", cfg.out, "output file (export: output directory)");
        sub->add_option("--seed", seed, "random 3-vertex digraph for check wba-axioms");
    };

    auto* graph = app.add_subcommand("graph", "dimension graph of the sl2 fusion category at level r");
    add_common(graph);

    auto* rmatrix = app.add_subcommand("rmatrix", "face-model R-matrix");
    add_common(rmatrix);
    bool derive = false, closed = false, compare = false;
    auto* g1 = rmatrix->add_flag("--derive", derive, "from the diagram calculus");
    auto* g2 = rmatrix->add_flag("--closed-form", closed, "from the listed coefficients");
    auto* g3 = rmatrix->add_flag("--compare", compare, "derive and compare");
    g1->excludes(g2)->excludes(g3);
    g2->excludes(g3);

    auto* check = app.add_subcommand("check", "certificate checks");
    add_common(check);
    std::string which;
    check->add_option("which", which, "wba-axioms | ybe | coideal | rform")
        ->required()
        ->check(CLI::IsMember({"wba-axioms", "ybe", "coideal", "rform"}));
    check->add_flag("--perturb", cfg.perturb, "inject a known defect (wba-axioms, ybe)");

    auto* quotient = app.add_subcommand("quotient", "graded dimensions of H[G,E] against the fusion rules");
    add_common(quotient);

    auto* grouplike = app.add_subcommand("grouplike", "degree-2 group-like and homogeneous group-like search");
    add_common(grouplike);
    int degree = -1;
    bool solve = false, verify = false;
    grouplike->add_option("--degree", degree, "degree for --solve");
    grouplike->add_flag("--solve", solve, "solve for homogeneous group-likes");
    grouplike->add_flag("--verify-closed-form", verify, "certify the closed-form g2");

    auto* assemble = app.add_subcommand("assemble", "assemble H = H[G,E]/(1 - g2) and its antipode");
    add_common(assemble);

    auto* exp = app.add_subcommand("export", "write all JSON artifacts to a directory");
    add_common(exp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto* sub : {graph, rmatrix, check, quotient, grouplike, assemble, exp}) {
            if (sub->parsed() && sub->count("--seed")) cfg.seed = seed;
            if (sub->parsed() && sub->count("--max-degree")) cfg.max_degree = max_degree;
        }
        if (grouplike->parsed() && grouplike->count("--degree") && degree < 0) throw UsageError("degree must be non-negative");
        CommandResult res;
        if (graph->parsed()) res = cmd_graph(cfg);
        else if (rmatrix->parsed())
            res = cmd_rmatrix(cfg, compare ? RMatrixMode::compare : closed ? RMatrixMode::closed_form : RMatrixMode::derive);
        else if (check->parsed()) res = cmd_check(cfg, which);
        else if (quotient->parsed()) res = cmd_quotient(cfg);
        else if (grouplike->parsed()) {
            if (verify && (solve || degree >= 0)) throw UsageError("--verify-closed-form takes no degree");
            if (solve || degree >= 0) res = cmd_grouplike(cfg, GrouplikeMode::solve, degree >= 0 ? degree : 2);
            else res = cmd_grouplike(cfg, GrouplikeMode::verify_closed_form, 2);
        } else if (assemble->parsed()) res = cmd_assemble(cfg);
        else if (exp->parsed()) res = cmd_export(cfg);

        std::string out = res.render(cfg.format);
        if (!cfg.out.empty() && !exp->parsed()) write_file(output_file(cfg), out);
        else std::cout << out;
        return res.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
