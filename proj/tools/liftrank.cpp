// Command-line surface for the stretched-clique / lift-and-project toolkit.
//
// Subcommands: family, enumerate, opt, eps, verify-minimal, report.
// Exit codes: 0 on success (including decided false verdicts), 2 when a rank
// verdict is unknown, 1 on errors.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "liftrank/canonical.hpp"
#include "liftrank/enumeration.hpp"
#include "liftrank/families.hpp"
#include "liftrank/lsplus.hpp"
#include "liftrank/report.hpp"

using namespace liftrank;

namespace {

struct GraphArgs {
    std::string family;
    int k = 0;
    std::string s_csv;
    std::string g6;
    std::string json_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "family name: a, a-s, b, b-prime, h-prime, g21, g22, g31, g41, fig7");
        cmd->add_option("--k", k, "family size parameter");
        cmd->add_option("--s", s_csv, "comma-separated 1-based S entries for a-s");
        cmd->add_option("--g6", g6, "graph in graph6 encoding");
        cmd->add_option("--json-file", json_file, "file holding a graph or stretched clique in JSON");
    }

    FamilyGraph load() const {
        int sources = !family.empty();
        sources += !g6.empty();
        sources += !json_file.empty();
        if (sources != 1)
            throw std::invalid_argument("give exactly one of --family, --g6, --json-file");
        FamilyGraph out;
        if (!family.empty()) {
            out = construct(parse_family_spec(family, k, s_csv));
        } else if (!g6.empty()) {
            out.graph = from_graph6(g6);
            out.name = g6;
        } else {
            std::ifstream in(json_file);
            if (!in) throw std::invalid_argument("cannot open " + json_file);
            std::stringstream buf;
            buf << in.rdbuf();
            std::string text = buf.str();
            try {
                StretchedClique sc = stretched_from_json(text);
                out.graph = sc.graph;
                out.sc = std::move(sc);
            } catch (const std::exception&) {
                out.graph = graph_from_json(text);
            }
            out.name = json_file;
        }
        return out;
    }
};

std::string cache_dir() {
    const char* env = std::getenv("LIFTRANK_CACHE");
    return env ? env : "";
}

EnumerationFilter make_filter(bool hat, bool nonhat, bool tilde, int max_omega) {
    EnumerationFilter f;
    f.require_hat = hat;
    f.complement_of_hat = nonhat;
    f.require_tilde = tilde;
    if (max_omega >= 0) f.max_omega = max_omega;
    f.check();
    return f;
}

void print_rows(const std::vector<SolveRow>& rows, const std::string& format, std::ostream& os) {
    if (format == "csv") {
        os << table_csv(rows);
    } else if (format == "json") {
        os << table_json(rows) << "\n";
    } else {
        os << std::fixed << std::setprecision(5);
        for (const auto& r : rows) os << r.graph6 << "\t" << r.optimum << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stretched-clique catalog and lift-and-project rank toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    unsigned seed = 0;
    int jobs = 1;
    int budget_level = 2;
    app.add_option("--seed", seed, "seed for randomized auxiliary runs (the core pipeline uses none)");
    app.add_option("--jobs", jobs, "parallel per-graph solves");
    app.add_option("--budget-level", budget_level, "cap on the relaxation level");
    int max_rows = 9000;
    app.add_option("--max-rows", max_rows, "size budget for the unrolled relaxation");

    // family
    auto* fam = app.add_subcommand("family", "construct a named graph family member");
    GraphArgs fam_args;
    fam->add_option("--family", fam_args.family, "family name")->required();
    fam->add_option("--k", fam_args.k, "family size parameter");
    fam->add_option("--s", fam_args.s_csv, "comma-separated 1-based S entries");
    bool fam_json = false;
    fam->add_flag("--json", fam_json, "emit labeled JSON instead of graph6");

    // enumerate
    auto* en = app.add_subcommand("enumerate", "list stretched-clique classes up to isomorphism");
    int en_n = 5, en_d = 2, en_max_omega = -1;
    bool en_hat = false, en_nonhat = false, en_tilde = false;
    std::string en_out;
    en->add_option("--n", en_n, "base clique size")->required();
    en->add_option("--d", en_d, "number of stretched vertices")->required();
    en->add_flag("--hat", en_hat, "keep only classes with a one-edge-per-pair labeling");
    en->add_flag("--non-hat", en_nonhat, "keep only classes without such a labeling");
    en->add_flag("--tilde", en_tilde, "require a proper-wing labeling");
    en->add_option("--max-omega", en_max_omega, "clique number cap");
    en->add_option("--out", en_out, "also write the catalog to this file");

    // opt
    auto* opt = app.add_subcommand("opt", "maximize the all-ones objective over a relaxation level");
    GraphArgs opt_args;
    opt_args.attach(opt);
    int opt_level = 1;
    std::string opt_dump;
    opt->add_option("--level", opt_level, "relaxation level (0 = LP)")->required();
    opt->add_option("--dump", opt_dump, "write PREFIX.dat-s and PREFIX.manifest.json before solving");

    // eps
    auto* eps = app.add_subcommand("eps", "maximal certificate perturbation at a level");
    GraphArgs eps_args;
    eps_args.attach(eps);
    int eps_level = 1;
    bool eps_bisect = false;
    eps->add_option("--level", eps_level, "relaxation level")->required();
    eps->add_flag("--bisect", eps_bisect, "validate by bisection on membership queries");

    // verify-minimal
    auto* vm = app.add_subcommand("verify-minimal", "decide whether the rank meets a third of the vertex count");
    GraphArgs vm_args;
    vm_args.attach(vm);
    vm->add_option("--named", vm_args.family, "alias of --family for the figure graphs");

    // report
    auto* rep = app.add_subcommand("report", "reproduce the catalog tables and counts");
    std::string rep_what, rep_format = "plain";
    bool rep_full = false;
    int rep_level = 2;
    rep->add_option("what", rep_what, "fig5 | fig6 | counts")->required();
    rep->add_option("--format", rep_format, "plain | csv | json");
    rep->add_flag("--full", rep_full, "include the long (6,3) run in counts");
    rep->add_option("--level", rep_level, "relaxation level for the tables (default 2)");

    CLI11_PARSE(app, argc, argv);
    (void)seed;

    try {
        LsSettings ls;
        ls.max_rows = max_rows;
        if (budget_level < 0) throw std::invalid_argument("--budget-level must be nonnegative");

        if (*fam) {
            FamilyGraph fg = construct(parse_family_spec(fam_args.family, fam_args.k, fam_args.s_csv));
            if (fam_json && fg.sc)
                std::cout << stretched_to_json(*fg.sc) << "\n";
            else if (fam_json)
                std::cout << graph_to_json(fg.graph) << "\n";
            else
                std::cout << to_graph6(fg.graph) << "\n";
            std::cerr << fg.name << ": n=" << fg.graph.vertex_count()
                      << " m=" << fg.graph.edge_count() << " alpha=" << alpha(fg.graph)
                      << " omega=" << omega(fg.graph) << "\n";
            return 0;
        }
        if (*en) {
            EnumerationFilter f = make_filter(en_hat, en_nonhat, en_tilde, en_max_omega);
            EnumerationResult res = cached_enumeration(en_n, en_d, f, cache_dir());
            write_catalog(std::cout, res);
            if (!en_out.empty()) {
                std::ofstream out(en_out);
                if (!out) throw std::invalid_argument("cannot write " + en_out);
                write_catalog(out, res);
            }
            std::cerr << res.entries.size() << " classes\n";
            return 0;
        }
        if (*opt) {
            FamilyGraph fg = opt_args.load();
            if (opt_level > budget_level)
                throw std::invalid_argument("level exceeds --budget-level; raise the cap explicitly");
            BuildResult build =
                build_optimize(fg.graph, opt_level, std::vector<std::int64_t>(fg.graph.vertex_count(), 1), ls);
            if (!opt_dump.empty()) {
                std::ofstream sdpa(opt_dump + ".dat-s");
                std::ofstream manifest(opt_dump + ".manifest.json");
                if (!sdpa || !manifest) throw std::invalid_argument("cannot write dump files");
                dump_problem(build, sdpa, manifest);
            }
            RelaxationResult r = optimize(fg.graph, opt_level, rank_inequality(fg.graph), ls);
            std::cout << std::fixed << std::setprecision(6) << r.optimum << "\n";
            std::cerr << "status=" << (r.status == SolveStatus::Optimal ? "optimal" : "inexact")
                      << " alpha=" << static_cast<int>(r.stab_value) << " level=" << opt_level
                      << " iters=" << r.iterations << "\n";
            return r.status == SolveStatus::Optimal ? 0 : 2;
        }
        if (*eps) {
            FamilyGraph fg = eps_args.load();
            if (!fg.sc)
                throw std::invalid_argument("eps needs a labeled stretched clique (family or labeled JSON)");
            if (eps_level > budget_level)
                throw std::invalid_argument("level exceeds --budget-level; raise the cap explicitly");
            EpsResult e = eps_bisect ? max_eps_bisect(*fg.sc, eps_level, fg.sc->base_n, ls)
                                     : max_eps(*fg.sc, eps_level, ls);
            if (!e.known) {
                std::cout << "unknown\n";
                return 2;
            }
            std::cout << std::fixed << std::setprecision(6) << e.eps << "\n";
            return 0;
        }
        if (*vm) {
            FamilyGraph fg = vm_args.load();
            MinimalityResult r = verify_minimal(fg.graph, ls);
            if (r.verdict == Verdict::Unknown) {
                std::cout << "unknown (rank in [" << r.bounds.lower << ", " << r.bounds.upper
                          << "])\n";
                return 2;
            }
            std::cout << (r.verdict == Verdict::True ? "true" : "false") << "\n";
            return 0;
        }
        if (*rep) {
            if (rep_what == "fig5" || rep_what == "fig6") {
                EnumerationFilter f =
                    make_filter(rep_what == "fig5", rep_what == "fig6", false, 3);
                EnumerationResult res = cached_enumeration(5, 2, f, cache_dir());
                std::vector<SolveRow> rows = catalog_solve(res, rep_level, ls, jobs);
                print_rows(rows, rep_format, std::cout);
                return 0;
            }
            if (rep_what == "counts") {
                EnumerationFilter hat = make_filter(true, false, false, 3);
                EnumerationFilter nonhat = make_filter(false, true, false, 3);
                std::cout << "hat(5,2,w<=3): "
                          << cached_enumeration(5, 2, hat, cache_dir()).entries.size() << "\n";
                std::cout << "non-hat(5,2,w<=3): "
                          << cached_enumeration(5, 2, nonhat, cache_dir()).entries.size() << "\n";
                if (rep_full)
                    std::cout << "hat(6,3,w<=3): "
                              << cached_enumeration(6, 3, hat, cache_dir()).entries.size() << "\n";
                return 0;
            }
            throw std::invalid_argument("report target must be fig5, fig6 or counts");
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
