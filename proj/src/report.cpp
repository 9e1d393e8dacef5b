#include "liftrank/report.hpp"

#include <atomic>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace liftrank {

std::vector<SolveRow> catalog_solve(const EnumerationResult& res, int level,
                                    const LsSettings& settings, int jobs) {
    std::vector<SolveRow> rows(res.entries.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= res.entries.size()) break;
            const CatalogEntry& e = res.entries[i];
            Graph g = from_graph6(e.graph6);
            RelaxationResult r = optimize(g, level, rank_inequality(g), settings);
            rows[i] = {e.graph6,  g.vertex_count(), e.alpha,  e.omega,      e.hat,
                       e.tilde,   e.deficiency,     level,    r.optimum,    r.frac_value,
                       r.status,  r.iterations};
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SolveRow& a, const SolveRow& b) {
        if (a.optimum != b.optimum) return a.optimum > b.optimum;
        return a.graph6 < b.graph6;
    });
    return rows;
}

std::string table_csv(const std::vector<SolveRow>& rows) {
    std::ostringstream os;
    os << "graph6,n,alpha,omega,hat,tilde,deficiency,level,optimum,frac,status,iterations\n";
    os << std::fixed << std::setprecision(6);
    for (const auto& r : rows)
        os << r.graph6 << ',' << r.vertex_count << ',' << r.alpha << ',' << r.omega << ','
           << (r.hat ? 1 : 0) << ',' << (r.tilde ? 1 : 0) << ',' << r.deficiency << ','
           << r.level << ',' << r.optimum << ',' << r.frac_value << ','
           << (r.status == SolveStatus::Optimal ? "optimal" : "inexact") << ',' << r.iterations
           << '\n';
    return os.str();
}

std::string table_json(const std::vector<SolveRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"graph6", r.graph6},
                       {"n", r.vertex_count},
                       {"alpha", r.alpha},
                       {"omega", r.omega},
                       {"hat", r.hat},
                       {"tilde", r.tilde},
                       {"deficiency", r.deficiency},
                       {"level", r.level},
                       {"optimum", r.optimum},
                       {"frac", r.frac_value},
                       {"status", r.status == SolveStatus::Optimal ? "optimal" : "inexact"},
                       {"iterations", r.iterations}});
    return arr.dump(2);
}

std::string filter_tag(const EnumerationFilter& filter) {
    std::string tag;
    if (filter.require_hat) tag += "_hat";
    if (filter.complement_of_hat) tag += "_nonhat";
    if (filter.require_tilde) tag += "_tilde";
    if (filter.max_omega) tag += "_w" + std::to_string(*filter.max_omega);
    return tag;
}

EnumerationResult cached_enumeration(int n, int d, const EnumerationFilter& filter,
                                     const std::string& cache_dir) {
    std::string path;
    if (!cache_dir.empty()) {
        path = cache_dir + "/knd_" + std::to_string(n) + "_" + std::to_string(d) +
               filter_tag(filter) + ".tsv";
        std::ifstream in(path);
        if (in) return read_catalog(in, n, d);
    }
    EnumerationResult res = enumerate_knd(n, d, filter);
    if (!path.empty()) {
        std::ofstream out(path);
        if (out) write_catalog(out, res);
    }
    return res;
}

}  // namespace liftrank
