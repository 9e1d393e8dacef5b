#pragma once

#include <string>
#include <vector>

#include "liftrank/enumeration.hpp"
#include "liftrank/lsplus.hpp"

namespace liftrank {

struct SolveRow {
    std::string graph6;
    int vertex_count = 0;
    int alpha = 0;
    int omega = 0;
    bool hat = false;
    bool tilde = false;
    int deficiency = 0;
    int level = 0;
    double optimum = 0.0;
    double frac_value = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
};

/// Per-graph all-ones optimization over LS+^level for a whole catalog; rows
/// come back sorted descending by optimum. jobs > 1 distributes graphs over
/// threads; the result order does not depend on scheduling.
std::vector<SolveRow> catalog_solve(const EnumerationResult& res, int level,
                                    const LsSettings& settings = {}, int jobs = 1);

std::string table_csv(const std::vector<SolveRow>& rows);
std::string table_json(const std::vector<SolveRow>& rows);

/// Loads a cached catalog from dir (env LIFTRANK_CACHE) or enumerates and
/// stores it. An empty dir disables caching.
EnumerationResult cached_enumeration(int n, int d, const EnumerationFilter& filter,
                                     const std::string& cache_dir);

std::string filter_tag(const EnumerationFilter& filter);

}  // namespace liftrank
