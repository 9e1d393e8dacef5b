#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liftrank/graph.hpp"
#include "liftrank/stretching.hpp"

namespace liftrank {

struct EnumerationFilter {
    bool require_hat = false;
    bool require_tilde = false;
    bool complement_of_hat = false;  // keep only classes with no hat labeling
    std::optional<int> max_omega;

    void check() const;  // hat and complement_of_hat are mutually exclusive
};

struct CatalogEntry {
    std::string graph6;
    int omega = 0;
    int alpha = 0;
    bool hat = false;    // some valid labeling satisfies the hat condition
    bool tilde = false;  // some valid labeling satisfies the tilde condition
    int deficiency = 0;  // minimum over valid labelings
};

struct EnumerationResult {
    int n = 0, d = 0;
    std::vector<CatalogEntry> entries;               // sorted by canonical form
    std::vector<StretchedClique> witnesses;          // one labeling per class
};

/// All isomorphism classes obtainable by 2-stretching d designated vertices
/// of K_n, filtered. Generation walks unordered covering pairs per stretched
/// vertex with canonical-form dedup after each stage; class flags come from
/// an exhaustive search over valid hub/wing labelings of each final graph.
EnumerationResult enumerate_knd(int n, int d, const EnumerationFilter& filter);

/// All valid stretched-clique labelings of a graph on base count n with d
/// stretched indices (possibly empty if the graph is not in K_{n,d}).
std::vector<StretchedClique> find_labelings(const Graph& g, int n, int d);

// Line-oriented catalog: graph6 TAB omega TAB alpha TAB hat TAB tilde TAB deficiency
void write_catalog(std::ostream& os, const EnumerationResult& res);
EnumerationResult read_catalog(std::istream& is, int n, int d);

}  // namespace liftrank
