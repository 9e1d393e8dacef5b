#pragma once

#include <string>
#include <vector>

#include "liftrank/graph.hpp"

namespace liftrank {

/// Relabeling-invariant form: the lexicographically minimal adjacency matrix
/// over all (color-preserving) relabelings, stored as a byte-comparable key.
/// Two graphs have equal CanonicalForm iff they are isomorphic (with matching
/// colors). Intended range n <= 18.
struct CanonicalForm {
    std::string key;
    std::vector<int> labeling;  // canonical position -> original vertex

    bool operator==(const CanonicalForm& o) const { return key == o.key; }
    bool operator<(const CanonicalForm& o) const { return key < o.key; }
};

CanonicalForm canonical(const Graph& g);
CanonicalForm canonical(const Graph& g, const std::vector<int>& colors);

/// Brute-force isomorphism test by backtracking over vertex maps; used as the
/// independent oracle for canonical(). Practical for n <= ~12.
bool isomorphic_bruteforce(const Graph& a, const Graph& b);

}  // namespace liftrank
