#pragma once

#include <cstdint>
#include <vector>

#include "liftrank/graph.hpp"
#include "liftrank/rational.hpp"
#include "liftrank/stretching.hpp"

namespace liftrank {

/// coeffs^T x <= rhs over x indexed by V(G).
struct LinearInequality {
    std::vector<std::int64_t> coeffs;
    std::int64_t rhs = 0;
};

/// coeffs^T x == rhs, evaluated on 0/1 points.
struct LinearEquality {
    std::vector<std::int64_t> coeffs;
    std::int64_t rhs = 0;
};

/// Homogenized (n+1)-vector indexed {0} u V(G); entry 0 is the scaling
/// coordinate.
struct ConeVector {
    std::vector<Rational> entries;

    int n() const { return static_cast<int>(entries.size()) - 1; }
    const Rational& at0() const { return entries[0]; }
    const Rational& at(int v) const { return entries[v + 1]; }
    Rational& at(int v) { return entries[v + 1]; }
};

/// Box and edge inequalities of the fractional stable set polytope.
std::vector<LinearInequality> frac_system(const Graph& g);

LinearInequality rank_inequality(const Graph& g);  // all-ones <= alpha(G)

/// Sum of homogenized incidence vectors of the stable sets satisfying all
/// equalities. Throws std::domain_error when no stable set qualifies.
ConeVector u_vector(const Graph& g, const std::vector<LinearEquality>& eqs);

/// u over the rank equality, perturbed by -eps on coordinate 0 and the hubs.
ConeVector v_vector(const StretchedClique& sc, const Rational& eps);

/// Exact membership of w in the homogenized cone of FRAC(G); w_0 = 0 admits
/// only w = 0.
bool cone_frac_contains(const Graph& g, const ConeVector& w);

/// True iff the inequality induces a facet of STAB(G): the tight stable-set
/// incidence vectors, with a prepended 1, have exact rank |V|. Throws
/// std::invalid_argument when the inequality is not valid for STAB(G).
bool is_facet(const Graph& g, const LinearInequality& ineq);

}  // namespace liftrank
