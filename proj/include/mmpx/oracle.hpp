#pragma once

// Reference implementations for tests and `verify --oracle`.
//
// Written straight from the scalar definitions with their own loops and
// comparisons. Nothing here calls into tropical.hpp's arithmetic, so
// agreement with the fast path is evidence rather than tautology.

#include <vector>

#include "mmpx/bipartite.hpp"
#include "mmpx/tropical.hpp"

namespace mmpx::oracle {

/// u_i' = max_k (a_ik + w_k), w_j' = min_k (b_jk + u_k), with ε winning
/// mixed sums in the max rows and τ winning them in the min rows.
StateVector naive_apply_M(const TropicalMatrix& a, const TropicalMatrix& b, const StateVector& x);

/// M(v)_i − (λ + v_i), computed via naive_apply_M. Infinite images are
/// passed through as the residual entry.
TropicalVector naive_residual(const TropicalMatrix& a, const TropicalMatrix& b, const Rational& lambda,
                              const StateVector& v);

/// Every eigenvector for `lambda` on a lattice: the first coordinate is
/// pinned to 0, the rest range over {−radius, −radius + step, ..., radius}.
/// Results are in lexicographic order. Requires m + n <= 5 and radius <= 6.
std::vector<StateVector> brute_residual_grid(const BipartiteSystem<Rational>& sys, const Rational& lambda, int radius,
                                             const Rational& step);

}  // namespace mmpx::oracle
