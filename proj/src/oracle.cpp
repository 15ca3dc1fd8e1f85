#include "mmpx/oracle.hpp"

#include <string>

#include "mmpx/errors.hpp"

namespace mmpx::oracle {
namespace {

using Kind = ExtendedValue::Kind;

// Sum of two extended values; `max_row` selects which infinity absorbs.
ExtendedValue plus(const ExtendedValue& p, const ExtendedValue& q, bool max_row) {
  if (p.kind() == Kind::Finite && q.kind() == Kind::Finite) return ExtendedValue(Rational(p.value() + q.value()));
  if (p.kind() == Kind::NegInf && q.kind() == Kind::PosInf) return max_row ? ExtendedValue::eps() : ExtendedValue::tau();
  if (p.kind() == Kind::PosInf && q.kind() == Kind::NegInf) return max_row ? ExtendedValue::eps() : ExtendedValue::tau();
  if (p.kind() == Kind::NegInf || q.kind() == Kind::NegInf) return ExtendedValue::eps();
  return ExtendedValue::tau();
}

// Strict order on the extended line, spelled out case by case.
bool less(const ExtendedValue& p, const ExtendedValue& q) {
  if (p.kind() == Kind::NegInf) return q.kind() != Kind::NegInf;
  if (p.kind() == Kind::PosInf) return false;
  if (q.kind() == Kind::NegInf) return false;
  if (q.kind() == Kind::PosInf) return true;
  return p.value() < q.value();
}

}  // namespace

StateVector naive_apply_M(const TropicalMatrix& a, const TropicalMatrix& b, const StateVector& x) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.rows() != n || b.cols() != m) throw DimensionMismatch("naive_apply_M: A and B are not conjugate");
  if (x.u.size() != m || x.w.size() != n) throw DimensionMismatch("naive_apply_M: state does not match system");

  StateVector out{TropicalVector(m), TropicalVector(n)};
  for (Eigen::Index i = 0; i < m; ++i) {
    ExtendedValue best = ExtendedValue::eps();
    for (Eigen::Index j = 0; j < n; ++j) {
      const ExtendedValue term = plus(a(i, j), x.w(j), true);
      if (less(best, term)) best = term;
    }
    out.u(i) = best;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    ExtendedValue best = ExtendedValue::tau();
    for (Eigen::Index i = 0; i < m; ++i) {
      const ExtendedValue term = plus(b(j, i), x.u(i), false);
      if (less(term, best)) best = term;
    }
    out.w(j) = best;
  }
  return out;
}

TropicalVector naive_residual(const TropicalMatrix& a, const TropicalMatrix& b, const Rational& lambda,
                              const StateVector& v) {
  const StateVector image = naive_apply_M(a, b, v);
  TropicalVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const ExtendedValue& lhs = image[i];
    const ExtendedValue& vi = v[i];
    if (lhs.kind() != Kind::Finite) {
      out(i) = lhs;
    } else if (vi.kind() != Kind::Finite) {
      throw InvalidArgument("naive_residual: eigenvector must be finite");
    } else {
      out(i) = ExtendedValue(Rational(lhs.value() - lambda - vi.value()));
    }
  }
  return out;
}

std::vector<StateVector> brute_residual_grid(const BipartiteSystem<Rational>& sys, const Rational& lambda, int radius,
                                             const Rational& step) {
  const Eigen::Index dim = sys.m() + sys.n();
  if (dim > 5) throw TooLarge("brute_residual_grid: m + n = " + std::to_string(dim) + " exceeds 5");
  if (radius < 0 || radius > 6) throw TooLarge("brute_residual_grid: radius must lie in 0..6");
  if (step <= 0) throw InvalidArgument("brute_residual_grid: step must be positive");

  std::vector<Rational> grid;
  for (Rational g = -radius; g <= radius; g += step) grid.push_back(g);

  std::vector<std::size_t> odometer(static_cast<std::size_t>(dim - 1), 0);
  std::vector<StateVector> found;
  TropicalVector stacked(dim);
  stacked(0) = ExtendedValue(0);
  while (true) {
    for (Eigen::Index k = 1; k < dim; ++k) stacked(k) = ExtendedValue(grid[odometer[static_cast<std::size_t>(k - 1)]]);
    const StateVector v = StateVector::from_stacked(stacked, sys.m());
    const TropicalVector res = naive_residual(sys.a(), sys.b(), lambda, v);
    bool zero = true;
    for (Eigen::Index i = 0; i < res.size() && zero; ++i)
      zero = res(i).kind() == Kind::Finite && res(i).value() == 0;
    if (zero) found.push_back(v);

    // Last coordinate fastest, which yields lexicographic order.
    std::size_t pos = odometer.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < grid.size()) break;
      odometer[pos] = 0;
      if (pos == 0) return found;
    }
    if (odometer.empty()) return found;
  }
}

}  // namespace mmpx::oracle
