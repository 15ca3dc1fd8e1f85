#pragma once

// Max-plus and min-plus arithmetic over Extended<Q>.
//
// Matrices are dense Eigen containers of Extended<Q>; every operation is a
// free function returning a new value. The ordinary Eigen operators (+, *)
// are NOT tropical and must not be used on these types.

#include <string>

#include <Eigen/Core>

#include "mmpx/errors.hpp"
#include "mmpx/extended.hpp"

namespace mmpx {

template <typename Q>
using Matrix = Eigen::Matrix<Extended<Q>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Q>
using Vector = Eigen::Matrix<Extended<Q>, Eigen::Dynamic, 1>;

using TropicalMatrix = Matrix<Rational>;
using TropicalVector = Vector<Rational>;

/// Which semiring a sum belongs to; decides ε ⊗ τ.
enum class Context { MaxPlus, MinPlus };

template <typename Q>
Extended<Q> tmax(const Extended<Q>& a, const Extended<Q>& b) {
  return a < b ? b : a;
}

template <typename Q>
Extended<Q> tmin(const Extended<Q>& a, const Extended<Q>& b) {
  return b < a ? b : a;
}

/// Tropical product ⊗ (ordinary addition). ε + τ is ε under MaxPlus and τ
/// under MinPlus so that an absent arc stays absent in either semiring.
template <typename Q>
Extended<Q> tadd(const Extended<Q>& a, const Extended<Q>& b, Context ctx) {
  if (a.is_finite() && b.is_finite()) return Extended<Q>(a.value() + b.value());
  const bool has_eps = a.is_eps() || b.is_eps();
  const bool has_tau = a.is_tau() || b.is_tau();
  if (has_eps && has_tau) return ctx == Context::MaxPlus ? Extended<Q>::eps() : Extended<Q>::tau();
  return has_eps ? Extended<Q>::eps() : Extended<Q>::tau();
}

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace detail

template <typename Q>
Matrix<Q> mat_oplus(const Matrix<Q>& a, const Matrix<Q>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "mat_oplus: shapes differ");
  return a.binaryExpr(b, [](const Extended<Q>& x, const Extended<Q>& y) { return tmax(x, y); });
}

template <typename Q>
Matrix<Q> mat_oplus_prime(const Matrix<Q>& a, const Matrix<Q>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "mat_oplus_prime: shapes differ");
  return a.binaryExpr(b, [](const Extended<Q>& x, const Extended<Q>& y) { return tmin(x, y); });
}

/// α ⊗ A: adds the finite scalar `alpha` to every entry. Infinite entries are
/// unchanged in either context.
template <typename Derived>
auto scalar_mul(const typename Derived::Scalar::value_type& alpha, const Eigen::MatrixBase<Derived>& a,
                Context ctx = Context::MaxPlus) {
  using Scalar = typename Derived::Scalar;
  const Scalar shift(alpha);
  return a.unaryExpr([shift, ctx](const Scalar& x) { return tadd(x, shift, ctx); }).eval();
}

template <typename Q>
Vector<Q> maxplus_matvec(const Matrix<Q>& a, const Vector<Q>& w) {
  detail::require(a.cols() == w.size(), "maxplus_matvec: A.cols != w.len");
  Vector<Q> out(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Extended<Q> acc = Extended<Q>::eps();
    for (Eigen::Index k = 0; k < a.cols(); ++k) acc = tmax(acc, tadd(a(i, k), w(k), Context::MaxPlus));
    out(i) = std::move(acc);
  }
  return out;
}

template <typename Q>
Vector<Q> minplus_matvec(const Matrix<Q>& b, const Vector<Q>& u) {
  detail::require(b.cols() == u.size(), "minplus_matvec: B.cols != u.len");
  Vector<Q> out(b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    Extended<Q> acc = Extended<Q>::tau();
    for (Eigen::Index k = 0; k < b.cols(); ++k) acc = tmin(acc, tadd(b(j, k), u(k), Context::MinPlus));
    out(j) = std::move(acc);
  }
  return out;
}

template <typename Q>
Matrix<Q> maxplus_matmul(const Matrix<Q>& a, const Matrix<Q>& b) {
  detail::require(a.cols() == b.rows(), "maxplus_matmul: inner dimensions differ");
  Matrix<Q> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Extended<Q> acc = Extended<Q>::eps();
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = tmax(acc, tadd(a(i, k), b(k, j), Context::MaxPlus));
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

template <typename Q>
Matrix<Q> minplus_matmul(const Matrix<Q>& a, const Matrix<Q>& b) {
  detail::require(a.cols() == b.rows(), "minplus_matmul: inner dimensions differ");
  Matrix<Q> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Extended<Q> acc = Extended<Q>::tau();
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = tmin(acc, tadd(a(i, k), b(k, j), Context::MinPlus));
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

/// Max-plus identity: 0 on the diagonal, ε elsewhere.
template <typename Q = Rational>
Matrix<Q> maxplus_identity(Eigen::Index n) {
  Matrix<Q> out = Matrix<Q>::Constant(n, n, Extended<Q>::eps());
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = Extended<Q>(0);
  return out;
}

/// Min-plus identity: 0 on the diagonal, τ elsewhere.
template <typename Q = Rational>
Matrix<Q> minplus_identity(Eigen::Index n) {
  Matrix<Q> out = Matrix<Q>::Constant(n, n, Extended<Q>::tau());
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = Extended<Q>(0);
  return out;
}

/// Entrywise `a <= b` under the total order of the extended line.
template <typename DerivedA, typename DerivedB>
bool dominated_by(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("dominated_by: shapes differ");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (b(i, j) < a(i, j)) return false;
  return true;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_finite()) return false;
  return true;
}

}  // namespace mmpx
