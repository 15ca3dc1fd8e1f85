#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "mmpx/errors.hpp"
#include "mmpx/extended.hpp"
#include "mmpx/tropical.hpp"

namespace mmpx {

/// x = (u; w): u is the max-plus block (length m), w the min-plus block
/// (length n).
template <typename Q>
struct State {
  Vector<Q> u;
  Vector<Q> w;

  State() = default;
  State(Vector<Q> u_block, Vector<Q> w_block) : u(std::move(u_block)), w(std::move(w_block)) {}

  /// Splits a stacked (m+n)-vector after its first m entries.
  static State from_stacked(const Vector<Q>& x, Eigen::Index m) {
    if (m < 0 || m > x.size()) throw DimensionMismatch("from_stacked: split point outside vector");
    return State(x.head(m), x.tail(x.size() - m));
  }

  Vector<Q> stacked() const {
    Vector<Q> x(u.size() + w.size());
    x << u, w;
    return x;
  }

  Eigen::Index size() const { return u.size() + w.size(); }

  /// Entry i of the stacked vector.
  const Extended<Q>& operator[](Eigen::Index i) const { return i < u.size() ? u(i) : w(i - u.size()); }

  bool is_finite() const { return all_finite(u) && all_finite(w); }

  friend bool operator==(const State& a, const State& b) {
    return a.u.size() == b.u.size() && a.w.size() == b.w.size() && a.u == b.u && a.w == b.w;
  }

  /// "(u1, ..., um; w1, ..., wn)"
  friend std::ostream& operator<<(std::ostream& os, const State& x) {
    os << '(';
    for (Eigen::Index i = 0; i < x.u.size(); ++i) os << (i ? ", " : "") << x.u(i);
    os << ';';
    for (Eigen::Index j = 0; j < x.w.size(); ++j) os << (j ? ", " : " ") << x.w(j);
    return os << ')';
  }
};

using StateVector = State<Rational>;

template <typename Q>
std::size_t hash_value(const State<Q>& x) {
  std::size_t h = static_cast<std::size_t>(x.u.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) h = detail::hash_combine(h, hash_value(x[i]));
  return h;
}

/// Entrywise x <= y.
template <typename Q>
bool dominated_by(const State<Q>& x, const State<Q>& y) {
  return dominated_by(x.u, y.u) && dominated_by(x.w, y.w);
}

/**
 * The pair (A, B) of a bipartite min-max-plus system
 *
 *   u(l+1) = A ⊗ w(l)      (max-plus, A is m×n over Q ∪ {ε})
 *   w(l+1) = B ⊗′ u(l)     (min-plus, B is n×m over Q ∪ {τ})
 *
 * Construction rejects τ in A, ε in B, non-conjugate shapes and rows
 * without a finite entry, so the map sends finite states to finite states.
 */
template <typename Q>
class BipartiteSystem {
 public:
  BipartiteSystem(Matrix<Q> a, Matrix<Q> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() < 1 || a_.cols() < 1) throw DimensionMismatch("system: A must be non-empty");
    if (b_.rows() != a_.cols() || b_.cols() != a_.rows())
      throw DimensionMismatch("system: A is " + shape(a_) + " but B is " + shape(b_));
    check_rows(a_, "A", [](const Extended<Q>& x) { return x.is_tau(); });
    check_rows(b_, "B", [](const Extended<Q>& x) { return x.is_eps(); });
  }

  const Matrix<Q>& a() const { return a_; }
  const Matrix<Q>& b() const { return b_; }
  Eigen::Index m() const { return a_.rows(); }
  Eigen::Index n() const { return a_.cols(); }

  /// Builds a state and checks its block lengths against this system.
  State<Q> state(Vector<Q> u, Vector<Q> w) const {
    State<Q> x(std::move(u), std::move(w));
    check_state(x);
    return x;
  }

  State<Q> state_from_stacked(const Vector<Q>& x) const {
    if (x.size() != m() + n())
      throw DimensionMismatch("state has " + std::to_string(x.size()) + " entries, system needs " +
                              std::to_string(m() + n()));
    return State<Q>::from_stacked(x, m());
  }

  State<Q> zeros() const { return State<Q>(Vector<Q>::Constant(m(), Extended<Q>(0)), Vector<Q>::Constant(n(), Extended<Q>(0))); }

  void check_state(const State<Q>& x) const {
    if (x.u.size() != m() || x.w.size() != n())
      throw DimensionMismatch("state is (" + std::to_string(x.u.size()) + ";" + std::to_string(x.w.size()) +
                              "), system needs (" + std::to_string(m()) + ";" + std::to_string(n()) + ")");
  }

  friend bool operator==(const BipartiteSystem& x, const BipartiteSystem& y) {
    return x.a_.rows() == y.a_.rows() && x.a_.cols() == y.a_.cols() && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  static std::string shape(const Matrix<Q>& x) { return std::to_string(x.rows()) + "x" + std::to_string(x.cols()); }

  template <typename Forbidden>
  static void check_rows(const Matrix<Q>& x, const char* name, Forbidden forbidden) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      bool finite = false;
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        if (forbidden(x(i, j)))
          throw InvalidArgument(std::string("system: ") + name + "(" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") is " + to_string(x(i, j)));
        finite = finite || x(i, j).is_finite();
      }
      if (!finite) throw InvalidArgument(std::string("system: row ") + std::to_string(i + 1) + " of " + name + " has no finite entry");
    }
  }

  Matrix<Q> a_;
  Matrix<Q> b_;
};

/// The shifted pair A_λ = (−λ) ⊗ A, B_λ = (−λ) ⊗ B, whose map has the
/// λ-eigenvectors of the original system as fixed points.
template <typename Q>
struct NormalizedSystem {
  Matrix<Q> a_lambda;
  Matrix<Q> b_lambda;
  Q lambda;
};

/// One step of the system map: (A ⊗ w; B ⊗′ u). Both blocks read the input
/// state.
template <typename Q>
State<Q> apply_M(const BipartiteSystem<Q>& sys, const State<Q>& x) {
  sys.check_state(x);
  return State<Q>(maxplus_matvec(sys.a(), x.w), minplus_matvec(sys.b(), x.u));
}

template <typename Q>
NormalizedSystem<Q> normalize(const BipartiteSystem<Q>& sys, const Q& lambda) {
  const Q shift = -lambda;
  return NormalizedSystem<Q>{scalar_mul(shift, sys.a(), Context::MaxPlus), scalar_mul(shift, sys.b(), Context::MinPlus),
                             lambda};
}

template <typename Q>
State<Q> apply_N(const NormalizedSystem<Q>& nsys, const State<Q>& x) {
  if (x.u.size() != nsys.a_lambda.rows() || x.w.size() != nsys.b_lambda.rows())
    throw DimensionMismatch("apply_N: state does not match normalized system");
  return State<Q>(maxplus_matvec(nsys.a_lambda, x.w), minplus_matvec(nsys.b_lambda, x.u));
}

/// Entrywise maximum x_0 ⊕ x_1 ⊕ ... of a non-empty list.
template <typename Q>
State<Q> state_sup(std::span<const State<Q>> xs) {
  if (xs.empty()) throw EmptyList("state_sup of an empty list");
  State<Q> acc = xs.front();
  for (const auto& x : xs.subspan(1)) {
    if (x.u.size() != acc.u.size() || x.w.size() != acc.w.size()) throw DimensionMismatch("state_sup: mixed shapes");
    acc.u = acc.u.binaryExpr(x.u, [](const Extended<Q>& p, const Extended<Q>& q) { return tmax(p, q); }).eval();
    acc.w = acc.w.binaryExpr(x.w, [](const Extended<Q>& p, const Extended<Q>& q) { return tmax(p, q); }).eval();
  }
  return acc;
}

/// c ⊗ x.
template <typename Q>
State<Q> shift_state(const Q& c, const State<Q>& x) {
  return State<Q>(scalar_mul(c, x.u, Context::MaxPlus), scalar_mul(c, x.w, Context::MinPlus));
}

}  // namespace mmpx

template <typename Q>
struct std::hash<mmpx::State<Q>> {
  std::size_t operator()(const mmpx::State<Q>& x) const { return mmpx::hash_value(x); }
};
