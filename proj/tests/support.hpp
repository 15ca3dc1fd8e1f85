#pragma once

// Fixtures and generators shared by the test binaries.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

#include "mmpx/bipartite.hpp"
#include "mmpx/io.hpp"
#include "mmpx/tropical.hpp"

namespace mmpx::test {

inline const ExtendedValue kEps = ExtendedValue::eps();
inline const ExtendedValue kTau = ExtendedValue::tau();

// cpp_rational rejects a negative denominator, so the sign moves to the
// numerator first.
inline Rational q(long long num, long long den = 1) { return den < 0 ? Rational(-num, -den) : Rational(num, den); }

inline TropicalVector vec(std::initializer_list<ExtendedValue> xs) {
  TropicalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline TropicalMatrix mat(std::initializer_list<std::initializer_list<ExtendedValue>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  TropicalMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline StateVector state(std::initializer_list<ExtendedValue> u, std::initializer_list<ExtendedValue> w) {
  return StateVector(vec(u), vec(w));
}

// The reference instance typed in entry by entry, independent of the Latin
// module.
inline TropicalMatrix ref_a() {
  return mat({{3, 2, kEps, 1}, {kEps, 1, 3, 2}, {2, 3, 1, kEps}, {1, kEps, 2, 3}});
}
inline TropicalMatrix ref_b() {
  return mat({{2, 3, kTau, 1}, {3, kTau, 1, 2}, {1, 2, 3, kTau}, {kTau, 1, 2, 3}});
}
inline TropicalMatrix ref_a_lambda() {
  return mat({{1, 0, kEps, -1}, {kEps, -1, 1, 0}, {0, 1, -1, kEps}, {-1, kEps, 0, 1}});
}
inline TropicalMatrix ref_b_lambda() {
  return mat({{0, 1, kTau, -1}, {1, kTau, -1, 0}, {-1, 0, 1, kTau}, {kTau, -1, 0, 1}});
}
inline BipartiteSystem<Rational> ref_system() { return BipartiteSystem<Rational>(ref_a(), ref_b()); }
inline StateVector ref_x0() { return state({0, 1, 0, 1}, {1, 0, 1, 0}); }

// x*(0..6) of the normalized run and x(0..6) of the plain run.
inline std::vector<StateVector> ref_normalized_run() {
  return {state({0, 1, 0, 1}, {1, 0, 1, 0}),   state({2, 2, 1, 1}, {0, -1, -1, 0}),
          state({1, 0, 0, 1}, {0, 0, 1, 1}),   state({1, 2, 1, 2}, {0, -1, 0, -1}),
          state({1, 1, 0, 0}, {1, 0, 0, 1}),   state({2, 1, 1, 2}, {-1, -1, 0, 0}),
          state({0, 1, 0, 1}, {1, 0, 1, 0})};
}
inline std::vector<StateVector> ref_plain_run() {
  return {state({0, 1, 0, 1}, {1, 0, 1, 0}),     state({4, 4, 3, 3}, {2, 1, 1, 2}),
          state({5, 4, 4, 5}, {4, 4, 5, 5}),     state({7, 8, 7, 8}, {6, 5, 6, 5}),
          state({9, 9, 8, 8}, {9, 8, 8, 9}),     state({12, 11, 11, 12}, {9, 9, 10, 10}),
          state({12, 13, 12, 13}, {13, 12, 13, 12})};
}
inline StateVector ref_v_fixed() { return state({2, 2, 1, 2}, {1, 0, 1, 1}); }
inline StateVector ref_v_power() { return state({12, 12, 11, 12}, {11, 10, 11, 11}); }

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(int one_in) { return rng_() % static_cast<std::uint64_t>(one_in) == 0; }

  /// Small rational p/q with q in 1..4.
  Rational rational(long long span = 6) { return Rational(integer(-span * 4, span * 4), integer(1, 4)); }

  /// Entry from {−5..5, ε, τ}.
  ExtendedValue entry() {
    switch (integer(0, 12)) {
      case 0:
        return kEps;
      case 1:
        return kTau;
      default:
        return ExtendedValue(integer(-5, 5));
    }
  }

  ExtendedValue finite() { return ExtendedValue(rational()); }

  TropicalMatrix matrix(Eigen::Index rows, Eigen::Index cols) {
    TropicalMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = entry();
    return m;
  }

  TropicalVector vector(Eigen::Index len) {
    TropicalVector v(len);
    for (Eigen::Index i = 0; i < len; ++i) v(i) = entry();
    return v;
  }

  StateVector finite_state(Eigen::Index m, Eigen::Index n) {
    StateVector x{TropicalVector(m), TropicalVector(n)};
    for (Eigen::Index i = 0; i < m; ++i) x.u(i) = finite();
    for (Eigen::Index j = 0; j < n; ++j) x.w(j) = finite();
    return x;
  }

  /// A valid system: A over Q ∪ {ε}, B over Q ∪ {τ}, every row with a
  /// finite entry.
  BipartiteSystem<Rational> system(Eigen::Index m, Eigen::Index n) {
    TropicalMatrix a(m, n);
    TropicalMatrix b(n, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = coin(4) ? kEps : ExtendedValue(integer(-5, 5));
      a(i, integer(0, n - 1)) = ExtendedValue(integer(-5, 5));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < m; ++i) b(j, i) = coin(4) ? kTau : ExtendedValue(integer(-5, 5));
      b(j, integer(0, m - 1)) = ExtendedValue(integer(-5, 5));
    }
    return BipartiteSystem<Rational>(std::move(a), std::move(b));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string data_path(const std::string& name) { return std::string(MMPX_DATA_DIR) + "/" + name; }

}  // namespace mmpx::test
