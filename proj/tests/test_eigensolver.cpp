#include <doctest.h>

#include <cstdlib>
#include <span>
#include <vector>

#include "mmpx/eigensolver.hpp"
#include "mmpx/latin.hpp"
#include "mmpx/oracle.hpp"
#include "support.hpp"

using namespace mmpx;
using namespace mmpx::test;

namespace {

// N through the oracle: the naive M followed by a −λ shift of every finite entry.
StateVector oracle_N(const BipartiteSystem<Rational>& sys, const Rational& lambda, const StateVector& x) {
  StateVector y = oracle::naive_apply_M(sys.a(), sys.b(), x);
  for (Eigen::Index i = 0; i < y.u.size(); ++i)
    if (y.u(i).is_finite()) y.u(i) = ExtendedValue(Rational(y.u(i).value() - lambda));
  for (Eigen::Index j = 0; j < y.w.size(); ++j)
    if (y.w(j).is_finite()) y.w(j) = ExtendedValue(Rational(y.w(j).value() - lambda));
  return y;
}

bool oracle_valid(const BipartiteSystem<Rational>& sys, const Rational& lambda, const StateVector& v) {
  const TropicalVector res = oracle::naive_residual(sys.a(), sys.b(), lambda, v);
  for (Eigen::Index i = 0; i < res.size(); ++i)
    if (!(res(i) == ExtendedValue(0))) return false;
  return true;
}

BipartiteSystem<Rational> one_by_one() { return BipartiteSystem<Rational>(mat({{3}}), mat({{1}})); }

// A general 3×3 system whose cycle supremum is not yet a fixed point of N.
BipartiteSystem<Rational> continuation_system() {
  return BipartiteSystem<Rational>(mat({{1, -3, 3}, {2, 1, kEps}, {-1, 0, 3}}),
                                   mat({{1, kTau, -3}, {-2, -1, -3}, {kTau, -3, kTau}}));
}
StateVector continuation_start() { return state({1, -1, 2}, {2, 0, -2}); }

LatinSquare section_square() {
  IntMatrix m(4, 4);
  m << 3, 2, 4, 1, 4, 1, 3, 2, 2, 4, 1, 3, 1, 3, 2, 4;
  return LatinSquare(m);
}

}  // namespace

TEST_CASE("solve_fixedpoint on the reference instance") {
  const auto result = solve_fixedpoint(ref_system(), q(2), ref_x0(), 1000);
  CHECK(result.pair.lambda == 2);
  CHECK(result.pair.v == ref_v_fixed());
  CHECK(result.trace.s == 0);
  CHECK(result.trace.r == 6);
  CHECK(result.trace.continuation_steps == 0);
  CHECK(result.trace.continuation.empty());
  CHECK(result.trace.map_applications == 7);
  CHECK_FALSE(result.trace.c.has_value());
  CHECK(result.trace.iterates == ref_normalized_run());
}

TEST_CASE("solve_fixedpoint on the 1x1 system") {
  // N: (u; w) -> (1 + w; -1 + u). From (0; 0) the orbit is (0; 0), (1; -1),
  // (0; 0), whose supremum (1; 0) is already fixed.
  const auto sys = one_by_one();
  const auto result = solve_fixedpoint(sys, q(2), state({0}, {0}), 100);
  CHECK(result.trace.s == 0);
  CHECK(result.trace.r == 2);
  CHECK(result.trace.iterates[1] == state({1}, {-1}));
  CHECK(result.trace.candidate == state({1}, {0}));
  CHECK(result.trace.continuation_steps == 0);
  const auto& v = result.pair.v;
  CHECK(v.u(0).value() - v.w(0).value() == 1);
  CHECK(verify_eigenpair(sys, result.pair).valid);
  CHECK(oracle_valid(sys, q(2), v));
}

TEST_CASE("solve_fixedpoint with a wrong lambda does not converge") {
  const auto sys = ref_system();
  try {
    (void)solve_fixedpoint(sys, q(3), ref_x0(), 50);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.applications() == 50);
  }

  std::vector<StateVector> orbit{ref_x0()};
  for (int l = 0; l < 50; ++l) orbit.push_back(oracle_N(sys, q(3), orbit.back()));
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = i + 1; j < orbit.size(); ++j) REQUIRE_FALSE(orbit[i] == orbit[j]);
}

TEST_CASE("solve_fixedpoint continuation branch") {
  const auto sys = continuation_system();
  const Rational lambda = q(-1, 4);
  const auto result = solve_fixedpoint(sys, lambda, continuation_start(), 1000);
  const auto& tr = result.trace;

  const std::vector<StateVector> expected{
      state({1, -1, 2}, {2, 0, -2}),
      state({q(13, 4), q(17, 4), q(5, 4)}, {q(-3, 4), q(-7, 4), q(-15, 4)}),
      state({q(1, 2), q(3, 2), q(-1, 2)}, {q(-3, 2), q(-3, 2), q(3, 2)}),
      state({q(19, 4), q(3, 4), q(19, 4)}, {q(-13, 4), q(-13, 4), q(-5, 4)}),
      state({2, -1, 2}, {2, 0, -2}),
      state({q(13, 4), q(17, 4), q(5, 4)}, {q(-3, 4), q(-7, 4), q(-15, 4)}),
  };
  CHECK(tr.iterates == expected);
  for (std::size_t l = 0; l + 1 < expected.size(); ++l) CHECK(oracle_N(sys, lambda, expected[l]) == expected[l + 1]);

  CHECK(tr.s == 1);
  CHECK(tr.r == 5);
  CHECK(tr.candidate == state({q(19, 4), q(17, 4), q(19, 4)}, {2, 0, q(3, 2)}));
  CHECK_FALSE(tr.candidate_image == tr.candidate);
  CHECK(tr.continuation_steps == 1);
  CHECK(tr.continuation.size() == 3);
  CHECK(tr.map_applications == tr.r + 1 + tr.continuation_steps);
  for (std::size_t t = 0; t + 1 < tr.continuation.size(); ++t) {
    CHECK(dominated_by(tr.continuation[t], tr.continuation[t + 1]));
    CHECK(oracle_N(sys, lambda, tr.continuation[t]) == tr.continuation[t + 1]);
  }

  const StateVector v = state({q(19, 4), q(17, 4), q(19, 4)}, {2, 2, q(3, 2)});
  CHECK(result.pair.v == v);
  CHECK(oracle_N(sys, lambda, v) == v);
  CHECK(oracle_valid(sys, lambda, v));
}

TEST_CASE("solve_fixedpoint preconditions") {
  const auto sys = ref_system();
  CHECK_THROWS_AS(solve_fixedpoint(sys, q(2), state({0}, {0}), 10), DimensionMismatch);
  CHECK_THROWS_AS(solve_fixedpoint(sys, q(2), state({0, 0, 0, kEps}, {0, 0, 0, 0}), 10), InvalidArgument);
  CHECK_THROWS_AS(solve_fixedpoint(sys, q(2), ref_x0(), 0), InvalidArgument);
  CHECK_THROWS_AS(solve_fixedpoint(sys, q(2), ref_x0(), 5), NonConvergence);
  CHECK_NOTHROW(solve_fixedpoint(sys, q(2), ref_x0(), 6));
}

TEST_CASE("latin_eigenvalue") {
  CHECK(latin_eigenvalue(ref_system()) == 2);
  CHECK(latin_eigenvalue(one_by_one()) == 2);
  const auto l = section_square();
  const auto sys = build_system(l, l, MaskSpec::none(), MaskSpec::none());
  CHECK(latin_eigenvalue(sys) == q(5, 2));
  const auto power = solve_power(sys, sys.zeros(), 1000);
  CHECK(power.pair.lambda == q(5, 2));
  CHECK(verify_eigenpair(sys, power.pair).valid);
}

TEST_CASE("solve_latin") {
  SUBCASE("reference start") {
    const auto result = solve_latin(ref_system(), ref_x0(), 1000);
    CHECK(result.pair.lambda == 2);
    CHECK(result.pair.v == ref_v_fixed());
  }
  SUBCASE("zero start") {
    const auto sys = ref_system();
    const auto result = solve_latin(sys, sys.zeros(), 1000);
    CHECK(result.pair.lambda == 2);
    CHECK(verify_eigenpair(sys, result.pair).valid);
    CHECK(oracle_valid(sys, q(2), result.pair.v));
  }
  SUBCASE("1x1") {
    const auto result = solve_latin(one_by_one(), state({0}, {0}), 100);
    CHECK(result.pair.lambda == 2);
    CHECK(result.pair.v.u(0).value() - result.pair.v.w(0).value() == 1);
  }
}

TEST_CASE("solve_power on the reference instance") {
  const auto result = solve_power(ref_system(), ref_x0(), 1000);
  CHECK(result.pair.lambda == 2);
  CHECK(result.pair.v == ref_v_power());
  CHECK(result.trace.s == 0);
  CHECK(result.trace.r == 6);
  REQUIRE(result.trace.c.has_value());
  CHECK(*result.trace.c == 12);
  CHECK(result.trace.continuation_steps == 0);
  CHECK(result.trace.map_applications == 7);
  CHECK(result.trace.iterates == ref_plain_run());
}

TEST_CASE("solve_power on the 1x1 system") {
  const auto sys = one_by_one();
  const auto result = solve_power(sys, state({0}, {0}), 100);
  CHECK(result.trace.iterates == std::vector<StateVector>{state({0}, {0}), state({3}, {1}), state({4}, {4})});
  CHECK(result.trace.s == 0);
  CHECK(result.trace.r == 2);
  CHECK(*result.trace.c == 4);
  CHECK(result.pair.lambda == 2);
  CHECK(result.pair.v == state({3}, {2}));
  CHECK(oracle_valid(sys, q(2), result.pair.v));
}

TEST_CASE("solve_power from an eigenvector repeats after one step") {
  const auto result = solve_power(ref_system(), ref_v_power(), 10);
  CHECK(result.trace.s == 0);
  CHECK(result.trace.r == 1);
  CHECK(*result.trace.c == 2);
  CHECK(result.pair.lambda == 2);
  CHECK(result.pair.v == ref_v_power());
}

TEST_CASE("solve_power continuation branch") {
  const auto sys = continuation_system();
  const auto result = solve_power(sys, continuation_start(), 1000);
  const auto& tr = result.trace;
  CHECK(tr.continuation_steps >= 1);
  CHECK_FALSE(tr.candidate_image == shift_state(result.pair.lambda, tr.candidate));
  for (std::size_t t = 0; t + 1 < tr.continuation.size(); ++t)
    CHECK(oracle::naive_apply_M(sys.a(), sys.b(), tr.continuation[t]) == tr.continuation[t + 1]);
  CHECK(result.pair.lambda == q(-1, 4));
  CHECK(oracle_valid(sys, result.pair.lambda, result.pair.v));
}

TEST_CASE("solve_power caps the first phase") {
  CHECK_THROWS_AS(solve_power(ref_system(), ref_x0(), 5), NonConvergence);
  CHECK_THROWS_AS(solve_power(ref_system(), ref_x0(), 0), InvalidArgument);
}

TEST_CASE("detect_affine_repeat") {
  const auto plain = ref_plain_run();
  const auto hit = detect_affine_repeat(std::span<const StateVector>(plain).first(6), plain[6]);
  REQUIRE(hit.has_value());
  CHECK(hit->s == 0);
  CHECK(hit->c == 12);

  const auto normalized = ref_normalized_run();
  const auto exact = detect_affine_repeat(std::span<const StateVector>(normalized).first(6), normalized[6], true);
  REQUIRE(exact.has_value());
  CHECK(exact->s == 0);
  CHECK(exact->c == 0);

  const std::vector<StateVector> single{state({0}, {0})};
  CHECK_FALSE(detect_affine_repeat(std::span<const StateVector>(single), state({1}, {2})).has_value());
  CHECK_FALSE(detect_affine_repeat(std::span<const StateVector>(single), state({1}, {1}), true).has_value());
  CHECK(detect_affine_repeat(std::span<const StateVector>(single), state({1}, {1}))->c == 1);
}

TEST_CASE("property: the hash index finds the same repeat as the linear scan") {
  Gen gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = gen.integer(1, 4);
    const auto n = gen.integer(1, 4);
    const auto sys = gen.system(m, n);
    const auto x0 = gen.finite_state(m, n);
    for (bool affine : {false, true}) {
      SolverTrace<Rational> trace;
      const Rational lambda = gen.rational(3);
      const auto nsys = normalize(sys, lambda);
      const auto step = [&](const StateVector& x) { return affine ? apply_M(sys, x) : apply_N(nsys, x); };
      try {
        const auto hit = detail::run_until_repeat(trace, x0, 300, affine, step, "test");
        const auto history = std::span<const StateVector>(trace.iterates).first(trace.r);
        const auto scan = detect_affine_repeat(history, trace.iterates.back(), !affine);
        REQUIRE(scan.has_value());
        REQUIRE(scan->s == hit.s);
        REQUIRE(scan->c == hit.c);
        for (std::size_t k = 1; k < trace.r; ++k)
          REQUIRE_FALSE(detect_affine_repeat(std::span<const StateVector>(trace.iterates).first(k),
                                             trace.iterates[k], !affine)
                            .has_value());
      } catch (const NonConvergence&) {
        // A wrong λ may drift forever; only converged runs are compared.
      }
    }
  }
}

TEST_CASE("verify_eigenpair") {
  const auto sys = ref_system();
  const auto fixed = verify_eigenpair(sys, EigenPair<Rational>{q(2), ref_v_fixed()});
  CHECK(fixed.valid);
  CHECK((apply_M(sys, ref_v_fixed()).stacked() == vec({4, 4, 3, 4, 3, 2, 3, 3})));
  CHECK(verify_eigenpair(sys, EigenPair<Rational>{q(2), ref_v_power()}).valid);

  StateVector bumped = ref_v_fixed();
  bumped.u(0) = ExtendedValue(3);
  const auto bad = verify_eigenpair(sys, EigenPair<Rational>{q(2), bumped});
  CHECK_FALSE(bad.valid);
  CHECK((bad.residual == oracle::naive_residual(sys.a(), sys.b(), q(2), bumped)));
  CHECK_FALSE(oracle_valid(sys, q(2), bumped));

  const auto off = verify_eigenpair(sys, EigenPair<Rational>{q(5, 2), ref_v_fixed()});
  CHECK_FALSE(off.valid);
  for (Eigen::Index i = 0; i < off.residual.size(); ++i) CHECK(off.residual(i) == ExtendedValue(q(-1, 2)));

  CHECK_THROWS_AS(verify_eigenpair(sys, EigenPair<Rational>{q(2), state({1}, {1})}), DimensionMismatch);
}

TEST_CASE("property: solver outputs satisfy the eigen-equations on Latin systems") {
  Gen gen(32);
  int converged = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(gen.integer(2, 7));
    const auto variant = static_cast<Variant>(gen.integer(1, 4));
    const auto sys = make_variant_system(n, gen.engine()(), variant);
    StateVector x0 = gen.finite_state(n, n);
    try {
      const auto latin = solve_latin(sys, x0, 2000);
      const auto power = solve_power(sys, x0, 2000);
      ++converged;
      const auto nsys = normalize(sys, latin.pair.lambda);
      REQUIRE(apply_N(nsys, latin.pair.v) == latin.pair.v);
      REQUIRE(dominated_by(latin.trace.candidate, latin.trace.candidate_image));
      REQUIRE(verify_eigenpair(sys, latin.pair).valid);
      REQUIRE(verify_eigenpair(sys, power.pair).valid);
      REQUIRE(latin.pair.lambda == power.pair.lambda);
      REQUIRE(latin.trace.map_applications >= latin.trace.r + latin.trace.continuation_steps);
      REQUIRE(power.trace.map_applications >= power.trace.r + power.trace.continuation_steps);
      const Rational alpha = gen.rational();
      REQUIRE(verify_eigenpair(sys, EigenPair<Rational>{latin.pair.lambda, shift_state(alpha, latin.pair.v)}).valid);
    } catch (const NonConvergence&) {
    }
  }
  CHECK(converged > 0);
}

TEST_CASE("default_max_iter honours the environment") {
  ::unsetenv("MMPX_MAX_ITER");
  CHECK(default_max_iter() == kDefaultMaxIter);
  ::setenv("MMPX_MAX_ITER", "42", 1);
  CHECK(default_max_iter() == 42);
  ::setenv("MMPX_MAX_ITER", "junk", 1);
  CHECK(default_max_iter() == kDefaultMaxIter);
  ::unsetenv("MMPX_MAX_ITER");
}
