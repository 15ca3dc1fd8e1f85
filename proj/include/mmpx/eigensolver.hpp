#pragma once

// Eigenpairs of bipartite min-max-plus systems: M(v) = λ ⊗ v.
//
// Three solvers share one shape: iterate a map from a finite start, stop at
// the first repeat, build a candidate from the detected cycle, and if the
// candidate is not yet an eigenvector, keep iterating from it until it is.
//
//   solve_fixedpoint  iterate N (the λ-normalized map) to an exact repeat
//   solve_latin       as above with λ = (max A + min B) / 2
//   solve_power       iterate M to an affine repeat x(r) = c ⊗ x(s)

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mmpx/bipartite.hpp"
#include "mmpx/errors.hpp"
#include "mmpx/extended.hpp"
#include "mmpx/tropical.hpp"

namespace mmpx {

/// Per-phase cap on map applications when the caller does not give one.
inline constexpr std::size_t kDefaultMaxIter = 10'000;

template <typename Q>
struct EigenPair {
  Q lambda;
  State<Q> v;
};

/**
 * Everything a solve did. `iterates` holds x(0..r) of the first phase. When
 * the cycle candidate was not yet an eigenvector, `continuation` holds the
 * restarted run y(0..t) with y(0) = candidate, and the result is y(t).
 */
template <typename Q>
struct SolverTrace {
  std::vector<State<Q>> iterates;
  std::size_t s = 0;
  std::size_t r = 0;
  std::optional<Q> c;  // power solver only
  State<Q> candidate;  // cycle supremum (fixed-point) or weighted supremum (power)
  State<Q> candidate_image;
  std::vector<State<Q>> continuation;
  std::size_t continuation_steps = 0;
  std::size_t map_applications = 0;
};

template <typename Q>
struct SolveResult {
  EigenPair<Q> pair;
  SolverTrace<Q> trace;
};

template <typename Q>
struct Verification {
  bool valid = false;
  Vector<Q> residual;
};

template <typename Q>
struct AffineRepeat {
  std::size_t s;
  Q c;
};

/// If y − x is a constant vector, returns that constant. Both states must be
/// finite.
template <typename Q>
std::optional<Q> constant_difference(const State<Q>& x, const State<Q>& y) {
  if (x.u.size() != y.u.size() || x.w.size() != y.w.size())
    throw DimensionMismatch("constant_difference: mixed shapes");
  if (x.size() == 0) return Q(0);
  Q c = y[0].value() - x[0].value();
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (y[i].value() - x[i].value() != c) return std::nullopt;
  return c;
}

/// Smallest s with x_new = c ⊗ history[s]. With `require_zero_shift` only
/// c = 0 (an exact repeat) qualifies.
template <typename Q>
std::optional<AffineRepeat<Q>> detect_affine_repeat(std::span<const State<Q>> history, const State<Q>& x_new,
                                                    bool require_zero_shift = false) {
  for (std::size_t s = 0; s < history.size(); ++s) {
    if (require_zero_shift) {
      if (history[s] == x_new) return AffineRepeat<Q>{s, Q(0)};
    } else if (auto c = constant_difference(history[s], x_new)) {
      return AffineRepeat<Q>{s, *c};
    }
  }
  return std::nullopt;
}

namespace detail {

// Hash index over past iterates. Affine mode keys a state by x − x[0], so
// states that differ by a constant collide; candidates are then confirmed
// exactly, which makes the hash a pure accelerator.
template <typename Q>
class RepeatIndex {
 public:
  explicit RepeatIndex(bool affine) : affine_(affine) {}

  void insert(const State<Q>& x, std::size_t index) { buckets_[key(x)].push_back(index); }

  std::optional<AffineRepeat<Q>> find(std::span<const State<Q>> history, const State<Q>& x) const {
    auto it = buckets_.find(key(x));
    if (it == buckets_.end()) return std::nullopt;
    for (std::size_t s : it->second) {
      if (!affine_) {
        if (history[s] == x) return AffineRepeat<Q>{s, Q(0)};
      } else if (auto c = constant_difference(history[s], x)) {
        return AffineRepeat<Q>{s, *c};
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t key(const State<Q>& x) const {
    if (!affine_) return hash_value(x);
    std::size_t h = static_cast<std::size_t>(x.u.size());
    const Q& base = x[0].value();
    for (Eigen::Index i = 1; i < x.size(); ++i) h = hash_combine(h, hash_rational(Q(x[i].value() - base)));
    return h;
  }

  bool affine_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

template <typename Q>
void require_start(const BipartiteSystem<Q>& sys, const State<Q>& x0, std::size_t max_iter) {
  sys.check_state(x0);
  if (!x0.is_finite()) throw InvalidArgument("initial state must be finite");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
}

// Iterates `step` from x0 until the index reports a repeat. Fills iterates,
// s, r, c-candidate and the application count.
template <typename Q, typename Step>
AffineRepeat<Q> run_until_repeat(SolverTrace<Q>& trace, const State<Q>& x0, std::size_t max_iter, bool affine,
                                 Step step, const char* what) {
  RepeatIndex<Q> index(affine);
  trace.iterates.push_back(x0);
  index.insert(x0, 0);
  while (true) {
    if (trace.map_applications >= max_iter)
      throw NonConvergence(std::string(what) + ": no repeat within " + std::to_string(max_iter) + " applications",
                           trace.map_applications);
    State<Q> next = step(trace.iterates.back());
    ++trace.map_applications;
    if (auto hit = index.find(std::span<const State<Q>>(trace.iterates), next)) {
      trace.iterates.push_back(std::move(next));
      trace.s = hit->s;
      trace.r = trace.iterates.size() - 1;
      return *hit;
    }
    index.insert(next, trace.iterates.size());
    trace.iterates.push_back(std::move(next));
  }
}

}  // namespace detail

/// Verifies M(v) = λ ⊗ v exactly. residual_i = M(v)_i − (λ + v_i).
template <typename Q>
Verification<Q> verify_eigenpair(const BipartiteSystem<Q>& sys, const EigenPair<Q>& pair) {
  sys.check_state(pair.v);
  if (!pair.v.is_finite()) throw InvalidArgument("verify_eigenpair: eigenvector must be finite");
  const Vector<Q> image = apply_M(sys, pair.v).stacked();
  Verification<Q> out{true, Vector<Q>(image.size())};
  for (Eigen::Index i = 0; i < image.size(); ++i) {
    if (!image(i).is_finite()) {
      out.residual(i) = image(i);
    } else {
      out.residual(i) = Extended<Q>(image(i).value() - (pair.lambda + pair.v[i].value()));
    }
    out.valid = out.valid && out.residual(i) == Extended<Q>(0);
  }
  return out;
}

/**
 * Fixed-point iteration of the normalized map N for a given λ.
 *
 * Stops at the first exact repeat x*(r) = x*(s), takes the supremum of the
 * cycle x*(s) ⊕ ... ⊕ x*(r−1) and, if N does not fix it, iterates N from it
 * until two consecutive states agree. Each phase is capped at `max_iter`
 * applications. N(v) ≥ v for the cycle supremum and monotonicity of the
 * restarted run are checked as they happen.
 */
template <typename Q>
SolveResult<Q> solve_fixedpoint(const BipartiteSystem<Q>& sys, const Q& lambda, const State<Q>& x0,
                                std::size_t max_iter = kDefaultMaxIter) {
  detail::require_start(sys, x0, max_iter);
  const NormalizedSystem<Q> nsys = normalize(sys, lambda);
  const auto step = [&nsys](const State<Q>& x) { return apply_N(nsys, x); };

  SolverTrace<Q> trace;
  detail::run_until_repeat(trace, x0, max_iter, /*affine=*/false, step, "solve_fixedpoint");

  const auto cycle = std::span<const State<Q>>(trace.iterates).subspan(trace.s, trace.r - trace.s);
  trace.candidate = state_sup(cycle);
  trace.candidate_image = step(trace.candidate);
  ++trace.map_applications;
  if (!dominated_by(trace.candidate, trace.candidate_image))
    throw InvariantViolation("solve_fixedpoint: N(v) >= v failed for the cycle supremum");

  if (trace.candidate_image == trace.candidate) return {EigenPair<Q>{lambda, trace.candidate}, std::move(trace)};

  auto& ys = trace.continuation;
  ys.push_back(trace.candidate);
  ys.push_back(trace.candidate_image);
  std::size_t t = 0;
  while (!(ys[t + 1] == ys[t])) {
    if (t + 1 >= max_iter)
      throw NonConvergence("solve_fixedpoint: continuation did not settle within " + std::to_string(max_iter) +
                               " applications",
                           trace.map_applications);
    ++t;
    ys.push_back(step(ys[t]));
    ++trace.map_applications;
    if (!dominated_by(ys[t], ys[t + 1]))
      throw InvariantViolation("solve_fixedpoint: continuation iterates are not non-decreasing");
  }
  trace.continuation_steps = t;
  return {EigenPair<Q>{lambda, ys[t]}, std::move(trace)};
}

/// (max finite entry of A + min finite entry of B) / 2.
template <typename Q>
Q latin_eigenvalue(const BipartiteSystem<Q>& sys) {
  std::optional<Q> max_a;
  std::optional<Q> min_b;
  for (Eigen::Index i = 0; i < sys.a().size(); ++i) {
    const auto& x = sys.a().data()[i];
    if (x.is_finite() && (!max_a || *max_a < x.value())) max_a = x.value();
  }
  for (Eigen::Index i = 0; i < sys.b().size(); ++i) {
    const auto& x = sys.b().data()[i];
    if (x.is_finite() && (!min_b || x.value() < *min_b)) min_b = x.value();
  }
  if (!max_a) throw NoFiniteEntry("latin_eigenvalue: A has no finite entry");
  if (!min_b) throw NoFiniteEntry("latin_eigenvalue: B has no finite entry");
  return Q(*max_a + *min_b) / 2;
}

template <typename Q>
SolveResult<Q> solve_latin(const BipartiteSystem<Q>& sys, const State<Q>& x0, std::size_t max_iter = kDefaultMaxIter) {
  return solve_fixedpoint(sys, latin_eigenvalue(sys), x0, max_iter);
}

/**
 * Power iteration on M. Stops at the first affine repeat x(r) = c ⊗ x(s),
 * sets λ = c / (r − s) and
 *
 *   v = ⊕_{j=1..r−s} ((r − s − j)·λ) ⊗ x(s + j − 1).
 *
 * If M(v) ≠ λ ⊗ v, restarts from v until y(p+1) = λ ⊗ y(p) and returns y(p).
 */
template <typename Q>
SolveResult<Q> solve_power(const BipartiteSystem<Q>& sys, const State<Q>& x0, std::size_t max_iter = kDefaultMaxIter) {
  detail::require_start(sys, x0, max_iter);
  const auto step = [&sys](const State<Q>& x) { return apply_M(sys, x); };

  SolverTrace<Q> trace;
  const AffineRepeat<Q> hit = detail::run_until_repeat(trace, x0, max_iter, /*affine=*/true, step, "solve_power");
  trace.c = hit.c;
  const std::size_t period = trace.r - trace.s;
  const Q lambda = hit.c / Q(static_cast<long long>(period));

  std::vector<State<Q>> terms;
  terms.reserve(period);
  for (std::size_t j = 1; j <= period; ++j)
    terms.push_back(shift_state(Q(lambda * static_cast<long long>(period - j)), trace.iterates[trace.s + j - 1]));
  trace.candidate = state_sup(std::span<const State<Q>>(terms));
  trace.candidate_image = step(trace.candidate);
  ++trace.map_applications;

  if (trace.candidate_image == shift_state(lambda, trace.candidate))
    return {EigenPair<Q>{lambda, trace.candidate}, std::move(trace)};

  auto& ys = trace.continuation;
  ys.push_back(trace.candidate);
  ys.push_back(trace.candidate_image);
  std::size_t p = 0;
  while (!(ys[p + 1] == shift_state(lambda, ys[p]))) {
    if (p + 1 >= max_iter)
      throw NonConvergence("solve_power: continuation did not settle within " + std::to_string(max_iter) +
                               " applications",
                           trace.map_applications);
    ++p;
    ys.push_back(step(ys[p]));
    ++trace.map_applications;
  }
  trace.continuation_steps = p;
  return {EigenPair<Q>{lambda, ys[p]}, std::move(trace)};
}

/// Per-phase cap: MMPX_MAX_ITER when set to a positive integer, else
/// kDefaultMaxIter.
inline std::size_t default_max_iter() {
  if (const char* env = std::getenv("MMPX_MAX_ITER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxIter;
}

}  // namespace mmpx
