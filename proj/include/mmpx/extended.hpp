#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "mmpx/errors.hpp"

namespace mmpx {

/// Exact field used throughout: unbounded numerator and denominator, always
/// held in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Renders `q` as an integer when its denominator is 1, otherwise as `p/q`.
template <typename Q>
std::string format_rational(const Q& q) {
  std::ostringstream os;
  const auto num = numerator(q);
  const auto den = denominator(q);
  os << num;
  if (den != 1) os << '/' << den;
  return os.str();
}

/**
 * A scalar of the extended line Q ∪ {ε, τ} with ε = −∞ and τ = +∞.
 *
 * The same type serves both semirings: max-plus matrices use ε as the zero
 * and never hold τ; min-plus matrices use τ as the zero and never hold ε.
 * Which infinity wins when both meet in a sum is decided by the caller's
 * context (see tadd in tropical.hpp), not by this type.
 *
 * Default construction yields finite 0, the multiplicative unit of both
 * semirings.
 */
template <typename Q>
class Extended {
 public:
  using value_type = Q;
  enum class Kind : std::uint8_t { NegInf = 0, Finite = 1, PosInf = 2 };

  Extended() = default;
  Extended(Q value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Extended(I value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  static Extended eps() { return Extended(Kind::NegInf); }
  static Extended tau() { return Extended(Kind::PosInf); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_eps() const noexcept { return kind_ == Kind::NegInf; }
  bool is_tau() const noexcept { return kind_ == Kind::PosInf; }

  const Q& value() const {
    if (!is_finite()) throw InvalidArgument("value() of an infinite scalar");
    return value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::Finite || a.value_ == b.value_) return std::strong_ordering::equal;
    return a.value_ < b.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  friend std::ostream& operator<<(std::ostream& os, const Extended& x) { return os << to_string(x); }

  friend std::string to_string(const Extended& x) {
    switch (x.kind_) {
      case Kind::NegInf:
        return "-inf";
      case Kind::PosInf:
        return "+inf";
      case Kind::Finite:
        break;
    }
    return format_rational(x.value_);
  }

 private:
  explicit Extended(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  Q value_{};  // zero whenever kind_ is infinite
};

using ExtendedValue = Extended<Rational>;

namespace detail {

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Residues modulo a fixed prime; equal rationals give equal residues because
// the representation is canonical.
template <typename Q>
std::size_t hash_rational(const Q& q) {
  constexpr long long kPrime = 2305843009213693951LL;  // 2^61 - 1
  const auto num = numerator(q);
  const auto den = denominator(q);
  const auto rn = static_cast<long long>(num % kPrime);
  const auto rd = static_cast<long long>(den % kPrime);
  return hash_combine(std::hash<long long>{}(rn), std::hash<long long>{}(rd));
}

}  // namespace detail

template <typename Q>
std::size_t hash_value(const Extended<Q>& x) {
  const auto tag = static_cast<std::size_t>(x.kind());
  if (!x.is_finite()) return detail::hash_combine(tag, 0);
  return detail::hash_combine(tag, detail::hash_rational(x.value()));
}

}  // namespace mmpx

template <typename Q>
struct std::hash<mmpx::Extended<Q>> {
  std::size_t operator()(const mmpx::Extended<Q>& x) const { return mmpx::hash_value(x); }
};

namespace Eigen {

template <typename Q>
struct NumTraits<mmpx::Extended<Q>> : GenericNumTraits<mmpx::Extended<Q>> {
  using Real = mmpx::Extended<Q>;
  using NonInteger = mmpx::Extended<Q>;
  using Literal = mmpx::Extended<Q>;
  using Nested = mmpx::Extended<Q>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
};

}  // namespace Eigen
