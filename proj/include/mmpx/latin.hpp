#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "mmpx/bipartite.hpp"
#include "mmpx/tropical.hpp"

namespace mmpx {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// True iff every row and every column of `m` is a permutation of 1..n.
/// Throws NotSquare for a non-square input.
bool validate_latin(const IntMatrix& m);

/// An order-n Latin square over the symbols 1..n. Always valid.
class LatinSquare {
 public:
  explicit LatinSquare(IntMatrix entries);

  int order() const { return static_cast<int>(entries_.rows()); }
  const IntMatrix& entries() const { return entries_; }
  int operator()(int i, int j) const { return entries_(i, j); }

  friend bool operator==(const LatinSquare& a, const LatinSquare& b) {
    return a.order() == b.order() && a.entries_ == b.entries_;
  }

 private:
  IntMatrix entries_;
};

/// entry(i, j) = ((i + j) mod n) + 1 with 0-based i, j.
LatinSquare cyclic_latin(int n);

/// The cyclic square under seeded row, column and symbol permutations.
/// Deterministic in (n, seed); not uniform over all Latin squares.
LatinSquare random_latin(int n, std::uint64_t seed);

struct MaskSpec {
  enum class Kind { None, Eps, Tau };

  Kind kind = Kind::None;
  std::optional<int> symbol;  // defaults to the order of the square

  static MaskSpec none() { return {}; }
  static MaskSpec eps(std::optional<int> symbol = std::nullopt) { return {Kind::Eps, symbol}; }
  static MaskSpec tau(std::optional<int> symbol = std::nullopt) { return {Kind::Tau, symbol}; }

  /// Parses `none`, `eps`, `tau`, `eps:<k>` or `tau:<k>`.
  static MaskSpec parse(std::string_view text);
  std::string to_string() const;
};

/// Converts the square to a tropical matrix, replacing every occurrence of
/// the mask symbol by ε or τ.
TropicalMatrix apply_mask(const LatinSquare& square, const MaskSpec& mask);

/// One of the four systems formed from a pair of squares: A may carry ε
/// only, B may carry τ only.
BipartiteSystem<Rational> build_system(const LatinSquare& la, const LatinSquare& lb, const MaskSpec& mask_a,
                                       const MaskSpec& mask_b);

/// The four entry variants: case1 none/none, case2 ε/none, case3 none/τ,
/// case4 ε/τ (mask symbol n).
enum class Variant { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

Variant parse_variant(std::string_view text);
std::string to_string(Variant v);
MaskSpec mask_a_of(Variant v);
MaskSpec mask_b_of(Variant v);

/// The A-square and B-square drawn for a seed. Shared by `gen` and `bench`.
LatinSquare seeded_square_a(int n, std::uint64_t seed);
LatinSquare seeded_square_b(int n, std::uint64_t seed);

BipartiteSystem<Rational> make_variant_system(int n, std::uint64_t seed, Variant variant);

/// The order-4 ε/τ reference instance used throughout the tests and the
/// fixture files under data/: A and B are Latin squares with symbol 4
/// masked.
BipartiteSystem<Rational> reference_system();

/// Its alternating start (0,1,0,1; 1,0,1,0).
StateVector reference_start();

}  // namespace mmpx
