#include "mmpx/latin.hpp"

#include <charconv>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mmpx/errors.hpp"

namespace mmpx {
namespace {

// Fisher-Yates with an explicit draw so results do not depend on the
// standard library's shuffle or distribution implementations.
std::vector<int> permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_permutation_of_1_to_n(const auto& line, int n) {
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (Eigen::Index k = 0; k < line.size(); ++k) {
    const int x = line(k);
    if (x < 1 || x > n || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

}  // namespace

bool validate_latin(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw NotSquare("Latin square must be square, got " + std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()));
  const int n = static_cast<int>(m.rows());
  if (n < 1) return false;
  for (int i = 0; i < n; ++i)
    if (!is_permutation_of_1_to_n(m.row(i), n) || !is_permutation_of_1_to_n(m.col(i), n)) return false;
  return true;
}

LatinSquare::LatinSquare(IntMatrix entries) : entries_(std::move(entries)) {
  if (!validate_latin(entries_)) throw InvalidArgument("not a Latin square");
}

LatinSquare cyclic_latin(int n) {
  if (n < 1) throw InvalidOrder("Latin square order must be at least 1, got " + std::to_string(n));
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i + j) % n + 1;
  return LatinSquare(std::move(m));
}

LatinSquare random_latin(int n, std::uint64_t seed) {
  const LatinSquare base = cyclic_latin(n);
  std::mt19937_64 rng(seed);
  const auto rows = permutation(n, rng);
  const auto cols = permutation(n, rng);
  const auto symbols = permutation(n, rng);
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = symbols[static_cast<std::size_t>(base(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]) - 1)] + 1;
  return LatinSquare(std::move(m));
}

MaskSpec MaskSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  MaskSpec spec;
  if (head == "none") {
    if (colon != std::string_view::npos) throw InvalidArgument("mask 'none' takes no symbol");
    return spec;
  }
  if (head == "eps") {
    spec.kind = Kind::Eps;
  } else if (head == "tau") {
    spec.kind = Kind::Tau;
  } else {
    throw InvalidArgument("unknown mask '" + std::string(text) + "' (expected none, eps:<k> or tau:<k>)");
  }
  if (colon != std::string_view::npos) {
    const std::string_view digits = text.substr(colon + 1);
    int k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw InvalidArgument("bad mask symbol in '" + std::string(text) + "'");
    spec.symbol = k;
  }
  return spec;
}

std::string MaskSpec::to_string() const {
  std::string out = kind == Kind::None ? "none" : kind == Kind::Eps ? "eps" : "tau";
  if (kind != Kind::None && symbol) out += ":" + std::to_string(*symbol);
  return out;
}

TropicalMatrix apply_mask(const LatinSquare& square, const MaskSpec& mask) {
  const int n = square.order();
  const int symbol = mask.symbol.value_or(n);
  if (mask.kind != MaskSpec::Kind::None && (symbol < 1 || symbol > n))
    throw SymbolOutOfRange("mask symbol " + std::to_string(symbol) + " outside 1.." + std::to_string(n));
  const ExtendedValue hole = mask.kind == MaskSpec::Kind::Eps ? ExtendedValue::eps() : ExtendedValue::tau();
  TropicalMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = (mask.kind != MaskSpec::Kind::None && square(i, j) == symbol) ? hole : ExtendedValue(square(i, j));
  return out;
}

BipartiteSystem<Rational> build_system(const LatinSquare& la, const LatinSquare& lb, const MaskSpec& mask_a,
                                       const MaskSpec& mask_b) {
  if (la.order() != lb.order())
    throw OrderMismatch("Latin squares of orders " + std::to_string(la.order()) + " and " +
                        std::to_string(lb.order()));
  if (mask_a.kind == MaskSpec::Kind::Tau) throw InvalidArgument("A may not carry tau entries");
  if (mask_b.kind == MaskSpec::Kind::Eps) throw InvalidArgument("B may not carry eps entries");
  TropicalMatrix a = apply_mask(la, mask_a);
  TropicalMatrix b = apply_mask(lb, mask_b);
  // Each row holds every symbol once, so a row loses all finite entries only
  // when the order is 1 and that row is masked.
  const auto row_empty = [](const TropicalMatrix& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      bool finite = false;
      for (Eigen::Index j = 0; j < x.cols(); ++j) finite = finite || x(i, j).is_finite();
      if (!finite) return true;
    }
    return false;
  };
  if (row_empty(a) || row_empty(b)) throw DegenerateSystem("masking leaves a row without finite entries");
  return BipartiteSystem<Rational>(std::move(a), std::move(b));
}

Variant parse_variant(std::string_view text) {
  if (text == "case1") return Variant::Case1;
  if (text == "case2") return Variant::Case2;
  if (text == "case3") return Variant::Case3;
  if (text == "case4") return Variant::Case4;
  throw InvalidArgument("unknown variant '" + std::string(text) + "' (expected case1..case4)");
}

std::string to_string(Variant v) { return "case" + std::to_string(static_cast<int>(v)); }

MaskSpec mask_a_of(Variant v) {
  return (v == Variant::Case2 || v == Variant::Case4) ? MaskSpec::eps() : MaskSpec::none();
}

MaskSpec mask_b_of(Variant v) {
  return (v == Variant::Case3 || v == Variant::Case4) ? MaskSpec::tau() : MaskSpec::none();
}

LatinSquare seeded_square_a(int n, std::uint64_t seed) { return random_latin(n, splitmix64(2 * seed)); }
LatinSquare seeded_square_b(int n, std::uint64_t seed) { return random_latin(n, splitmix64(2 * seed + 1)); }

BipartiteSystem<Rational> make_variant_system(int n, std::uint64_t seed, Variant variant) {
  return build_system(seeded_square_a(n, seed), seeded_square_b(n, seed), mask_a_of(variant), mask_b_of(variant));
}

BipartiteSystem<Rational> reference_system() {
  IntMatrix la(4, 4);
  la << 3, 2, 4, 1,  //
      4, 1, 3, 2,    //
      2, 3, 1, 4,    //
      1, 4, 2, 3;
  IntMatrix lb(4, 4);
  lb << 2, 3, 4, 1,  //
      3, 4, 1, 2,    //
      1, 2, 3, 4,    //
      4, 1, 2, 3;
  return build_system(LatinSquare(la), LatinSquare(lb), MaskSpec::eps(4), MaskSpec::tau(4));
}

StateVector reference_start() {
  TropicalVector u(4);
  TropicalVector w(4);
  u << 0, 1, 0, 1;
  w << 1, 0, 1, 0;
  return StateVector(u, w);
}

}  // namespace mmpx
