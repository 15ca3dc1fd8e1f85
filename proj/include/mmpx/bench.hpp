#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmpx/latin.hpp"
#include "mmpx/report.hpp"

namespace mmpx::bench {

enum class StartKind { Zeros, Random };

struct Config {
  std::vector<int> orders;       // n values
  std::uint64_t seeds = 10;      // seeds 0 .. seeds-1
  std::vector<Variant> variants{Variant::Case4};
  std::size_t max_iter = kDefaultMaxIter;
  StartKind start = StartKind::Zeros;
  bool include_reference = false;  // adds the order-4 reference instance
  unsigned jobs = 1;
};

/// One CSV row. Optional fields are empty in the CSV when the solve did not
/// converge.
struct Row {
  int n = 0;
  std::optional<std::uint64_t> seed;  // empty for the reference instance
  std::string variant;                // case1..case4 or "reference"
  Algorithm algorithm = Algorithm::Latin;
  std::optional<Rational> lambda;
  std::optional<StateVector> v;
  std::optional<std::size_t> s;
  std::optional<std::size_t> r;
  std::optional<std::size_t> continuation_steps;
  std::size_t map_applications = 0;
  long long wall_time_ns = 0;
  bool verified = false;
};

/// The system and start a row was computed from.
BipartiteSystem<Rational> system_for(const Row& row);
StateVector start_for(const BipartiteSystem<Rational>& sys, const Row& row, StartKind start);

/// Runs every (n, seed, variant, algorithm) cell, concurrently when
/// `jobs > 1`. Rows come back sorted, so the output does not depend on
/// scheduling.
std::vector<Row> run(const Config& config);

inline constexpr std::string_view kCsvHeader =
    "n,seed,variant,algo,lambda,v,s,r,continuation_steps,map_applications,wall_time_ns,verified";

/// RFC 4180 style with LF line endings; v is space-separated stacked entries.
std::string to_csv(const std::vector<Row>& rows);
std::vector<Row> parse_csv(std::string_view text);

}  // namespace mmpx::bench
