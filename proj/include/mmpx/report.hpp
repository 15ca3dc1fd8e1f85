#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "mmpx/bipartite.hpp"
#include "mmpx/eigensolver.hpp"

namespace mmpx {

enum class Algorithm { Latin, Power, Fixed };

Algorithm parse_algorithm(std::string_view text);
std::string to_string(Algorithm a);

/// Summary of one solve as printed by `mmpx solve`.
struct RunReport {
  Algorithm algorithm = Algorithm::Latin;
  Rational lambda;
  StateVector v;
  std::size_t s = 0;
  std::size_t r = 0;
  std::optional<Rational> c;
  std::size_t continuation_steps = 0;
  std::size_t map_applications = 0;
  std::chrono::nanoseconds wall_time{0};

  static RunReport from(Algorithm algorithm, const SolveResult<Rational>& result, std::chrono::nanoseconds wall_time);

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/**
 * Line-oriented `key value` text, then `v <len>` followed by one entry per
 * line:
 *
 *   algorithm latin
 *   lambda 2
 *   s 0
 *   r 6
 *   c none
 *   continuation_steps 0
 *   map_applications 7
 *   wall_time_ns 41233
 *   v 8
 *   2
 *   ...
 *
 * The u block is the first `m` entries; parse_report needs m to split.
 */
std::string format_report(const RunReport& report);
RunReport parse_report(std::string_view text, Eigen::Index m);

}  // namespace mmpx
