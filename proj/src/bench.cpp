#include "mmpx/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "mmpx/errors.hpp"
#include "mmpx/io.hpp"

namespace mmpx::bench {
namespace {

constexpr std::string_view kReference = "reference";

struct Cell {
  int n;
  std::optional<std::uint64_t> seed;
  std::string variant;
  Algorithm algorithm;
};

auto sort_key(const Row& row) {
  return std::make_tuple(row.n, row.seed.has_value(), row.seed.value_or(0), row.variant,
                         static_cast<int>(row.algorithm));
}

Row run_cell(const Cell& cell, const Config& config) {
  Row row;
  row.n = cell.n;
  row.seed = cell.seed;
  row.variant = cell.variant;
  row.algorithm = cell.algorithm;

  const auto sys = system_for(row);
  const auto x0 = start_for(sys, row, config.start);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto result = cell.algorithm == Algorithm::Latin ? solve_latin(sys, x0, config.max_iter)
                                                           : solve_power(sys, x0, config.max_iter);
    row.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
    row.lambda = result.pair.lambda;
    row.v = result.pair.v;
    row.s = result.trace.s;
    row.r = result.trace.r;
    row.continuation_steps = result.trace.continuation_steps;
    row.map_applications = result.trace.map_applications;
    row.verified = verify_eigenpair(sys, result.pair).valid;
  } catch (const NonConvergence& e) {
    row.wall_time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
    row.map_applications = e.applications();
  }
  return row;
}

template <typename T>
std::string opt(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::optional<std::size_t> opt_count(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return static_cast<std::size_t>(std::stoull(s));
}

}  // namespace

BipartiteSystem<Rational> system_for(const Row& row) {
  if (row.variant == kReference) return reference_system();
  if (!row.seed) throw InvalidArgument("bench row without seed must be the reference instance");
  return make_variant_system(row.n, *row.seed, parse_variant(row.variant));
}

StateVector start_for(const BipartiteSystem<Rational>& sys, const Row& row, StartKind start) {
  if (row.variant == kReference) return reference_start();
  if (start == StartKind::Zeros) return sys.zeros();
  // Integers in 0..n, drawn from a stream keyed on the seed only, so both
  // algorithms of a cell start from the same state.
  std::mt19937_64 rng(*row.seed ^ 0x5eedf00dULL);
  TropicalVector x(sys.m() + sys.n());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = ExtendedValue(static_cast<long long>(rng() % (static_cast<std::uint64_t>(row.n) + 1)));
  return sys.state_from_stacked(x);
}

std::vector<Row> run(const Config& config) {
  if (config.orders.empty()) throw InvalidArgument("bench: at least one order is required");
  std::vector<Cell> cells;
  for (int n : config.orders)
    for (std::uint64_t seed = 0; seed < config.seeds; ++seed)
      for (Variant variant : config.variants)
        for (Algorithm algo : {Algorithm::Latin, Algorithm::Power}) cells.push_back({n, seed, to_string(variant), algo});
  if (config.include_reference)
    for (Algorithm algo : {Algorithm::Latin, Algorithm::Power}) cells.push_back({4, std::nullopt, std::string(kReference), algo});

  std::vector<Row> rows(cells.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cells[i], config);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return sort_key(a) < sort_key(b); });
  return rows;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& row : rows) {
    os << row.n << ',' << opt(row.seed) << ',' << row.variant << ',' << to_string(row.algorithm) << ','
       << (row.lambda ? format_rational(*row.lambda) : "") << ',' << (row.v ? io::format_state_line(*row.v) : "") << ','
       << opt(row.s) << ',' << opt(row.r) << ',' << opt(row.continuation_steps) << ',' << row.map_applications << ','
       << row.wall_time_ns << ',' << (row.verified ? "true" : "false") << '\n';
  }
  return os.str();
}

std::vector<Row> parse_csv(std::string_view text) {
  std::vector<Row> rows;
  const auto lines = split(text, '\n');
  if (lines.empty() || lines.front() != kCsvHeader) throw ParseError(1, 1, "missing bench CSV header");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    const auto f = split(lines[k], ',');
    if (f.size() != 12) throw ParseError(k + 1, 1, "expected 12 fields, found " + std::to_string(f.size()));
    try {
      Row row;
      row.n = std::stoi(f[0]);
      if (!f[1].empty()) row.seed = std::stoull(f[1]);
      row.variant = f[2];
      row.algorithm = parse_algorithm(f[3]);
      if (!f[4].empty()) row.lambda = io::parse_rational(f[4]);
      if (!f[5].empty()) {
        const auto entries = split(f[5], ' ');
        TropicalVector v(static_cast<Eigen::Index>(entries.size()));
        for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = io::parse_scalar(entries[i], k + 1, 1);
        row.v = StateVector::from_stacked(v, row.n);
      }
      row.s = opt_count(f[6]);
      row.r = opt_count(f[7]);
      row.continuation_steps = opt_count(f[8]);
      row.map_applications = static_cast<std::size_t>(std::stoull(f[9]));
      row.wall_time_ns = std::stoll(f[10]);
      if (f[11] != "true" && f[11] != "false") throw ParseError(k + 1, 1, "verified must be true or false");
      row.verified = f[11] == "true";
      rows.push_back(std::move(row));
    } catch (const std::logic_error& e) {
      throw ParseError(k + 1, 1, std::string("malformed bench row: ") + e.what());
    }
  }
  return rows;
}

}  // namespace mmpx::bench
