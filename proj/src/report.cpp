#include "mmpx/report.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "mmpx/errors.hpp"
#include "mmpx/io.hpp"

namespace mmpx {

Algorithm parse_algorithm(std::string_view text) {
  if (text == "latin") return Algorithm::Latin;
  if (text == "power") return Algorithm::Power;
  if (text == "fixed") return Algorithm::Fixed;
  throw InvalidArgument("unknown algorithm '" + std::string(text) + "' (expected latin, power or fixed)");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Latin:
      return "latin";
    case Algorithm::Power:
      return "power";
    case Algorithm::Fixed:
      return "fixed";
  }
  return "?";
}

RunReport RunReport::from(Algorithm algorithm, const SolveResult<Rational>& result,
                          std::chrono::nanoseconds wall_time) {
  RunReport out;
  out.algorithm = algorithm;
  out.lambda = result.pair.lambda;
  out.v = result.pair.v;
  out.s = result.trace.s;
  out.r = result.trace.r;
  out.c = result.trace.c;
  out.continuation_steps = result.trace.continuation_steps;
  out.map_applications = result.trace.map_applications;
  out.wall_time = wall_time;
  return out;
}

std::string format_report(const RunReport& report) {
  std::ostringstream os;
  os << "algorithm " << to_string(report.algorithm) << '\n'
     << "lambda " << format_rational(report.lambda) << '\n'
     << "s " << report.s << '\n'
     << "r " << report.r << '\n'
     << "c " << (report.c ? format_rational(*report.c) : "none") << '\n'
     << "continuation_steps " << report.continuation_steps << '\n'
     << "map_applications " << report.map_applications << '\n'
     << "wall_time_ns " << report.wall_time.count() << '\n'
     << "v " << report.v.size() << '\n';
  for (Eigen::Index i = 0; i < report.v.size(); ++i) os << to_string(report.v[i]) << '\n';
  return os.str();
}

RunReport parse_report(std::string_view text, Eigen::Index m) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  const auto field = [&](const char* key) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError(line_no, 1, std::string("missing '") + key + "'");
    const std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0) throw ParseError(line_no, 1, std::string("expected '") + key + " ...'");
    return line.substr(prefix.size());
  };
  const auto count = [&](const char* key) {
    const std::string v = field(key);
    try {
      std::size_t pos = 0;
      const unsigned long long x = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return static_cast<std::size_t>(x);
    } catch (const std::logic_error&) {
      throw ParseError(line_no, std::string(key).size() + 2, "invalid count '" + v + "'");
    }
  };

  RunReport out;
  out.algorithm = parse_algorithm(field("algorithm"));
  out.lambda = io::parse_rational(field("lambda"));
  out.s = count("s");
  out.r = count("r");
  const std::string c = field("c");
  if (c != "none") out.c = io::parse_rational(c);
  out.continuation_steps = count("continuation_steps");
  out.map_applications = count("map_applications");
  out.wall_time = std::chrono::nanoseconds(static_cast<long long>(count("wall_time_ns")));
  const std::size_t len = count("v");
  TropicalVector v(static_cast<Eigen::Index>(len));
  for (std::size_t i = 0; i < len; ++i) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError(line_no, 1, "missing eigenvector entry");
    v(static_cast<Eigen::Index>(i)) = io::parse_scalar(line, line_no, 1);
  }
  out.v = StateVector::from_stacked(v, m);
  return out;
}

}  // namespace mmpx
