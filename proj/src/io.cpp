#include "mmpx/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "mmpx/errors.hpp"

namespace mmpx::io {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

// Line cursor over a whole document.
class Lines {
 public:
  explicit Lines(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        if (start < text.size()) lines_.push_back(text.substr(start));
        break;
      }
      lines_.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  bool at_end() const { return pos_ >= lines_.size(); }
  std::size_t line_number() const { return pos_ + 1; }

  void skip_blank() {
    while (!at_end() && tokenize(lines_[pos_]).empty()) ++pos_;
  }

  /// Tokens of the next line; ParseError if the document ended.
  std::vector<Token> next(const char* expected) {
    if (at_end()) throw ParseError(line_number(), 1, std::string("unexpected end of input, expected ") + expected);
    return tokenize(lines_[pos_++]);
  }

  std::vector<Token> peek() const { return at_end() ? std::vector<Token>{} : tokenize(lines_[pos_]); }

  void expect_end() {
    skip_blank();
    if (!at_end()) throw ParseError(line_number(), peek().front().column, "unexpected trailing content");
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!is_digit(c)) return false;
  return true;
}

boost::multiprecision::cpp_int to_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return boost::multiprecision::cpp_int(std::string(s));
}

long long parse_count(const Token& tok, std::size_t line, const char* what, long long min) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || v < min)
    throw ParseError(line, tok.column, std::string("invalid ") + what + " '" + std::string(tok.text) + "'");
  return v;
}

TropicalMatrix read_matrix(Lines& lines) {
  const std::size_t header_line = lines.line_number();
  const auto header = lines.next("matrix header '<rows> <cols>'");
  if (header.size() != 2)
    throw ParseError(header_line, header.empty() ? 1 : header.front().column,
                     "matrix header must be '<rows> <cols>'");
  const auto rows = parse_count(header[0], header_line, "row count", 1);
  const auto cols = parse_count(header[1], header_line, "column count", 1);
  TropicalMatrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    const std::size_t line = lines.line_number();
    const auto toks = lines.next("matrix row");
    if (static_cast<long long>(toks.size()) != cols) {
      const std::size_t col = toks.size() > static_cast<std::size_t>(cols) ? toks[static_cast<std::size_t>(cols)].column
                                                                          : (toks.empty() ? 1 : toks.back().column);
      throw ParseError(line, col,
                       "expected " + std::to_string(cols) + " entries, found " + std::to_string(toks.size()));
    }
    for (long long j = 0; j < cols; ++j) {
      const auto& tok = toks[static_cast<std::size_t>(j)];
      m(i, j) = parse_scalar(tok.text, line, tok.column);
    }
  }
  return m;
}

// Optional single-token section label such as "A".
void skip_label(Lines& lines, std::string_view label) {
  lines.skip_blank();
  const auto toks = lines.peek();
  if (toks.size() == 1 && toks.front().text == label) lines.next(label.data());
}

}  // namespace

ExtendedValue parse_scalar(std::string_view token, std::size_t line, std::size_t column) {
  if (token == "-inf") return ExtendedValue::eps();
  if (token == "+inf") return ExtendedValue::tau();
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer(token)) throw ParseError(line, column, "invalid number '" + std::string(token) + "'");
    return ExtendedValue(Rational(to_int(token)));
  }
  const std::string_view num = token.substr(0, slash);
  const std::string_view den = token.substr(slash + 1);
  if (!valid_integer(num) || den.empty() || !valid_integer(den) || den.front() == '+' || den.front() == '-')
    throw ParseError(line, column, "invalid rational '" + std::string(token) + "'");
  const auto d = to_int(den);
  if (d == 0) throw ParseError(line, column, "zero denominator in '" + std::string(token) + "'");
  return ExtendedValue(Rational(to_int(num), d));
}

Rational parse_rational(std::string_view token) {
  const ExtendedValue x = parse_scalar(token);
  if (!x.is_finite()) throw InvalidArgument("expected a finite rational, got '" + std::string(token) + "'");
  return x.value();
}

std::string format_scalar(const ExtendedValue& x) { return to_string(x); }

TropicalMatrix parse_matrix(std::string_view text) {
  Lines lines(text);
  lines.skip_blank();
  TropicalMatrix m = read_matrix(lines);
  lines.expect_end();
  return m;
}

std::string format_matrix(const TropicalMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << '\n';
  }
  return os.str();
}

BipartiteSystem<Rational> parse_system(std::string_view text) {
  Lines lines(text);
  lines.skip_blank();
  const std::size_t first = lines.line_number();
  const auto head = lines.next("'system'");
  if (head.size() != 1 || head.front().text != "system")
    throw ParseError(first, head.empty() ? 1 : head.front().column, "system file must start with 'system'");
  skip_label(lines, "A");
  lines.skip_blank();
  const std::size_t a_line = lines.line_number();
  TropicalMatrix a = read_matrix(lines);
  skip_label(lines, "B");
  lines.skip_blank();
  const std::size_t b_line = lines.line_number();
  TropicalMatrix b = read_matrix(lines);
  lines.expect_end();
  try {
    return BipartiteSystem<Rational>(std::move(a), std::move(b));
  } catch (const Error& e) {
    throw ParseError(a_line, 1, std::string(e.what()) + " (A at line " + std::to_string(a_line) + ", B at line " +
                                    std::to_string(b_line) + ")");
  }
}

std::string format_system(const BipartiteSystem<Rational>& sys) {
  return "system\n\nA\n" + format_matrix(sys.a()) + "\nB\n" + format_matrix(sys.b());
}

TropicalVector parse_state(std::string_view text) {
  Lines lines(text);
  lines.skip_blank();
  const std::size_t header_line = lines.line_number();
  const TropicalMatrix m = read_matrix(lines);
  lines.expect_end();
  if (m.cols() != 1) throw ParseError(header_line, 1, "state file must have exactly one column");
  return m.col(0);
}

std::string format_state(const StateVector& x) {
  const TropicalVector v = x.stacked();
  std::ostringstream os;
  os << v.size() << " 1\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << to_string(v(i)) << '\n';
  return os.str();
}

std::string format_state_line(const StateVector& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out += ' ';
    out += to_string(x[i]);
  }
  return out;
}

LatinSquare parse_latin(std::string_view text) {
  Lines lines(text);
  lines.skip_blank();
  const std::size_t header_line = lines.line_number();
  const auto header = lines.next("Latin square order");
  if (header.size() != 1) throw ParseError(header_line, 1, "Latin square header must be '<n>'");
  const auto n = parse_count(header[0], header_line, "order", 1);
  IntMatrix m(n, n);
  for (long long i = 0; i < n; ++i) {
    const std::size_t line = lines.line_number();
    const auto toks = lines.next("Latin square row");
    if (static_cast<long long>(toks.size()) != n)
      throw ParseError(line, 1, "expected " + std::to_string(n) + " entries, found " + std::to_string(toks.size()));
    for (long long j = 0; j < n; ++j)
      m(i, j) = static_cast<int>(parse_count(toks[static_cast<std::size_t>(j)], line, "symbol", 1));
  }
  lines.expect_end();
  if (!validate_latin(m)) throw ParseError(header_line, 1, "rows and columns are not permutations of 1..n");
  return LatinSquare(std::move(m));
}

std::string format_latin(const LatinSquare& square) {
  std::ostringstream os;
  os << square.order() << '\n';
  for (int i = 0; i < square.order(); ++i) {
    for (int j = 0; j < square.order(); ++j) os << (j ? " " : "") << square(i, j);
    os << '\n';
  }
  return os.str();
}

std::string format_trace(const SolverTrace<Rational>& trace) {
  std::ostringstream os;
  os << "trace s=" << trace.s << " r=" << trace.r << " c=" << (trace.c ? format_rational(*trace.c) : "none")
     << " cont=" << trace.continuation_steps << " apps=" << trace.map_applications << '\n';
  for (const auto& x : trace.iterates) os << format_state_line(x) << '\n';
  if (trace.continuation_steps > 0)
    for (std::size_t t = 0; t <= trace.continuation_steps; ++t) os << format_state_line(trace.continuation[t]) << '\n';
  return os.str();
}

ParsedTrace parse_trace(std::string_view text) {
  Lines lines(text);
  const auto head = lines.next("trace header");
  if (head.size() != 6 || head[0].text != "trace") throw ParseError(1, 1, "trace header must be 'trace s= r= c= cont= apps='");
  ParsedTrace out;
  const char* keys[] = {"s", "r", "c", "cont", "apps"};
  for (std::size_t k = 0; k < 5; ++k) {
    const Token& tok = head[k + 1];
    const std::string prefix = std::string(keys[k]) + "=";
    if (tok.text.substr(0, prefix.size()) != prefix)
      throw ParseError(1, tok.column, "expected '" + prefix + "...'");
    const Token value{tok.text.substr(prefix.size()), tok.column + prefix.size()};
    if (k == 2) {
      if (value.text != "none") {
        const ExtendedValue c = parse_scalar(value.text, 1, value.column);
        if (!c.is_finite()) throw ParseError(1, value.column, "c must be finite");
        out.header.c = c.value();
      }
      continue;
    }
    const auto v = static_cast<std::size_t>(parse_count(value, 1, keys[k], 0));
    if (k == 0) out.header.s = v;
    if (k == 1) out.header.r = v;
    if (k == 3) out.header.continuation_steps = v;
    if (k == 4) out.header.map_applications = v;
  }
  const auto read_row = [&lines]() {
    const std::size_t line = lines.line_number();
    const auto toks = lines.next("iterate line");
    TropicalVector v(static_cast<Eigen::Index>(toks.size()));
    for (std::size_t i = 0; i < toks.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_scalar(toks[i].text, line, toks[i].column);
    return v;
  };
  for (std::size_t l = 0; l <= out.header.r; ++l) out.iterates.push_back(read_row());
  if (out.header.continuation_steps > 0)
    for (std::size_t t = 0; t <= out.header.continuation_steps; ++t) out.continuation.push_back(read_row());
  lines.expect_end();
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out.flush()) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace mmpx::io
