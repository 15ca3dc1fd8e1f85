#pragma once

// Plain-text formats.
//
//   scalar   integer | p/q | -inf | +inf
//   matrix   "<rows> <cols>" then rows lines of cols scalars
//   system   "system", blank, "A", matrix, blank, "B", matrix
//   state    matrix with one column and m+n rows (u stacked over w)
//   latin    "<n>" then n lines of n integers
//   trace    "trace s=<s> r=<r> c=<c|none> cont=<t> apps=<k>" then one line
//            per iterate x(0..r), followed by y(0..t) when cont > 0
//
// Parsers report failures as ParseError with 1-based line and column.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmpx/bipartite.hpp"
#include "mmpx/eigensolver.hpp"
#include "mmpx/latin.hpp"
#include "mmpx/tropical.hpp"

namespace mmpx::io {

/// Parses one scalar token. Throws ParseError at (line, column) on failure.
ExtendedValue parse_scalar(std::string_view token, std::size_t line = 1, std::size_t column = 1);

/// Parses a finite rational (no infinities).
Rational parse_rational(std::string_view token);

std::string format_scalar(const ExtendedValue& x);

TropicalMatrix parse_matrix(std::string_view text);
std::string format_matrix(const TropicalMatrix& m);

BipartiteSystem<Rational> parse_system(std::string_view text);
std::string format_system(const BipartiteSystem<Rational>& sys);

/// A state file as a stacked column; split it with BipartiteSystem::state_from_stacked.
TropicalVector parse_state(std::string_view text);
std::string format_state(const StateVector& x);
/// Space-separated entries on one line (trace rows, reports).
std::string format_state_line(const StateVector& x);

LatinSquare parse_latin(std::string_view text);
std::string format_latin(const LatinSquare& square);

std::string format_trace(const SolverTrace<Rational>& trace);

struct TraceHeader {
  std::size_t s = 0;
  std::size_t r = 0;
  std::optional<Rational> c;
  std::size_t continuation_steps = 0;
  std::size_t map_applications = 0;
};

struct ParsedTrace {
  TraceHeader header;
  std::vector<TropicalVector> iterates;
  std::vector<TropicalVector> continuation;
};

ParsedTrace parse_trace(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace mmpx::io
