#pragma once

// Plain-text polytope files:
//
//   # comment
//   <n_points> <dim>
//   x_1 ... x_dim      (n_points rows)
//
// Blank lines and lines starting with '#' are ignored everywhere.

#include "cytoric/lattice.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace cytoric {

class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string &what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline bool parse_integer(const std::string &tok, Integer &out) {
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) return false;
  for (std::size_t k = i; k < tok.size(); ++k)
    if (tok[k] < '0' || tok[k] > '9') return false;
  out = Integer(tok[0] == '+' ? tok.substr(1) : tok);
  return true;
}

inline std::vector<std::string> split(const std::string &line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

} // namespace detail

inline std::vector<MPoint> parse_polytope(std::istream &in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n_points = 0, dim = 0;
  bool have_header = false;
  std::vector<MPoint> points;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!have_header) {
      Integer n, d;
      if (toks.size() != 2 || !detail::parse_integer(toks[0], n) ||
          !detail::parse_integer(toks[1], d) || n < 1 || d < 1)
        throw ParseError(lineno, "expected header \"<n_points> <dim>\"");
      n_points = n.convert_to<std::size_t>();
      dim = d.convert_to<std::size_t>();
      have_header = true;
      continue;
    }
    if (points.size() == n_points)
      throw ParseError(lineno, "more than " + std::to_string(n_points) +
                                   " point rows");
    if (toks.size() != dim)
      throw ParseError(lineno, "expected " + std::to_string(dim) +
                                   " coordinates, got " +
                                   std::to_string(toks.size()));
    std::vector<Integer> coords(dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (!detail::parse_integer(toks[i], coords[i]))
        throw ParseError(lineno, "not an integer: \"" + toks[i] + "\"");
    points.emplace_back(std::move(coords));
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (points.size() != n_points)
    throw ParseError(lineno, "expected " + std::to_string(n_points) +
                                 " point rows, got " +
                                 std::to_string(points.size()));
  return points;
}

inline std::vector<MPoint> parse_polytope(const std::string &text) {
  std::istringstream in(text);
  return parse_polytope(in);
}

inline std::vector<MPoint> read_polytope_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_polytope(in);
}

/// Inverse of parse_polytope.
template <class Tag>
std::string dump_polytope(const std::vector<LatticePoint<Tag>> &points) {
  std::string out;
  const std::size_t dim = points.empty() ? 0 : points[0].dim();
  out += std::to_string(points.size()) + " " + std::to_string(dim) + "\n";
  for (const auto &p : points) out += to_string(p) + "\n";
  return out;
}

} // namespace cytoric
