#pragma once

// Plain-text file formats for outer and inner descriptions, matrices, and
// graphs. Grammar:
//
//   hrep        m n  [linearity k i_1 ... i_k]  m rows "a_1 ... a_n b"
//   vrep        m n  m rows "t x_1 ... x_n"   (t = 1 point, t = 0 ray)
//   matrix      m n  m rows "a_1 ... a_n"
//   digraph     nodes k  then "arc u v" lines   (1-based nodes)
//   graph       nodes k  then "edge u v" lines
//
// '#' starts a comment that runs to the end of the line. Tokens are separated
// by whitespace; each record sits on its own line.

#include <charconv>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polyq/model.hpp"
#include "polyq/unimodularity.hpp"

namespace polyq {

using PolyFile = std::variant<HRep, VRep>;

namespace detail {

struct Record {
  std::vector<std::string_view> tokens;
  std::size_t line = 0;
};

class RecordReader {
 public:
  explicit RecordReader(std::string_view text) {
    std::size_t line = 0;
    while (!text.empty()) {
      ++line;
      std::size_t eol = text.find('\n');
      std::string_view body = text.substr(0, eol);
      text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
      if (std::size_t hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
      Record r{{}, line};
      std::size_t pos = 0;
      while (pos < body.size()) {
        while (pos < body.size() && is_space(body[pos])) ++pos;
        std::size_t end = pos;
        while (end < body.size() && !is_space(body[end])) ++end;
        if (end > pos) r.tokens.push_back(body.substr(pos, end - pos));
        pos = end;
      }
      if (!r.tokens.empty()) records_.push_back(std::move(r));
    }
    last_line_ = line;
  }

  bool at_end() const { return next_ == records_.size(); }

  const Record& peek(const char* expected) const {
    if (at_end()) throw ParseError(std::string("unexpected end of input, expected ") + expected, last_line_ + 1);
    return records_[next_];
  }

  const Record& next(const char* expected) {
    const Record& r = peek(expected);
    ++next_;
    return r;
  }

  void expect_end() const {
    if (!at_end()) throw ParseError("unexpected trailing data", records_[next_].line);
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

  std::vector<Record> records_;
  std::size_t next_ = 0;
  std::size_t last_line_ = 0;
};

inline std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size())
    throw ParseError("expected a nonnegative integer, got '" + std::string(token) + "'", line);
  return value;
}

inline void require_arity(const Record& r, std::size_t expected, const char* what) {
  if (r.tokens.size() != expected)
    throw ParseError(std::string(what) + " has " + std::to_string(r.tokens.size()) + " entries, expected " +
                         std::to_string(expected),
                     r.line);
}

inline std::string_view header(RecordReader& in) {
  const Record& r = in.next("a header");
  require_arity(r, 1, "header line");
  return r.tokens[0];
}

inline std::pair<std::size_t, std::size_t> dimensions(RecordReader& in) {
  const Record& r = in.next("the dimensions line 'm n'");
  require_arity(r, 2, "dimensions line");
  return {parse_count(r.tokens[0], r.line), parse_count(r.tokens[1], r.line)};
}

inline RatVector parse_row(const Record& r, std::size_t from) {
  RatVector v;
  for (std::size_t k = from; k < r.tokens.size(); ++k) v.push_back(parse_rational(r.tokens[k], r.line));
  return v;
}

inline HRep read_hrep_body(RecordReader& in) {
  auto [m, n] = dimensions(in);
  std::set<std::size_t> linearity;
  if (!in.at_end() && in.peek("").tokens[0] == "linearity") {
    const Record& r = in.next("linearity");
    if (r.tokens.size() < 2) throw ParseError("linearity line needs a count", r.line);
    std::size_t k = parse_count(r.tokens[1], r.line);
    require_arity(r, k + 2, "linearity line");
    for (std::size_t t = 2; t < r.tokens.size(); ++t) {
      std::size_t i = parse_count(r.tokens[t], r.line);
      if (i < 1 || i > m) throw ParseError("linearity index " + std::to_string(i) + " out of range", r.line);
      if (!linearity.insert(i).second) throw ParseError("repeated linearity index " + std::to_string(i), r.line);
    }
  }
  HRep h(n);
  for (std::size_t i = 1; i <= m; ++i) {
    const Record& r = in.next("an inequality row");
    require_arity(r, n + 1, "row");
    RatVector a = parse_row(r, 0);
    Rational b = a.back();
    a.pop_back();
    (linearity.count(i) ? h.equations : h.inequalities).push_back({std::move(a), std::move(b)});
  }
  in.expect_end();
  return h;
}

inline VRep read_vrep_body(RecordReader& in) {
  auto [m, n] = dimensions(in);
  VRep v(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Record& r = in.next("a generator row");
    require_arity(r, n + 1, "row");
    if (r.tokens[0] != "0" && r.tokens[0] != "1")
      throw ParseError("generator type must be 1 (point) or 0 (ray), got '" + std::string(r.tokens[0]) + "'", r.line);
    RatVector x = parse_row(r, 1);
    if (r.tokens[0] == "1") {
      v.points.push_back(std::move(x));
    } else {
      if (is_zero(x)) throw ParseError("zero vector listed as a ray", r.line);
      v.rays.push_back(std::move(x));
    }
  }
  in.expect_end();
  return v;
}

inline std::pair<Index, Index> read_node_pair(const Record& r, Index nodes) {
  require_arity(r, 3, std::string(r.tokens[0]) == "arc" ? "arc line" : "edge line");
  Index u = parse_count(r.tokens[1], r.line), v = parse_count(r.tokens[2], r.line);
  for (Index x : {u, v})
    if (x < 1 || x > nodes) throw ParseError("node " + std::to_string(x) + " out of range", r.line);
  return {u - 1, v - 1};
}

inline Index read_nodes(RecordReader& in) {
  const Record& r = in.next("'nodes k'");
  require_arity(r, 2, "nodes line");
  if (r.tokens[0] != "nodes") throw ParseError("expected 'nodes k'", r.line);
  return parse_count(r.tokens[1], r.line);
}

inline std::vector<std::pair<Index, Index>> read_links(RecordReader& in, Index nodes, std::string_view keyword) {
  std::vector<std::pair<Index, Index>> out;
  while (!in.at_end()) {
    const Record& r = in.next("");
    if (r.tokens[0] != keyword)
      throw ParseError("expected '" + std::string(keyword) + " u v', got '" + std::string(r.tokens[0]) + "'", r.line);
    out.push_back(read_node_pair(r, nodes));
  }
  return out;
}

inline void write_row(std::ostringstream& out, std::span<const Rational> v) {
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << to_string(v[k]);
}

inline void require_header(std::string_view got, std::string_view want) {
  if (got != want)
    throw ParseError("expected header '" + std::string(want) + "', got '" + std::string(got) + "'", 1);
}

}  // namespace detail

/// Parses an "hrep" or "vrep" file.
inline PolyFile parse_poly(std::string_view text) {
  detail::RecordReader in(text);
  const detail::Record& r = in.peek("a header");
  std::string_view h = detail::header(in);
  if (h == "hrep") return detail::read_hrep_body(in);
  if (h == "vrep") return detail::read_vrep_body(in);
  throw ParseError("unknown header '" + std::string(h) + "'", r.line);
}

inline HRep parse_hrep(std::string_view text) {
  PolyFile f = parse_poly(text);
  if (!std::holds_alternative<HRep>(f)) throw ParseError("expected an hrep file", 1);
  return std::get<HRep>(std::move(f));
}

inline VRep parse_vrep(std::string_view text) {
  PolyFile f = parse_poly(text);
  if (!std::holds_alternative<VRep>(f)) throw ParseError("expected a vrep file", 1);
  return std::get<VRep>(std::move(f));
}

inline RatMatrix parse_matrix(std::string_view text) {
  detail::RecordReader in(text);
  std::size_t line = in.peek("a header").line;
  std::string_view h = detail::header(in);
  if (h != "matrix") throw ParseError("unknown header '" + std::string(h) + "', expected 'matrix'", line);
  auto [m, n] = detail::dimensions(in);
  RatMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const detail::Record& r = in.next("a matrix row");
    detail::require_arity(r, n, "row");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = parse_rational(r.tokens[j], r.line);
  }
  in.expect_end();
  return a;
}

inline Digraph parse_digraph(std::string_view text) {
  detail::RecordReader in(text);
  std::size_t line = in.peek("a header").line;
  std::string_view h = detail::header(in);
  if (h != "digraph") throw ParseError("unknown header '" + std::string(h) + "', expected 'digraph'", line);
  Digraph d;
  d.nodes = detail::read_nodes(in);
  d.arcs = detail::read_links(in, d.nodes, "arc");
  return d;
}

inline Graph parse_graph(std::string_view text) {
  detail::RecordReader in(text);
  std::size_t line = in.peek("a header").line;
  std::string_view h = detail::header(in);
  if (h != "graph") throw ParseError("unknown header '" + std::string(h) + "', expected 'graph'", line);
  Graph g;
  g.nodes = detail::read_nodes(in);
  g.edges = detail::read_links(in, g.nodes, "edge");
  return g;
}

/// Inequalities first, then equations, which the linearity line lists.
inline std::string emit_hrep(const HRep& h) {
  h.validate();
  std::ostringstream out;
  const Index m = h.inequalities.size(), k = h.equations.size();
  out << "hrep\n" << m + k << ' ' << h.dim << '\n';
  if (k > 0) {
    out << "linearity " << k;
    for (Index j = 0; j < k; ++j) out << ' ' << m + j + 1;
    out << '\n';
  }
  for (const auto* rows : {&h.inequalities, &h.equations})
    for (const Constraint& c : *rows) {
      detail::write_row(out, c.a);
      out << (c.a.empty() ? "" : " ") << to_string(c.b) << '\n';
    }
  return out.str();
}

/// Points first, then rays, each in stored order.
inline std::string emit_vrep(const VRep& v) {
  v.validate();
  std::ostringstream out;
  out << "vrep\n" << v.points.size() + v.rays.size() << ' ' << v.dim << '\n';
  for (const auto& [flag, list] : {std::pair{"1", &v.points}, std::pair{"0", &v.rays}})
    for (const RatVector& x : *list) {
      out << flag;
      for (const Rational& t : x) out << ' ' << to_string(t);
      out << '\n';
    }
  return out.str();
}

inline std::string emit_poly(const PolyFile& f) {
  return std::visit([](const auto& p) -> std::string {
    if constexpr (std::is_same_v<std::decay_t<decltype(p)>, HRep>)
      return emit_hrep(p);
    else
      return emit_vrep(p);
  }, f);
}

inline std::string emit_matrix(const RatMatrix& a) {
  std::ostringstream out;
  out << "matrix\n" << a.rows() << ' ' << a.cols() << '\n';
  for (Index i = 0; i < a.rows(); ++i) {
    detail::write_row(out, a.row(i));
    out << '\n';
  }
  return out.str();
}

inline std::string emit_digraph(const Digraph& d) {
  std::ostringstream out;
  out << "digraph\nnodes " << d.nodes << '\n';
  for (const auto& [u, v] : d.arcs) out << "arc " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

inline std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph\nnodes " << g.nodes << '\n';
  for (const auto& [u, v] : g.edges) out << "edge " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace polyq
