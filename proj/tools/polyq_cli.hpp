#pragma once

// Command-line front end. `dispatch` runs one subcommand, writes data to
// `out` and diagnostics to `err`, and returns the process exit code.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polyq/polyq.hpp"

namespace polyq::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_precondition = 3, exit_resource = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : text + " ") {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  return out;
}

inline RatVector parse_vector_arg(const std::string& text, Index expected, const std::string& what) {
  RatVector v;
  try {
    for (const std::string& t : split_list(text)) v.push_back(parse_rational(t));
  } catch (const ParseError& e) {
    throw UsageError(what + ": " + e.what());
  }
  if (v.size() != expected)
    throw UsageError(what + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(expected));
  return v;
}

/// 1-based positions "i,j,..." to 0-based indices below `bound`.
inline std::vector<Index> parse_positions(const std::string& text, Index bound, const std::string& what) {
  std::vector<Index> out;
  for (const std::string& t : split_list(text)) {
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || end != t.data() + t.size() || value < 1 || value > bound)
      throw UsageError(what + ": '" + t + "' is not a position in 1.." + std::to_string(bound));
    out.push_back(value - 1);
  }
  return out;
}

inline std::string join(std::span<const Rational> v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + to_string(v[k]);
  return s;
}

inline std::string join_positions(const std::vector<Index>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k] + 1);
  return s;
}

inline std::string key_line(const std::string& key, std::span<const Rational> v) {
  return v.empty() ? key + "\n" : key + " " + join(v) + "\n";
}

inline void write_lambda(std::ostream& out, std::span<const Rational> lambda) {
  for (Index i = 0; i < lambda.size(); ++i)
    if (lambda[i] != 0) out << "lambda " << i + 1 << ' ' << to_string(lambda[i]) << '\n';
}

inline HRep require_hrep(const PolyFile& f, const char* command) {
  if (!std::holds_alternative<HRep>(f)) throw UsageError(std::string(command) + " expects an hrep file");
  return std::get<HRep>(f);
}

// ---------------------------------------------------------------------------
// Certificate checking. Uses only row arithmetic on the input description.
// ---------------------------------------------------------------------------

struct CertBlock {
  std::string kind;
  std::size_t line = 0;
  std::multimap<std::string, std::vector<std::string>> fields;

  std::vector<std::string> field(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError("certificate " + kind + " lacks '" + key + "'", line);
    return it->second;
  }

  RatVector vector_field(const std::string& key) const {
    RatVector v;
    for (const std::string& t : field(key)) v.push_back(parse_rational(t, line));
    return v;
  }

  std::vector<Index> positions(const std::string& key) const {
    std::vector<Index> out;
    for (const std::string& t : field(key)) {
      std::size_t i = polyq::detail::parse_count(t, line);
      if (i < 1) throw ParseError("positions are 1-based", line);
      out.push_back(i - 1);
    }
    return out;
  }

  RatVector lambda(Index size) const {
    RatVector y = zeros(size);
    auto [lo, hi] = fields.equal_range("lambda");
    for (auto it = lo; it != hi; ++it) {
      if (it->second.size() != 2) throw ParseError("malformed lambda line", line);
      std::size_t i = polyq::detail::parse_count(it->second[0], line);
      if (i < 1 || i > size) throw ParseError("lambda row out of range", line);
      y[i - 1] = parse_rational(it->second[1], line);
    }
    return y;
  }
};

inline std::vector<CertBlock> read_certificates(std::string_view text) {
  std::vector<CertBlock> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  CertBlock* open = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    std::vector<std::string> tokens = split_list(raw);
    if (tokens.empty()) continue;
    if (!open) {
      if (tokens[0] == "certificate") {
        if (tokens.size() != 2) throw ParseError("malformed certificate header", line);
        out.push_back({tokens[1], line, {}});
        open = &out.back();
      }
      continue;
    }
    if (tokens[0] == "end") {
      open = nullptr;
      continue;
    }
    open->fields.emplace(tokens[0], std::vector<std::string>(tokens.begin() + 1, tokens.end()));
  }
  if (open) throw ParseError("certificate block without 'end'", line + 1);
  return out;
}

inline bool in_polyhedron(const HRep& h, const RatVector& x) { return x.size() == h.dim && h.satisfied_by(x); }

inline bool in_recession_cone(const HRep& h, const RatVector& y) {
  if (y.size() != h.dim) return false;
  for (const Constraint& c : h.inequalities)
    if (dot(c.a, y) > 0) return false;
  for (const Constraint& c : h.equations)
    if (dot(c.a, y) != 0) return false;
  return true;
}

inline bool sign_vector_ok(const RatVector& s) {
  return std::all_of(s.begin(), s.end(), [](const Rational& x) { return x == 0 || x == 1 || x == -1; });
}

inline bool verify_polyhedron_certificate(const HRep& h, const CertBlock& b) {
  const Index rows = h.expanded_row_count();
  if (b.kind == "infeasibility") {
    return check_infeasibility_certificate(h, {CertificateKind::infeasibility, b.lambda(rows), {}, {}});
  }
  if (b.kind == "validity" || b.kind == "witness") {
    RatVector row = b.vector_field("inequality");
    if (row.size() != h.dim + 1) return false;
    Rational beta = row.back();
    row.pop_back();
    if (b.kind == "validity")
      return check_validity_certificate(h, row, beta, {CertificateKind::validity, b.lambda(rows), {}, {}});
    RatVector x = b.vector_field("point");
    return in_polyhedron(h, x) && dot(row, x) > beta;
  }
  if (b.kind == "optimum") {
    RatVector c = b.vector_field("objective"), x = b.vector_field("point");
    RatVector value = b.vector_field("value");
    if (c.size() != h.dim || value.size() != 1 || !in_polyhedron(h, x) || dot(c, x) != value[0]) return false;
    return check_validity_certificate(h, c, value[0], {CertificateKind::validity, b.lambda(rows), {}, {}});
  }
  if (b.kind == "unbounded") {
    RatVector c = b.vector_field("objective"), x = b.vector_field("point"), y = b.vector_field("ray");
    return c.size() == h.dim && in_polyhedron(h, x) && in_recession_cone(h, y) && dot(c, y) > 0;
  }
  if (b.kind == "fractional_vertex") {
    RatVector x = b.vector_field("point");
    if (!in_polyhedron(h, x) || is_integral(x)) return false;
    std::vector<RatVector> tight;
    for (const Constraint& c : h.expanded_rows())
      if (dot(c.a, x) == c.b) tight.push_back(c.a);
    return rank(tight, h.dim) == h.dim;
  }
  if (b.kind == "duality") {
    RatVector c = b.vector_field("objective"), x = b.vector_field("point");
    RatVector y = b.lambda(rows);
    if (c.size() != h.dim || !in_polyhedron(h, x) || !is_integral(x)) return false;
    if (!nonnegative(y) || !is_integral(y)) return false;
    auto [lhs, rhs] = combine_rows(h, y);
    return lhs == c && rhs == dot(c, x);
  }
  throw ParseError("unknown certificate kind '" + b.kind + "' for a polyhedron", b.line);
}

inline bool verify_matrix_certificate(const RatMatrix& a, const CertBlock& b) {
  if (b.kind == "submatrix") {
    std::vector<Index> r = b.positions("rows"), c = b.positions("cols");
    RatVector det = b.vector_field("det");
    if (r.size() != c.size() || r.empty() || det.size() != 1) return false;
    for (Index i : r)
      if (i >= a.rows()) return false;
    for (Index j : c)
      if (j >= a.cols()) return false;
    Rational d = determinant(a.submatrix(r, c));
    return d == det[0] && d != 0 && d != 1 && d != -1;
  }
  if (b.kind == "unsignable") {
    bool columns = b.fields.count("cols") > 0;
    std::vector<Index> subset = b.positions(columns ? "cols" : "rows");
    RatMatrix m = columns ? a.transpose() : a;
    if (subset.empty() || subset.size() > 24) return false;
    for (Index i : subset)
      if (i >= m.rows()) return false;
    for (std::size_t mask = 0; mask < (std::size_t{1} << subset.size()); ++mask) {
      RatVector sum = zeros(m.cols());
      for (Index k = 0; k < subset.size(); ++k) sum = axpy(sum, (mask >> k) & 1 ? -1 : 1, m.row(subset[k]));
      if (sign_vector_ok(sum)) return false;
    }
    return true;
  }
  throw ParseError("unknown certificate kind '" + b.kind + "' for a matrix", b.line);
}

// ---------------------------------------------------------------------------
// Certificate writers.
// ---------------------------------------------------------------------------

inline void write_infeasibility(std::ostream& out, const Certificate& cert) {
  out << "certificate infeasibility\n";
  write_lambda(out, cert.multipliers);
  out << "end\n";
}

inline void write_validity(std::ostream& out, std::span<const Rational> a, const Rational& beta,
                           const Certificate& cert) {
  RatVector row(a.begin(), a.end());
  row.push_back(beta);
  out << "certificate validity\n" << key_line("inequality", row);
  write_lambda(out, cert.multipliers);
  out << "end\n";
}

}  // namespace detail

struct Context {
  Limits limits;
  std::ostream& out;
};

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline void run_convert(Context& ctx, const PolyFile& f, const std::string& to) {
  if (to == "h") {
    if (const auto* v = std::get_if<VRep>(&f))
      ctx.out << emit_hrep(v_to_h(*v, ctx.limits));
    else
      ctx.out << emit_hrep(canonical(std::get<HRep>(f)));
  } else {
    if (const auto* h = std::get_if<HRep>(&f))
      ctx.out << emit_vrep(h_to_v(*h, ctx.limits));
    else
      ctx.out << emit_vrep(canonical(std::get<VRep>(f)));
  }
}

inline void run_feasible(Context& ctx, const HRep& h) {
  FeasibilityResult r = feasible(h, ctx.limits);
  if (r.feasible()) {
    ctx.out << "FEASIBLE\n" << detail::key_line("point", *r.point);
  } else {
    ctx.out << "INFEASIBLE\n";
    detail::write_infeasibility(ctx.out, *r.certificate);
  }
}

inline void run_valid(Context& ctx, const HRep& h, const std::string& row_text) {
  RatVector row = detail::parse_vector_arg(row_text, h.dim + 1, "--row");
  Rational beta = row.back();
  row.pop_back();
  FeasibilityResult f = feasible(h, ctx.limits);
  if (!f.feasible()) {
    ctx.out << "VALID\n";
    detail::write_infeasibility(ctx.out, *f.certificate);
    return;
  }
  ValidityResult r = is_valid(h, row, beta, ctx.limits);
  if (r.valid()) {
    ctx.out << "VALID\n";
    detail::write_validity(ctx.out, row, beta, *r.certificate);
  } else {
    RatVector full = row;
    full.push_back(beta);
    ctx.out << "INVALID\ncertificate witness\n"
            << detail::key_line("inequality", full) << detail::key_line("point", *r.witness) << "end\n";
  }
}

inline void run_optimize(Context& ctx, const HRep& h, const std::string& objective) {
  RatVector c = detail::parse_vector_arg(objective, h.dim, "--objective");
  OptResult r = optimize(h, c, ctx.limits);
  ctx.out << to_string(r.status) << '\n';
  switch (r.status) {
    case OptStatus::infeasible:
      detail::write_infeasibility(ctx.out, *r.infeasibility_cert);
      break;
    case OptStatus::unbounded: {
      RatVector x = *feasible(h, ctx.limits).point;
      ctx.out << "certificate unbounded\n"
              << detail::key_line("objective", c) << detail::key_line("point", x)
              << detail::key_line("ray", *r.improving_ray) << "end\n";
      break;
    }
    case OptStatus::optimal: {
      ValidityResult v = is_valid(h, c, *r.value, ctx.limits);
      ctx.out << "value " << to_string(*r.value) << '\n'
              << detail::key_line("point", *r.argmax_vertex) << "certificate optimum\n"
              << detail::key_line("objective", c) << "value " << to_string(*r.value) << '\n'
              << detail::key_line("point", *r.argmax_vertex);
      detail::write_lambda(ctx.out, v.certificate->multipliers);
      ctx.out << "end\n";
      break;
    }
  }
}

inline void run_facets(Context& ctx, const HRep& h) {
  auto list = facets(h, ctx.limits);
  ctx.out << "facets " << list.size() << '\n';
  for (const auto& [i, face] : list) {
    RatVector row = h.inequalities[i].a;
    row.push_back(h.inequalities[i].b);
    ctx.out << "facet " << i + 1 << ' ' << detail::join(row) << '\n';
  }
}

inline void run_irredundant(Context& ctx, const PolyFile& f) {
  IrredundancyVerdict v = std::holds_alternative<HRep>(f) ? certify_irredundant_h(std::get<HRep>(f), ctx.limits)
                                                          : certify_irredundant_v(std::get<VRep>(f), ctx.limits);
  if (v.irredundant)
    ctx.out << "IRREDUNDANT\n";
  else
    ctx.out << "REDUNDANT\nreason " << v.clause << '\n';
}

inline void run_integral(Context& ctx, const HRep& h) {
  IntegralityVerdict v = is_integral(h, ctx.limits);
  if (v.integral) {
    ctx.out << "INTEGRAL\n";
    return;
  }
  ctx.out << "NOT_INTEGRAL\ncertificate fractional_vertex\n" << detail::key_line("point", *v.fractional_vertex)
          << "end\n";
}

inline void run_hilbert(Context& ctx, const PolyFile& f) {
  std::vector<RatVector> gens;
  Index n = 0;
  if (const auto* v = std::get_if<VRep>(&f)) {
    n = v->dim;
    for (const RatVector& p : v->points)
      if (!is_zero(p)) throw PreconditionError("hilbert: the vrep must describe a cone (only the point 0)");
    gens = v->rays;
  } else {
    const HRep& h = std::get<HRep>(f);
    n = h.dim;
    for (const auto* rows : {&h.inequalities, &h.equations})
      for (const Constraint& c : *rows)
        if (c.b != 0) throw PreconditionError("hilbert: the hrep must describe a cone (right-hand side 0)");
    gens = h_to_v(h, ctx.limits).rays;
  }
  ctx.out << emit_vrep(VRep::cone(n, hilbert_basis(gens, n, ctx.limits).basis));
}

inline void run_tdi(Context& ctx, const HRep& h, bool definitional, long cbox) {
  TdiVerdict v = definitional ? is_tdi_definitional(h, cbox, ctx.limits) : is_tdi(h, ctx.limits);
  ctx.out << (v.tdi ? "TDI\n" : "NOT_TDI\n") << "complete " << (v.complete ? "yes" : "no") << '\n';
  if (v.c_box > 0) ctx.out << "cbox " << v.c_box << '\n';
  if (v.face) ctx.out << "face " << detail::join_positions(*v.face) << '\n';
  if (v.witness) ctx.out << detail::key_line(v.face ? "lattice_point" : "objective", *v.witness);
}

inline void run_duality(Context& ctx, const HRep& h, const std::string& objective) {
  RatVector c = detail::parse_vector_arg(objective, h.dim, "--objective");
  DualityReport r = verify_strong_duality(h, c, ctx.limits);
  auto opt = [](const std::optional<Rational>& x) { return x ? to_string(*x) : std::string("none"); };
  ctx.out << (r.equal ? "EQUAL\n" : "NOT_EQUAL\n") << "primal_max " << opt(r.primal_max) << '\n'
          << "lp_value " << to_string(r.lp_value) << '\n'
          << "dual_min " << opt(r.dual_min) << '\n';
  if (r.primal_argmax) ctx.out << detail::key_line("primal_argmax", *r.primal_argmax);
  if (r.dual_solution) ctx.out << detail::key_line("dual_solution", *r.dual_solution);
  if (r.equal) {
    ctx.out << "certificate duality\n" << detail::key_line("objective", c)
            << detail::key_line("point", *r.primal_argmax);
    detail::write_lambda(ctx.out, *r.dual_solution);
    ctx.out << "end\n";
  }
}

inline void run_tu(Context& ctx, const RatMatrix& a, const std::string& method) {
  TUVerdict v = method == "gh" ? is_tu_ghouila_houri(a, ctx.limits) : is_tu_determinant(a, ctx.limits);
  if (v.is_tu) {
    ctx.out << "TU\n";
    return;
  }
  ctx.out << "NOT_TU\n";
  if (v.violating_submatrix) {
    const Submatrix& s = *v.violating_submatrix;
    ctx.out << "certificate submatrix\nrows " << detail::join_positions(s.rows) << "\ncols "
            << detail::join_positions(s.cols) << "\ndet " << to_string(s.det) << "\nend\n";
  } else {
    ctx.out << "certificate unsignable\n"
            << (v.subset_is_columns ? "cols " : "rows ") << detail::join_positions(*v.unsignable_subset)
            << "\nend\n";
  }
}

inline void run_check_cert(Context& ctx, const std::string& input_text, const std::string& cert_text) {
  std::vector<detail::CertBlock> blocks = detail::read_certificates(cert_text);
  polyq::detail::RecordReader probe(input_text);
  bool matrix = !probe.at_end() && probe.peek("").tokens[0] == "matrix";
  std::optional<RatMatrix> a;
  std::optional<HRep> h;
  if (matrix)
    a = parse_matrix(input_text);
  else
    h = parse_hrep(input_text);
  std::size_t accepted = 0;
  for (const detail::CertBlock& b : blocks) {
    bool ok = matrix ? detail::verify_matrix_certificate(*a, b) : detail::verify_polyhedron_certificate(*h, b);
    ctx.out << (ok ? "ACCEPTED " : "REJECTED ") << b.kind << '\n';
    accepted += ok;
  }
  ctx.out << (accepted == blocks.size() ? "CERTIFICATES_VERIFIED " : "CERTIFICATES_REJECTED ")
          << blocks.size() - accepted << " of " << blocks.size() << " rejected\n";
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rational polyhedral computations", "polyq"};
  app.require_subcommand(1);
  app.fallthrough();
  Limits limits;
  app.add_option("--max-rows", limits.max_rows, "Row cap for elimination systems")->capture_default_str();
  app.add_option("--max-lattice", limits.max_lattice, "Cap on enumerated lattice points")->capture_default_str();
  app.add_option("--max-subsets", limits.max_subsets, "Cap on enumerated subsets")->capture_default_str();

  std::string file, second_file, to, eliminate, matrix_file, row, objective, method = "det", tree, lower, upper;
  bool definitional = false, digraph_flag = false, graph_flag = false;
  long cbox = 3;
  std::function<void(Context&)> action;

  auto add = [&](const std::string& name, const std::string& help, const std::string& file_help = "Input file") {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, file_help)->required();
    return sub;
  };
  auto poly = [&] { return parse_poly(detail::read_file(file)); };
  auto hrep = [&](const char* name) { return detail::require_hrep(poly(), name); };

  CLI::App* sub = add("convert", "Convert between hrep and vrep");
  sub->add_option("--to", to, "Target description")->required()->check(CLI::IsMember({"h", "v"}));
  sub->callback([&] { action = [&](Context& c) { run_convert(c, poly(), to); }; });

  sub = add("project", "Project an hrep by eliminating coordinates or through a linear map");
  auto* elim = sub->add_option("--eliminate", eliminate, "1-based coordinates to eliminate, comma separated");
  auto* mat = sub->add_option("--matrix", matrix_file, "Matrix file of the linear map");
  elim->excludes(mat);
  sub->callback([&] {
    action = [&](Context& c) {
      HRep h = hrep("project");
      if (!matrix_file.empty()) {
        c.out << emit_hrep(project_general(h, parse_matrix(detail::read_file(matrix_file)), c.limits).image);
      } else if (!eliminate.empty()) {
        std::vector<Index> coords = detail::parse_positions(eliminate, h.dim, "--eliminate");
        c.out << emit_hrep(eliminate_coords(h, coords, c.limits));
      } else {
        throw UsageError("project needs --eliminate or --matrix");
      }
    };
  });

  sub = add("feasible", "Decide feasibility, with a Farkas certificate when infeasible");
  sub->callback([&] { action = [&](Context& c) { run_feasible(c, hrep("feasible")); }; });

  sub = add("valid", "Decide validity of one inequality");
  sub->add_option("--row", row, "Inequality \"a_1 ... a_n b\" meaning <a, x> <= b")->required();
  sub->callback([&] { action = [&](Context& c) { run_valid(c, hrep("valid"), row); }; });

  sub = add("optimize", "Maximize a linear objective");
  sub->add_option("--objective", objective, "Objective \"c_1 ... c_n\"")->required();
  sub->callback([&] { action = [&](Context& c) { run_optimize(c, hrep("optimize"), objective); }; });

  sub = add("vertices", "List the vertices of a pointed polyhedron");
  sub->callback([&] {
    action = [&](Context& c) {
      HRep h = hrep("vertices");
      c.out << emit_matrix(RatMatrix::from_rows(vertices(h, c.limits), h.dim));
    };
  });

  sub = add("facets", "List the facet-defining inequality rows");
  sub->callback([&] { action = [&](Context& c) { run_facets(c, hrep("facets")); }; });

  sub = add("irredundant", "Certify irredundancy of an hrep or vrep");
  sub->callback([&] { action = [&](Context& c) { run_irredundant(c, poly()); }; });

  sub = add("dim", "Dimension (-1 when empty)");
  sub->callback([&] { action = [&](Context& c) { c.out << "dim " << dimension(hrep("dim"), c.limits) << '\n'; }; });

  sub = add("lineality", "Basis of the lineality space");
  sub->callback([&] {
    action = [&](Context& c) {
      HRep h = hrep("lineality");
      c.out << emit_matrix(RatMatrix::from_rows(lineality_space(h), h.dim));
    };
  });

  sub = add("recession", "Recession cone as an hrep");
  sub->callback([&] { action = [&](Context& c) { c.out << emit_hrep(char_cone(hrep("recession"))); }; });

  sub = add("integer-hull", "Convex hull of the lattice points of a polytope");
  sub->callback([&] {
    action = [&](Context& c) { c.out << emit_hrep(canonical(integer_hull(hrep("integer-hull"), c.limits))); };
  });

  sub = add("integral", "Decide whether every vertex is integral");
  sub->callback([&] { action = [&](Context& c) { run_integral(c, hrep("integral")); }; });

  sub = add("hilbert", "Hilbert basis of a pointed rational cone");
  sub->callback([&] { action = [&](Context& c) { run_hilbert(c, poly()); }; });

  sub = add("lattice-decompose", "Lattice points as points plus monoid generators");
  sub->callback([&] {
    action = [&](Context& c) {
      HRep h = hrep("lattice-decompose");
      MonoidDecomposition d = lattice_decomposition(h, c.limits);
      c.out << emit_vrep(VRep(h.dim, d.points, d.generators));
    };
  });

  sub = add("tdi", "Decide total dual integrality");
  sub->add_flag("--definitional", definitional, "Search objectives in a box instead of checking faces");
  sub->add_option("--cbox", cbox, "Objective box for --definitional")->capture_default_str()->check(CLI::PositiveNumber);
  sub->callback([&] { action = [&](Context& c) { run_tdi(c, hrep("tdi"), definitional, cbox); }; });

  sub = add("make-tdi", "Equivalent totally dual integral system");
  sub->callback([&] { action = [&](Context& c) { c.out << emit_hrep(make_tdi(hrep("make-tdi"), c.limits)); }; });

  sub = add("duality", "Compare integral primal max with integral dual min");
  sub->add_option("--objective", objective, "Integral objective \"c_1 ... c_n\"")->required();
  sub->callback([&] { action = [&](Context& c) { run_duality(c, hrep("duality"), objective); }; });

  sub = add("tu", "Decide total unimodularity of a matrix", "Matrix file");
  sub->add_option("--method", method, "det (subdeterminants) or gh (signings)")
      ->capture_default_str()
      ->check(CLI::IsMember({"det", "gh"}));
  sub->callback([&] { action = [&](Context& c) { run_tu(c, parse_matrix(detail::read_file(file)), method); }; });

  sub = add("incidence", "Incidence matrix of a digraph or graph", "Graph file");
  auto* dflag = sub->add_flag("--digraph", digraph_flag, "Node-arc incidence of a digraph file");
  auto* gflag = sub->add_flag("--graph", graph_flag, "Node-edge incidence of a graph file");
  dflag->excludes(gflag);
  sub->callback([&] {
    action = [&](Context& c) {
      std::string text = detail::read_file(file);
      if (!digraph_flag && !graph_flag) {
        polyq::detail::RecordReader probe(text);
        digraph_flag = !probe.at_end() && probe.peek("").tokens[0] == "digraph";
      }
      c.out << emit_matrix(digraph_flag ? node_arc_incidence(parse_digraph(text))
                                        : node_edge_incidence(parse_graph(text)));
    };
  });

  sub = add("network-matrix", "Network matrix of a digraph with respect to a spanning tree", "Digraph file");
  sub->add_option("--tree", tree, "1-based tree arc positions, comma separated")->required();
  sub->callback([&] {
    action = [&](Context& c) {
      Digraph d = parse_digraph(detail::read_file(file));
      c.out << emit_matrix(network_matrix(d, detail::parse_positions(tree, d.arcs.size(), "--tree")));
    };
  });

  sub = add("matching-polytope", "Degree-constraint hrep of a bipartite graph", "Graph file");
  sub->callback([&] {
    action = [&](Context& c) { c.out << emit_hrep(matching_polytope_bipartite(parse_graph(detail::read_file(file)))); };
  });

  sub = add("circulation", "Circulation polytope of a digraph", "Digraph file");
  sub->add_option("--lower", lower, "Lower arc bounds")->required();
  sub->add_option("--upper", upper, "Upper arc bounds")->required();
  sub->callback([&] {
    action = [&](Context& c) {
      Digraph d = parse_digraph(detail::read_file(file));
      c.out << emit_hrep(circulation_polytope(d, detail::parse_vector_arg(lower, d.arcs.size(), "--lower"),
                                              detail::parse_vector_arg(upper, d.arcs.size(), "--upper")));
    };
  });

  sub = add("check-cert", "Re-verify the certificate blocks of a previous output", "hrep or matrix input file");
  sub->add_option("certificates", second_file, "Saved output containing certificate blocks")->required();
  sub->callback([&] {
    action = [&](Context& c) { run_check_cert(c, detail::read_file(file), detail::read_file(second_file)); };
  });

  std::vector<const char*> argv{"polyq"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  Context ctx{limits, out};
  try {
    action(ctx);
  } catch (const UsageError& e) {
    err << "polyq: " << e.what() << '\n';
    return exit_usage;
  } catch (const polyq::ParseError& e) {
    err << "polyq: " << e.what() << '\n';
    return exit_usage;
  } catch (const DimensionError& e) {
    err << "polyq: " << e.what() << '\n';
    return exit_usage;
  } catch (const ResourceError& e) {
    err << "polyq: resource cap: " << e.what() << '\n';
    return exit_resource;
  } catch (const polyq::Error& e) {
    err << "polyq: " << e.what() << '\n';
    return exit_precondition;
  }
  return exit_ok;
}

}  // namespace polyq::cli
