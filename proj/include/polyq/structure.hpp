#pragma once

// Structural analysis of H-polyhedra: recession cone, lineality space,
// affine hull and dimension, vertices, faces, facets, extreme rays,
// irredundancy verdicts, and exact linear optimization.
//
// Row numbers of an HRep follow the single-list convention of the projection
// module: inequality i is row i, equation j is row (inequality count + j).

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "polyq/farkas.hpp"

namespace polyq {

namespace detail {

inline void require_nonempty(const HRep& h, const char* op) {
  if (!feasible(h).feasible()) throw PreconditionError(std::string(op) + ": the polyhedron is empty");
}

inline Constraint row_of(const HRep& h, Index i) {
  const Index m = h.inequalities.size();
  return i < m ? h.inequalities[i] : h.equations[i - m];
}

/// Inequality rows holding with equality on all of the nonempty h.
inline std::vector<Index> implicit_equalities(const HRep& h, const Limits& limits) {
  std::vector<Index> out;
  for (Index i = 0; i < h.inequalities.size(); ++i) {
    const Constraint& c = h.inequalities[i];
    if (is_valid(h, scaled(c.a, -1), -c.b, limits).valid()) out.push_back(i);
  }
  return out;
}

/// h with the listed inequality rows turned into equations.
inline HRep tighten(const HRep& h, const std::vector<Index>& rows) {
  HRep f = h;
  for (Index i : rows)
    if (i < h.inequalities.size()) f.equations.push_back(h.inequalities[i]);
  return f;
}

}  // namespace detail

/// char(P) = {y : A y <= 0, A_eq y = 0}.
inline HRep char_cone(const HRep& h) {
  h.validate();
  detail::require_nonempty(h, "char_cone");
  HRep c(h.dim);
  for (const Constraint& r : h.inequalities) c.inequalities.push_back({r.a, Rational(0)});
  for (const Constraint& r : h.equations) c.equations.push_back({r.a, Rational(0)});
  return c;
}

/// Basis of lineal(P) = ker of all rows.
inline std::vector<RatVector> lineality_space(const HRep& h) {
  h.validate();
  detail::require_nonempty(h, "lineality_space");
  return kernel_basis(h.matrix());
}

/// Equations of aff(P) with full row rank: the given equations and the
/// implicit equalities among the inequalities, reduced to an independent
/// subset. The empty polyhedron gives the canonical infeasible system.
inline HRep affine_hull(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (!feasible(h, limits).feasible()) return HRep::infeasible(h.dim);
  std::vector<Constraint> eqs;
  for (Index i : detail::implicit_equalities(h, limits)) eqs.push_back(h.inequalities[i]);
  for (const Constraint& e : h.equations) eqs.push_back(e);
  std::vector<RatVector> rows;
  for (const Constraint& e : eqs) rows.push_back(e.a);
  HRep out(h.dim);
  for (Index i : independent_rows(rows, h.dim)) out.equations.push_back(eqs[i]);
  return out;
}

/// Affine dimension; -1 for the empty set.
inline long dimension(const HRep& h, const Limits& limits = {}) {
  HRep hull = affine_hull(h, limits);
  if (!hull.inequalities.empty()) return -1;
  return static_cast<long>(h.dim) - static_cast<long>(hull.equations.size());
}

/// Every n-subset of rows with a regular submatrix is solved; the solutions
/// satisfying all rows are the vertices. Sorted, without repetitions.
inline std::vector<RatVector> vertices(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (!feasible(h, limits).feasible()) return {};
  if (!kernel_basis(h.matrix()).empty())
    throw PreconditionError("vertices: the polyhedron has a nontrivial lineality space; "
                            "project onto its orthogonal complement first");
  const Index n = h.dim;
  const Index m = h.inequalities.size() + h.equations.size();
  if (binomial(m, n) > Integer(static_cast<unsigned long>(limits.max_subsets)))
    throw ResourceError("vertices: " + binomial(m, n).get_str() + " row subsets exceed the cap");
  std::set<RatVector> found;
  for_each_subset(m, n, [&](std::span<const Index> ids) {
    RatMatrix a(n, n);
    RatVector b(n);
    for (Index k = 0; k < n; ++k) {
      Constraint c = detail::row_of(h, ids[k]);
      for (Index j = 0; j < n; ++j) a(k, j) = c.a[j];
      b[k] = c.b;
    }
    RatVector x;
    try {
      x = cramer_solve(a, b);
    } catch (const SingularMatrixError&) {
      return true;
    }
    if (h.satisfied_by(x)) found.insert(std::move(x));
    return true;
  });
  return {found.begin(), found.end()};
}

/// A face {x in P : A_I x = b_I} with its maximal equality set I.
struct FaceDescriptor {
  std::vector<Index> equality_set;
  long dim = -1;
  std::optional<RatVector> representative_point;

  friend bool operator==(const FaceDescriptor&, const FaceDescriptor&) = default;
};

/// The face cut out by the rows `rows` (an equality set candidate); nullopt
/// when it is empty.
inline std::optional<FaceDescriptor> face_of(const HRep& h, const std::vector<Index>& rows,
                                             const Limits& limits = {}) {
  HRep f = detail::tighten(h, rows);
  FeasibilityResult r = feasible(f, limits);
  if (!r.feasible()) return std::nullopt;
  std::set<Index> eq(rows.begin(), rows.end());
  const Index m = h.inequalities.size();
  for (Index i = 0; i < m; ++i) {
    if (eq.count(i)) continue;
    const Constraint& c = h.inequalities[i];
    if (is_valid(f, scaled(c.a, -1), -c.b, limits).valid()) eq.insert(i);
  }
  for (Index j = 0; j < h.equations.size(); ++j) eq.insert(m + j);
  FaceDescriptor d;
  d.equality_set.assign(eq.begin(), eq.end());
  std::vector<RatVector> tight;
  for (Index i : d.equality_set) tight.push_back(detail::row_of(h, i).a);
  d.dim = static_cast<long>(h.dim) - static_cast<long>(rank(tight, h.dim));
  d.representative_point = std::move(r.point);
  return d;
}

/// All faces, the empty face included (equality set = all rows, dim -1),
/// ordered by dimension and then by equality set. Found by closing equality
/// sets one added row at a time, starting from P itself.
inline std::vector<FaceDescriptor> faces(const HRep& h, Index max_count, const Limits& limits = {}) {
  h.validate();
  const Index total = h.inequalities.size() + h.equations.size();
  FaceDescriptor empty_face;
  for (Index i = 0; i < total; ++i) empty_face.equality_set.push_back(i);
  std::vector<FaceDescriptor> out{empty_face};
  std::optional<FaceDescriptor> top = face_of(h, {}, limits);
  if (top) {
    std::set<std::vector<Index>> seen{top->equality_set};
    std::deque<FaceDescriptor> queue{*top};
    while (!queue.empty()) {
      FaceDescriptor f = std::move(queue.front());
      queue.pop_front();
      for (Index i = 0; i < h.inequalities.size(); ++i) {
        if (std::binary_search(f.equality_set.begin(), f.equality_set.end(), i)) continue;
        std::vector<Index> rows = f.equality_set;
        rows.push_back(i);
        std::optional<FaceDescriptor> g = face_of(h, rows, limits);
        if (!g || !seen.insert(g->equality_set).second) continue;
        queue.push_back(std::move(*g));
      }
      out.push_back(std::move(f));
      if (out.size() > max_count) throw ResourceError("faces: more than " + std::to_string(max_count) + " faces");
    }
  }
  std::sort(out.begin(), out.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
    return std::tie(a.dim, a.equality_set) < std::tie(b.dim, b.equality_set);
  });
  return out;
}

/// Inequality rows whose face has dimension dim(P) - 1. A facet defined by
/// several rows is listed once per row.
inline std::vector<std::pair<Index, FaceDescriptor>> facets(const HRep& h, const Limits& limits = {}) {
  h.validate();
  std::vector<std::pair<Index, FaceDescriptor>> out;
  std::optional<FaceDescriptor> top = face_of(h, {}, limits);
  if (!top) return out;
  for (Index i = 0; i < h.inequalities.size(); ++i) {
    if (std::binary_search(top->equality_set.begin(), top->equality_set.end(), i)) continue;
    std::optional<FaceDescriptor> f = face_of(h, {i}, limits);
    if (f && f->dim == top->dim - 1) out.emplace_back(i, std::move(*f));
  }
  return out;
}

struct IrredundancyVerdict {
  bool irredundant = false;
  std::string clause;  // the first violated condition; empty when irredundant
};

/// Irredundancy of an outer description: the equations have full row rank,
/// no inequality is an implicit equality, and the inequalities define
/// pairwise distinct facets. Clauses use 1-based row numbers.
inline IrredundancyVerdict certify_irredundant_h(const HRep& h, const Limits& limits = {}) {
  h.validate();
  detail::require_nonempty(h, "certify_irredundant_h");
  const Index m = h.inequalities.size();
  auto row_name = [](Index i) { return "row " + std::to_string(i + 1); };

  std::vector<RatVector> eq_rows;
  for (Index j = 0; j < h.equations.size(); ++j) {
    eq_rows.push_back(h.equations[j].a);
    if (rank(eq_rows, h.dim) < eq_rows.size())
      return {false, "equation rows lack full row rank: " + row_name(m + j) + " depends on earlier equations"};
  }
  std::vector<Index> implicit = detail::implicit_equalities(h, limits);
  if (!implicit.empty())
    return {false, row_name(implicit.front()) + " holds with equality on all of P; state it as an equation"};

  std::optional<FaceDescriptor> top = face_of(h, {}, limits);
  std::map<std::vector<Index>, Index> facet_owner;
  for (Index i = 0; i < m; ++i) {
    std::optional<FaceDescriptor> f = face_of(h, {i}, limits);
    if (!f || f->dim != top->dim - 1) return {false, row_name(i) + " defines no facet"};
    auto [it, fresh] = facet_owner.emplace(f->equality_set, i);
    if (!fresh)
      return {false, "rows " + std::to_string(it->second + 1) + " and " + std::to_string(i + 1) +
                         " define the same facet; facets must be pairwise distinct"};
  }
  return {true, ""};
}

namespace detail {

/// Whether ccone(rays) contains a line.
inline bool cone_has_line(const std::vector<RatVector>& rays, Index n, const Limits& limits) {
  if (rays.empty()) return false;
  // lambda >= 0, sum lambda_i y_i = 0, sum lambda_i = 1
  std::vector<RatVector> cols;
  for (const RatVector& y : rays) {
    RatVector c = y;
    c.push_back(1);
    cols.push_back(std::move(c));
  }
  RatVector rhs = zeros(n);
  rhs.push_back(1);
  return feasible_standard_form(RatMatrix::from_columns(cols, n + 1), rhs, limits).feasible();
}

}  // namespace detail

/// Irredundancy of an inner description of a pointed polyhedron: every
/// point is a vertex, listed once, and the rays meet each extreme ray of the
/// recession cone exactly once. Clauses use 1-based positions.
inline IrredundancyVerdict certify_irredundant_v(const VRep& v, const Limits& limits = {}) {
  v.validate();
  if (v.empty()) throw PreconditionError("certify_irredundant_v: the polyhedron is empty");
  if (detail::cone_has_line(v.rays, v.dim, limits))
    throw PreconditionError("certify_irredundant_v: the polyhedron is not pointed");
  for (Index i = 0; i < v.points.size(); ++i)
    for (Index j = 0; j < i; ++j)
      if (v.points[i] == v.points[j])
        return {false, "points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                           " coincide; each vertex must be listed once"};
  for (Index i = 0; i < v.points.size(); ++i) {
    VRep rest(v.dim, {}, v.rays);
    for (Index j = 0; j < v.points.size(); ++j)
      if (j != i) rest.points.push_back(v.points[j]);
    if (!rest.empty() && contains(rest, v.points[i], limits).inside)
      return {false, "point " + to_string(v.points[i]) + " is not a vertex"};
  }
  for (Index i = 0; i < v.rays.size(); ++i)
    for (Index j = 0; j < i; ++j)
      if (primitive(v.rays[i]) == primitive(v.rays[j]))
        return {false, "rays " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                           " span the same extreme ray"};
  for (Index i = 0; i < v.rays.size(); ++i) {
    std::vector<RatVector> others;
    for (Index j = 0; j < v.rays.size(); ++j)
      if (j != i) others.push_back(v.rays[j]);
    if (separate_from_cone(others, v.rays[i], limits).in_cone())
      return {false, "ray " + std::to_string(i + 1) + " " + to_string(v.rays[i]) + " is not extreme"};
  }
  return {true, ""};
}

/// Extreme rays of char(P) for pointed nonempty P: every (n-1)-subset of
/// rows whose kernel is a line, with the direction(s) of that line lying in
/// the cone. Primitive and sorted.
inline std::vector<RatVector> extreme_rays(const HRep& h, const Limits& limits = {}) {
  h.validate();
  detail::require_nonempty(h, "extreme_rays");
  RatMatrix a = h.matrix();
  if (!kernel_basis(a).empty()) throw PreconditionError("extreme_rays: the polyhedron is not pointed");
  const Index n = h.dim, m = a.rows();
  if (n == 0) return {};
  if (binomial(m, n - 1) > Integer(static_cast<unsigned long>(limits.max_subsets)))
    throw ResourceError("extreme_rays: " + binomial(m, n - 1).get_str() + " row subsets exceed the cap");
  HRep cone = char_cone(h);
  auto in_cone = [&](const RatVector& y) {
    for (const Constraint& c : cone.inequalities)
      if (dot(c.a, y) > 0) return false;
    for (const Constraint& c : cone.equations)
      if (dot(c.a, y) != 0) return false;
    return true;
  };
  std::set<RatVector> found;
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  for_each_subset(m, n - 1, [&](std::span<const Index> ids) {
    std::vector<RatVector> kernel = kernel_basis(a.submatrix(ids, all));
    if (kernel.size() != 1) return true;
    for (const RatVector& y : {kernel[0], scaled(kernel[0], -1)})
      if (in_cone(y)) found.insert(primitive(y));
    return true;
  });
  return {found.begin(), found.end()};
}

enum class OptStatus { optimal, unbounded, infeasible };

inline const char* to_string(OptStatus s) {
  switch (s) {
    case OptStatus::optimal:
      return "OPTIMAL";
    case OptStatus::unbounded:
      return "UNBOUNDED";
    case OptStatus::infeasible:
      return "INFEASIBLE";
  }
  return "?";
}

struct OptResult {
  OptStatus status = OptStatus::infeasible;
  std::optional<Rational> value;
  std::optional<RatVector> argmax_vertex;
  std::optional<RatVector> improving_ray;
  std::optional<Certificate> infeasibility_cert;
};

/// max <c, x> over P. A lineality space not orthogonal to c makes the
/// problem unbounded; otherwise P is cut down to the orthogonal complement
/// of its lineality space, and the answer is read off the extreme rays and
/// vertices (lexicographically smallest maximizing vertex).
inline OptResult optimize(const HRep& h, std::span<const Rational> c, const Limits& limits = {}) {
  h.validate();
  if (c.size() != h.dim) throw DimensionError("optimize: objective dimension mismatch");
  FeasibilityResult f = feasible(h, limits);
  OptResult r;
  if (!f.feasible()) {
    r.status = OptStatus::infeasible;
    r.infeasibility_cert = std::move(f.certificate);
    return r;
  }
  HRep q = h;
  for (const RatVector& l : kernel_basis(h.matrix())) {
    Rational s = dot(c, l);
    if (s != 0) {
      r.status = OptStatus::unbounded;
      r.improving_ray = s > 0 ? l : scaled(l, -1);
      return r;
    }
    q.equations.push_back({l, Rational(0)});
  }
  for (const RatVector& y : extreme_rays(q, limits)) {
    if (dot(c, y) > 0) {
      r.status = OptStatus::unbounded;
      r.improving_ray = y;
      return r;
    }
  }
  for (const RatVector& v : vertices(q, limits)) {
    Rational val = dot(c, v);
    if (!r.value || val > *r.value) {
      r.value = val;
      r.argmax_vertex = v;
    }
  }
  r.status = OptStatus::optimal;
  return r;
}

}  // namespace polyq
