#pragma once

// Conversions between outer (H) and inner (V) descriptions. V -> H projects
// the nonnegative orthant through the generator matrix; H -> V goes through
// the polar cone and reuses V -> H.

#include <algorithm>
#include <vector>

#include "polyq/projection.hpp"

namespace polyq {

/// The cone {(x, xi) : A x - xi b <= 0, A_eq x - xi b_eq = 0, -xi <= 0}.
struct HomogenizedCone {
  HRep base;
  HRep cone_hrep;
};

inline HomogenizedCone homogenize(const HRep& h) {
  h.validate();
  const Index n = h.dim;
  HRep cone(n + 1);
  auto lift = [](const Constraint& c) {
    RatVector a = c.a;
    a.push_back(-c.b);
    return Constraint{std::move(a), Rational(0)};
  };
  for (const Constraint& c : h.inequalities) cone.inequalities.push_back(lift(c));
  RatVector xi = zeros(n + 1);
  xi[n] = -1;
  cone.inequalities.push_back({std::move(xi), Rational(0)});
  for (const Constraint& c : h.equations) cone.equations.push_back(lift(c));
  return {h, std::move(cone)};
}

/// Sorts points, makes rays primitive, and removes repetitions. A VRep
/// without points is the empty set and loses its rays.
inline VRep canonical(VRep v) {
  v.validate();
  if (v.points.empty()) return VRep(v.dim);
  std::sort(v.points.begin(), v.points.end());
  v.points.erase(std::unique(v.points.begin(), v.points.end()), v.points.end());
  for (RatVector& r : v.rays) r = primitive(r);
  std::sort(v.rays.begin(), v.rays.end());
  v.rays.erase(std::unique(v.rays.begin(), v.rays.end()), v.rays.end());
  return v;
}

/// Rows scaled to primitive integer (a, b), trivial rows dropped, sorted.
inline HRep canonical(const HRep& h) {
  h.validate();
  HRep out(h.dim);
  for (const Constraint& c : h.inequalities) {
    if (is_zero(c.a) && c.b >= 0) continue;
    out.inequalities.push_back(detail::normalized(c));
  }
  for (const Constraint& c : h.equations) {
    if (is_zero(c.a) && c.b == 0) continue;
    Constraint e = detail::normalized(c);
    auto lead = std::find_if(e.a.begin(), e.a.end(), [](const Rational& x) { return x != 0; });
    if (lead != e.a.end() && *lead < 0) e = {scaled(e.a, -1), Rational(-e.b)};
    out.equations.push_back(std::move(e));
  }
  std::sort(out.inequalities.begin(), out.inequalities.end());
  out.inequalities.erase(std::unique(out.inequalities.begin(), out.inequalities.end()), out.inequalities.end());
  std::sort(out.equations.begin(), out.equations.end());
  out.equations.erase(std::unique(out.equations.begin(), out.equations.end()), out.equations.end());
  return out;
}

/// Reads generators of a homogenized cone back as points (last entry > 0,
/// divided through) and rays (last entry 0).
inline VRep dehomogenize(const std::vector<RatVector>& generators, Index n) {
  VRep v(n);
  for (const RatVector& g : generators) {
    if (g.size() != n + 1) throw DimensionError("dehomogenize: generator length must be n + 1");
    const Rational& xi = g[n];
    if (xi < 0) throw ContractViolation("dehomogenize: generator with negative last coordinate");
    RatVector x(g.begin(), g.end() - 1);
    if (xi > 0) {
      for (Rational& c : x) c /= xi;
      v.points.push_back(std::move(x));
    } else if (!is_zero(x)) {
      v.rays.push_back(std::move(x));
    }
  }
  return canonical(std::move(v));
}

namespace detail {

/// Irredundant outer description of ccone(generators) in R^n: inequalities
/// <a, x> <= 0 and equations <a, x> = 0.
inline HRep cone_outer(const std::vector<RatVector>& generators, Index n, const Limits& limits) {
  const Index k = generators.size();
  HRep orthant(k);
  for (Index i = 0; i < k; ++i) orthant.inequalities.push_back({scaled(unit_vector(k, i), -1), Rational(0)});
  RatMatrix t = RatMatrix::from_columns(generators, n);
  return canonical(project_general(orthant, t, limits).image);
}

}  // namespace detail

/// Outer description of conv(points) + ccone(rays). Implicit equations are
/// emitted as inequality pairs; rows are primitive and sorted. The empty
/// VRep gives the canonical infeasible system.
inline HRep v_to_h(const VRep& v, const Limits& limits = {}) {
  v.validate();
  const Index n = v.dim;
  if (v.empty()) return HRep::infeasible(n);
  std::vector<RatVector> gens;
  for (const RatVector& p : v.points) {
    RatVector g = p;
    g.push_back(1);
    gens.push_back(std::move(g));
  }
  for (const RatVector& r : v.rays) {
    RatVector g = r;
    g.push_back(0);
    gens.push_back(std::move(g));
  }
  HRep cone = detail::cone_outer(gens, n + 1, limits);
  HRep out(n);
  auto lower = [n](const Constraint& c) {
    RatVector a(c.a.begin(), c.a.begin() + static_cast<std::ptrdiff_t>(n));
    return Constraint{std::move(a), Rational(-c.a[n])};
  };
  for (const Constraint& c : cone.inequalities) {
    Constraint row = lower(c);
    if (is_zero(row.a)) continue;  // the face xi >= 0
    out.inequalities.push_back(std::move(row));
  }
  for (const Constraint& c : cone.equations) out.equations.push_back(lower(c));
  // A lower-dimensional cone has no unique facet rows; some may be implied
  // once the equations hold at xi = 1.
  if (!out.equations.empty()) out = prune_redundant(out, limits);
  HRep pairs(n, out.inequalities);
  for (const Constraint& e : out.equations) {
    pairs.inequalities.push_back(e);
    pairs.inequalities.push_back({scaled(e.a, -1), Rational(-e.b)});
  }
  return canonical(pairs);
}

/// Inner description of P via the polar of its homogenization: the rows of
/// an outer description of the polar cone generate the homogenized cone.
inline VRep h_to_v(const HRep& h, const Limits& limits = {}) {
  h.validate();
  const Index n = h.dim;
  if (!feasible(h, limits).feasible()) return VRep(n);
  HRep cone = homogenize(h).cone_hrep;
  std::vector<RatVector> polar_gens;
  for (const Constraint& c : cone.inequalities) polar_gens.push_back(c.a);
  for (const Constraint& c : cone.equations) {
    polar_gens.push_back(c.a);
    polar_gens.push_back(scaled(c.a, -1));
  }
  HRep polar = detail::cone_outer(polar_gens, n + 1, limits);
  std::vector<RatVector> gens;
  for (const Constraint& c : polar.inequalities) gens.push_back(c.a);
  for (const Constraint& c : polar.equations) {
    gens.push_back(c.a);
    gens.push_back(scaled(c.a, -1));
  }
  return dehomogenize(gens, n);
}

/// A with ccone(generators) = {x : A x <= 0}; equations appear as row pairs.
inline RatMatrix cone_v_to_h(const std::vector<RatVector>& generators, Index n, const Limits& limits = {}) {
  for (const RatVector& g : generators)
    if (g.size() != n) throw DimensionError("cone_v_to_h: generator dimension mismatch");
  HRep outer = detail::cone_outer(generators, n, limits);
  std::vector<RatVector> rows;
  for (const Constraint& c : outer.inequalities) rows.push_back(c.a);
  for (const Constraint& c : outer.equations) {
    rows.push_back(c.a);
    rows.push_back(scaled(c.a, -1));
  }
  std::sort(rows.begin(), rows.end());
  return RatMatrix::from_rows(rows, n);
}

/// Generators of {x : A x <= 0}: the rows of an outer description of the
/// polar cone ccone(rows of A). Primitive and sorted.
inline std::vector<RatVector> cone_h_to_v(const RatMatrix& a, const Limits& limits = {}) {
  HRep polar = detail::cone_outer(a.row_vectors(), a.cols(), limits);
  std::vector<RatVector> gens;
  for (const Constraint& c : polar.inequalities) gens.push_back(primitive(c.a));
  for (const Constraint& c : polar.equations) {
    gens.push_back(primitive(c.a));
    gens.push_back(primitive(scaled(c.a, -1)));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

}  // namespace polyq
