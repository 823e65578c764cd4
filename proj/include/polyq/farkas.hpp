#pragma once

// Feasibility, membership, validity, and cone separation with exact Farkas
// certificates.

#include <numeric>
#include <optional>
#include <vector>

#include "polyq/detail/elimination.hpp"
#include "polyq/model.hpp"

namespace polyq {

/// Exactly one of `point` / `certificate` is set.
struct FeasibilityResult {
  std::optional<RatVector> point;
  std::optional<Certificate> certificate;

  bool feasible() const { return point.has_value(); }
};

/// Decides A x <= b (equations expanded to inequality pairs) by eliminating
/// x_1, x_2, ... in order. Certificates are scaled to primitive integers.
inline FeasibilityResult feasible(const HRep& h, const Limits& limits = {}) {
  h.validate();
  std::vector<Constraint> rows = h.expanded_rows();
  std::vector<RatVector> a;
  std::vector<Rational> b;
  for (Constraint& c : rows) {
    a.push_back(std::move(c.a));
    b.push_back(std::move(c.b));
  }
  std::vector<Index> order(h.dim);
  std::iota(order.begin(), order.end(), Index{0});
  detail::EliminationRun run = detail::eliminate(detail::initial_rows(a, b), order, {true, limits});
  if (run.contradiction) {
    Certificate cert{CertificateKind::infeasibility, primitive(run.contradiction->lambda), {}, {}};
    return {std::nullopt, std::move(cert)};
  }
  return {detail::back_substitute(run, zeros(h.dim)), std::nullopt};
}

struct StandardFormResult {
  std::optional<RatVector> point;          // x >= 0 with A x = b
  std::optional<Certificate> certificate;  // y with y^T A >= 0, <y, b> < 0

  bool feasible() const { return point.has_value(); }
};

/// Decides {A x = b, x >= 0} through the inequality system
/// {-x <= 0, A x = b}.
inline StandardFormResult feasible_standard_form(const RatMatrix& a, std::span<const Rational> b,
                                                 const Limits& limits = {}) {
  if (b.size() != a.rows()) throw DimensionError("feasible_standard_form: right-hand side length mismatch");
  const Index n = a.cols();
  HRep h(n);
  for (Index j = 0; j < n; ++j) h.inequalities.push_back({scaled(unit_vector(n, j), -1), Rational(0)});
  for (Index i = 0; i < a.rows(); ++i) h.equations.push_back({a.row_vector(i), b[i]});
  FeasibilityResult r = feasible(h, limits);
  if (r.feasible()) return {std::move(r.point), std::nullopt};
  const RatVector& lambda = r.certificate->multipliers;
  RatVector y(a.rows());
  for (Index i = 0; i < a.rows(); ++i) y[i] = lambda[n + 2 * i] - lambda[n + 2 * i + 1];
  return {std::nullopt, Certificate{CertificateKind::infeasibility, primitive(y), {}, {}}};
}

/// Outcome of a membership test. For an HRep, `violated_row` names the first
/// violated row of the expanded list. For a VRep, `coefficients` lists the
/// convex weights on points followed by the conic weights on rays, and
/// `certificate` separates the point otherwise.
struct Membership {
  bool inside = false;
  RatVector coefficients;
  std::optional<Certificate> certificate;
  std::optional<Index> violated_row;
};

inline Membership contains(const HRep& h, std::span<const Rational> x) {
  if (x.size() != h.dim) throw DimensionError("contains: point dimension mismatch");
  std::vector<Constraint> rows = h.expanded_rows();
  for (Index i = 0; i < rows.size(); ++i)
    if (dot(rows[i].a, x) > rows[i].b) return {false, {}, std::nullopt, i};
  return {true, {}, std::nullopt, std::nullopt};
}

inline Membership contains(const VRep& v, std::span<const Rational> x, const Limits& limits = {}) {
  if (x.size() != v.dim) throw DimensionError("contains: point dimension mismatch");
  const Index n = v.dim;
  std::vector<RatVector> columns;
  for (const RatVector& p : v.points) {
    RatVector c = p;
    c.push_back(1);
    columns.push_back(std::move(c));
  }
  for (const RatVector& r : v.rays) {
    RatVector c = r;
    c.push_back(0);
    columns.push_back(std::move(c));
  }
  RatMatrix m = RatMatrix::from_columns(columns, n + 1);
  RatVector rhs(x.begin(), x.end());
  rhs.push_back(1);
  StandardFormResult r = feasible_standard_form(m, rhs, limits);
  if (r.feasible()) return {true, std::move(*r.point), std::nullopt, std::nullopt};
  const RatVector& y = r.certificate->multipliers;
  RatVector normal(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  for (Rational& c : normal) c = -c;
  Certificate cert{CertificateKind::separation, {}, std::move(normal), y[n]};
  return {false, {}, std::move(cert), std::nullopt};
}

/// Exactly one of `certificate` (valid) / `witness` (a point of P violating
/// the inequality) is set.
struct ValidityResult {
  std::optional<Certificate> certificate;
  std::optional<RatVector> witness;

  bool valid() const { return certificate.has_value(); }
};

/// Decides whether <a, x> <= beta holds on P = {x : A x <= b}. The maximum of
/// <a, x> over P is found by adjoining z = <a, x> and eliminating x; the
/// tightest upper-bound row on z carries the multipliers of the certificate.
///
/// Throws PreconditionError when P is empty (the equivalence fails there;
/// call feasible() first).
inline ValidityResult is_valid(const HRep& h, std::span<const Rational> a, const Rational& beta,
                               const Limits& limits = {}) {
  h.validate();
  if (a.size() != h.dim) throw DimensionError("is_valid: inequality dimension mismatch");
  const Index n = h.dim;
  std::vector<Constraint> rows = h.expanded_rows();
  const Index m = rows.size();
  std::vector<RatVector> lhs;
  std::vector<Rational> rhs;
  for (Constraint& c : rows) {
    c.a.push_back(0);
    lhs.push_back(std::move(c.a));
    rhs.push_back(std::move(c.b));
  }
  RatVector up(a.begin(), a.end()), down(a.begin(), a.end());
  for (Rational& c : up) c = -c;
  up.push_back(1);     // z - <a, x> <= 0
  down.push_back(-1);  // <a, x> - z <= 0
  lhs.push_back(std::move(up));
  rhs.push_back(0);
  lhs.push_back(std::move(down));
  rhs.push_back(0);

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  detail::EliminationRun run = detail::eliminate(detail::initial_rows(lhs, rhs), order, {true, limits});
  auto empty_error = [] {
    return PreconditionError("validity requires a nonempty polyhedron; decide feasible() first");
  };
  if (run.contradiction) throw empty_error();

  std::optional<Rational> lo, hi;
  const detail::TrackedRow* tight = nullptr;
  for (const detail::TrackedRow& r : run.final_rows) {
    const Rational& c = r.a[n];
    if (c > 0) {
      Rational bound = r.b / c;
      if (!hi || bound < *hi) {
        hi = bound;
        tight = &r;
      }
    } else if (c < 0) {
      Rational bound = r.b / c;
      if (!lo || bound > *lo) lo = bound;
    }
  }
  if (lo && hi && *lo > *hi) throw empty_error();

  if (hi && *hi <= beta) {
    Rational c = tight->a[n];
    RatVector lambda(tight->lambda.begin(), tight->lambda.begin() + static_cast<std::ptrdiff_t>(m));
    for (Rational& x : lambda) x /= c;
    return {Certificate{CertificateKind::validity, std::move(lambda), {}, {}}, std::nullopt};
  }
  Rational z;
  if (hi) {
    z = *hi;
  } else {
    z = beta + 1;
    if (lo && *lo > z) z = *lo;
  }
  RatVector x = zeros(n + 1);
  x[n] = z;
  x = detail::back_substitute(run, std::move(x));
  x.pop_back();
  return {std::nullopt, std::move(x)};
}

struct ConeMembership {
  std::optional<RatVector> coefficients;  // y = sum c_i x_i, c >= 0
  std::optional<RatVector> separator;     // <a, x_i> <= 0 < <a, y>

  bool in_cone() const { return coefficients.has_value(); }
};

inline ConeMembership separate_from_cone(const std::vector<RatVector>& generators, std::span<const Rational> y,
                                         const Limits& limits = {}) {
  for (const RatVector& g : generators)
    if (g.size() != y.size()) throw DimensionError("separate_from_cone: generator dimension mismatch");
  RatMatrix m = RatMatrix::from_columns(generators, y.size());
  StandardFormResult r = feasible_standard_form(m, y, limits);
  if (r.feasible()) return {std::move(r.point), std::nullopt};
  return {std::nullopt, scaled(r.certificate->multipliers, -1)};
}

struct ConicCombination {
  std::vector<Index> support;  // indices into the generator list, increasing
  RatVector coefficients;      // one per generator; zero off the support
};

/// Rewrites y = sum c_i x_i (c >= 0) as a conic combination of a linearly
/// independent subset by repeatedly shifting along a linear dependence of the
/// support until a coefficient vanishes.
inline ConicCombination caratheodory_reduce(const std::vector<RatVector>& generators, std::span<const Rational> y,
                                            RatVector coefficients) {
  if (coefficients.size() != generators.size())
    throw DimensionError("caratheodory_reduce: one coefficient per generator required");
  RatVector check = zeros(y.size());
  for (Index i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != y.size()) throw DimensionError("caratheodory_reduce: generator dimension mismatch");
    if (coefficients[i] < 0) throw ContractViolation("caratheodory_reduce: negative coefficient");
    check = axpy(check, coefficients[i], generators[i]);
  }
  if (!std::equal(check.begin(), check.end(), y.begin(), y.end()))
    throw ContractViolation("caratheodory_reduce: combination does not reproduce y");

  while (true) {
    std::vector<Index> support;
    for (Index i = 0; i < coefficients.size(); ++i)
      if (coefficients[i] != 0) support.push_back(i);
    std::vector<RatVector> cols;
    for (Index i : support) cols.push_back(generators[i]);
    RatMatrix m = RatMatrix::from_columns(cols, y.size());
    std::vector<RatVector> deps = kernel_basis(m);
    if (deps.empty()) return {std::move(support), std::move(coefficients)};
    // canonical_direction makes the first nonzero entry positive
    const RatVector& mu = deps.front();
    std::optional<Rational> step;
    Index hit = 0;
    for (Index k = 0; k < support.size(); ++k) {
      if (mu[k] <= 0) continue;
      Rational t = coefficients[support[k]] / mu[k];
      if (!step || t < *step) {
        step = t;
        hit = k;
      }
    }
    for (Index k = 0; k < support.size(); ++k) coefficients[support[k]] -= *step * mu[k];
    coefficients[support[hit]] = 0;
  }
}

}  // namespace polyq
