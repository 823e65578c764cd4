#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "polyq/linalg.hpp"

namespace polyq {

/// One row <a, x> (<= or =) b.
struct Constraint {
  RatVector a;
  Rational b;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend auto operator<=>(const Constraint& x, const Constraint& y) {
    if (x.a != y.a) return x.a < y.a ? std::weak_ordering::less : std::weak_ordering::greater;
    if (x.b != y.b) return x.b < y.b ? std::weak_ordering::less : std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
};

/// Outer description {x : A x <= b, A_eq x = b_eq}.
///
/// Whenever rows are indexed as a single list (certificates, traces), the
/// inequalities come first in order, then equation i expands to the pair
/// `ineq_count + 2i` (a x <= b) and `ineq_count + 2i + 1` (-a x <= -b).
struct HRep {
  Index dim = 0;
  std::vector<Constraint> inequalities;
  std::vector<Constraint> equations;

  HRep() = default;
  explicit HRep(Index n) : dim(n) {}
  HRep(Index n, std::vector<Constraint> ineq, std::vector<Constraint> eq = {})
      : dim(n), inequalities(std::move(ineq)), equations(std::move(eq)) {
    validate();
  }

  /// The canonical empty polyhedron {x : <0, x> <= -1}.
  static HRep infeasible(Index n) { return HRep(n, {{zeros(n), Rational(-1)}}); }

  Index expanded_row_count() const { return inequalities.size() + 2 * equations.size(); }

  std::vector<Constraint> expanded_rows() const {
    std::vector<Constraint> rows = inequalities;
    for (const Constraint& e : equations) {
      rows.push_back(e);
      rows.push_back({-e.a, Rational(-e.b)});
    }
    return rows;
  }

  /// The inequality-only system with the same solution set.
  HRep expanded() const { return HRep(dim, expanded_rows()); }

  /// Coefficient matrix of all rows (inequalities, then equations once).
  RatMatrix matrix() const {
    std::vector<RatVector> rows;
    for (const Constraint& c : inequalities) rows.push_back(c.a);
    for (const Constraint& c : equations) rows.push_back(c.a);
    return RatMatrix::from_rows(rows, dim);
  }

  bool satisfied_by(std::span<const Rational> x) const {
    if (x.size() != dim) throw DimensionError("point dimension differs from polyhedron dimension");
    for (const Constraint& c : inequalities)
      if (dot(c.a, x) > c.b) return false;
    for (const Constraint& c : equations)
      if (dot(c.a, x) != c.b) return false;
    return true;
  }

  void validate() const {
    for (const Constraint& c : inequalities)
      if (c.a.size() != dim) throw DimensionError("inequality row has wrong length");
    for (const Constraint& c : equations)
      if (c.a.size() != dim) throw DimensionError("equation row has wrong length");
  }

  friend bool operator==(const HRep&, const HRep&) = default;
};

/// Inner description conv(points) + ccone(rays). Empty iff `points` is empty.
struct VRep {
  Index dim = 0;
  std::vector<RatVector> points;
  std::vector<RatVector> rays;

  VRep() = default;
  explicit VRep(Index n) : dim(n) {}
  VRep(Index n, std::vector<RatVector> pts, std::vector<RatVector> rs = {})
      : dim(n), points(std::move(pts)), rays(std::move(rs)) {
    validate();
  }

  /// ccone(generators) with the apex stored as the single point 0.
  static VRep cone(Index n, std::vector<RatVector> generators) {
    return VRep(n, {zeros(n)}, std::move(generators));
  }

  bool empty() const { return points.empty(); }

  void validate() const {
    for (const RatVector& p : points)
      if (p.size() != dim) throw DimensionError("point has wrong length");
    for (const RatVector& r : rays) {
      if (r.size() != dim) throw DimensionError("ray has wrong length");
      if (is_zero(r)) throw ContractViolation("zero vector listed as a ray");
    }
  }

  friend bool operator==(const VRep&, const VRep&) = default;
};

enum class CertificateKind { infeasibility, validity, separation };

/// Farkas multipliers over the expanded row list of an HRep (or over a
/// generator list for separation).
///
/// - infeasibility: lambda >= 0, lambda^T A = 0, <lambda, b> < 0
/// - validity:      lambda >= 0, lambda^T A = a, <lambda, b> <= beta
/// - separation:    <normal, x> <= bound for every point, <normal, y> <= 0
///                  for every ray, <normal, target> > bound
struct Certificate {
  CertificateKind kind = CertificateKind::infeasibility;
  RatVector multipliers;
  std::optional<RatVector> separating_normal;
  std::optional<Rational> bound;
};

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::infeasibility:
      return "INFEASIBLE";
    case CertificateKind::validity:
      return "VALID";
    case CertificateKind::separation:
      return "SEPARATED";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Independent certificate checkers: plain exact arithmetic, no elimination.
// ---------------------------------------------------------------------------

inline bool nonnegative(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

/// lambda^T A and <lambda, b> over the expanded row list.
inline std::pair<RatVector, Rational> combine_rows(const HRep& h, std::span<const Rational> lambda) {
  std::vector<Constraint> rows = h.expanded_rows();
  if (lambda.size() != rows.size()) throw DimensionError("certificate length differs from row count");
  RatVector lhs = zeros(h.dim);
  Rational rhs = 0;
  for (Index i = 0; i < rows.size(); ++i) {
    if (lambda[i] == 0) continue;
    for (Index j = 0; j < h.dim; ++j) lhs[j] += lambda[i] * rows[i].a[j];
    rhs += lambda[i] * rows[i].b;
  }
  return {lhs, rhs};
}

inline bool check_infeasibility_certificate(const HRep& h, const Certificate& cert) {
  if (cert.kind != CertificateKind::infeasibility) return false;
  if (cert.multipliers.size() != h.expanded_row_count() || !nonnegative(cert.multipliers)) return false;
  auto [lhs, rhs] = combine_rows(h, cert.multipliers);
  return is_zero(lhs) && rhs < 0;
}

inline bool check_validity_certificate(const HRep& h, std::span<const Rational> a, const Rational& beta,
                                       const Certificate& cert) {
  if (cert.kind != CertificateKind::validity) return false;
  if (cert.multipliers.size() != h.expanded_row_count() || !nonnegative(cert.multipliers)) return false;
  if (a.size() != h.dim) return false;
  auto [lhs, rhs] = combine_rows(h, cert.multipliers);
  return std::equal(lhs.begin(), lhs.end(), a.begin(), a.end()) && rhs <= beta;
}

inline bool check_separation_certificate(const std::vector<RatVector>& points, const std::vector<RatVector>& rays,
                                         std::span<const Rational> target, const Certificate& cert) {
  if (cert.kind != CertificateKind::separation || !cert.separating_normal) return false;
  const RatVector& a = *cert.separating_normal;
  Rational beta = cert.bound.value_or(Rational(0));
  if (a.size() != target.size()) return false;
  for (const RatVector& p : points)
    if (dot(a, p) > beta) return false;
  for (const RatVector& r : rays)
    if (dot(a, r) > 0) return false;
  return dot(a, target) > beta;
}

/// Certificate for the emptiness of {A x = b, x >= 0}: y^T A >= 0, <y, b> < 0.
inline bool check_standard_form_certificate(const RatMatrix& a, std::span<const Rational> b, const Certificate& cert) {
  if (cert.kind != CertificateKind::infeasibility || cert.multipliers.size() != a.rows()) return false;
  if (b.size() != a.rows()) return false;
  return nonnegative(left_multiply(cert.multipliers, a)) && dot(cert.multipliers, b) < 0;
}

}  // namespace polyq
