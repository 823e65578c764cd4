#pragma once

// Fourier-Motzkin elimination with multiplier traces, redundancy pruning,
// projection cones, and images of H-polyhedra under linear maps.
//
// Traces and multipliers index the rows of the input HRep as one list:
// inequality i is row i, equation j is row (inequality count + j). Multipliers
// on inequality rows are nonnegative; multipliers on equation rows may have
// either sign.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polyq/farkas.hpp"

namespace polyq {

struct TraceEntry {
  std::vector<Index> parents;  // increasing
  RatVector multipliers;       // one per parent
};

/// Per output row, the combination of input rows reproducing it exactly
/// (the eliminated coordinate drops out).
struct EliminationTrace {
  std::vector<TraceEntry> inequalities;
  std::vector<TraceEntry> equations;
};

struct EliminationResult {
  HRep result;
  EliminationTrace trace;
};

namespace detail {

/// Rows with multipliers over the rows of a fixed source system.
struct TrackedSystem {
  Index dim = 0;
  std::vector<TrackedRow> ineq;
  std::vector<TrackedRow> eq;

  Index size() const { return ineq.size() + eq.size(); }
};

inline TrackedSystem track(const HRep& h) {
  const Index total = h.inequalities.size() + h.equations.size();
  TrackedSystem s{h.dim, {}, {}};
  Index k = 0;
  for (const Constraint& c : h.inequalities) s.ineq.push_back({c.a, c.b, unit_vector(total, k++)});
  for (const Constraint& c : h.equations) s.eq.push_back({c.a, c.b, unit_vector(total, k++)});
  return s;
}

inline HRep to_hrep(const TrackedSystem& s) {
  HRep h(s.dim);
  for (const TrackedRow& r : s.ineq) h.inequalities.push_back({r.a, r.b});
  for (const TrackedRow& r : s.eq) h.equations.push_back({r.a, r.b});
  return h;
}

/// Positive scaling making (a, b) a primitive integer vector.
inline Rational joint_primitive_scale(std::span<const Rational> a, const Rational& b) {
  RatVector ab(a.begin(), a.end());
  ab.push_back(b);
  return primitive_scale(ab);
}

inline void normalize_joint(TrackedRow& r) {
  Rational s = joint_primitive_scale(r.a, r.b);
  if (s == 1) return;
  for (Rational& x : r.a) x *= s;
  r.b *= s;
  for (Rational& x : r.lambda) x *= s;
}

inline Constraint normalized(const Constraint& c) {
  Rational s = joint_primitive_scale(c.a, c.b);
  return {scaled(c.a, s), Rational(c.b * s)};
}

/// Removes coordinate j. An equation involving x_j is used for exact
/// substitution; otherwise inequalities are combined pairwise.
inline TrackedSystem eliminate_coordinate(TrackedSystem s, Index j, const Limits& limits) {
  auto drop = [j](TrackedRow& r) { r.a.erase(r.a.begin() + static_cast<std::ptrdiff_t>(j)); };
  TrackedSystem out{s.dim - 1, {}, {}};

  auto pivot = std::find_if(s.eq.begin(), s.eq.end(), [j](const TrackedRow& r) { return r.a[j] != 0; });
  if (pivot != s.eq.end()) {
    TrackedRow e = std::move(*pivot);
    s.eq.erase(pivot);
    auto substitute = [&](TrackedRow& r) {
      if (r.a[j] == 0) return;
      Rational f = r.a[j] / e.a[j];
      for (Index i = 0; i < r.a.size(); ++i) r.a[i] -= f * e.a[i];
      r.b -= f * e.b;
      for (Index i = 0; i < r.lambda.size(); ++i) r.lambda[i] -= f * e.lambda[i];
      normalize_joint(r);
    };
    for (TrackedRow& r : s.ineq) {
      substitute(r);
      drop(r);
      out.ineq.push_back(std::move(r));
    }
    for (TrackedRow& r : s.eq) {
      substitute(r);
      drop(r);
      out.eq.push_back(std::move(r));
    }
    return out;
  }

  std::vector<const TrackedRow*> pos, neg;
  for (TrackedRow& r : s.ineq) {
    int sg = sign(r.a[j]);
    if (sg > 0) {
      pos.push_back(&r);
    } else if (sg < 0) {
      neg.push_back(&r);
    } else {
      TrackedRow copy = r;
      drop(copy);
      out.ineq.push_back(std::move(copy));
    }
  }
  if (out.ineq.size() + pos.size() * neg.size() + s.eq.size() > limits.max_rows)
    throw ResourceError("elimination would produce more than " + std::to_string(limits.max_rows) + " rows");
  for (const TrackedRow* k : pos) {
    for (const TrackedRow* l : neg) {
      Rational fk = -l->a[j];
      Rational fl = k->a[j];
      TrackedRow c{RatVector(k->a.size()), Rational(fk * k->b + fl * l->b), RatVector(k->lambda.size())};
      for (Index i = 0; i < c.a.size(); ++i) c.a[i] = fk * k->a[i] + fl * l->a[i];
      for (Index i = 0; i < c.lambda.size(); ++i) c.lambda[i] = fk * k->lambda[i] + fl * l->lambda[i];
      c.a[j] = 0;
      normalize_joint(c);
      drop(c);
      out.ineq.push_back(std::move(c));
    }
  }
  for (TrackedRow& r : s.eq) {
    drop(r);
    out.eq.push_back(std::move(r));
  }
  return out;
}

struct RedundancyMask {
  bool infeasible = false;
  std::vector<bool> keep_ineq;
  std::vector<bool> keep_eq;
};

/// Decides which rows survive pruning: trivial rows and duplicates go first,
/// then one ascending pass drops every row valid for the remaining rows.
/// A row kept during the pass stays irredundant as the remainder only
/// shrinks, so a single pass already reaches the fixed point.
inline RedundancyMask redundancy_mask(const HRep& h, const Limits& limits) {
  RedundancyMask mask;
  if (!feasible(h, limits).feasible()) {
    mask.infeasible = true;
    return mask;
  }
  const Index m = h.inequalities.size(), e = h.equations.size();
  mask.keep_ineq.assign(m, true);
  mask.keep_eq.assign(e, true);

  std::set<Constraint> seen;
  for (Index i = 0; i < m; ++i) {
    const Constraint& c = h.inequalities[i];
    if (is_zero(c.a) && c.b >= 0) {
      mask.keep_ineq[i] = false;
      continue;
    }
    if (!seen.insert(normalized(c)).second) mask.keep_ineq[i] = false;
  }
  std::set<Constraint> seen_eq;
  for (Index i = 0; i < e; ++i) {
    Constraint c = normalized(h.equations[i]);
    if (is_zero(c.a) && c.b == 0) {
      mask.keep_eq[i] = false;
      continue;
    }
    Constraint flipped{scaled(c.a, -1), Rational(-c.b)};
    if (seen_eq.count(c) || seen_eq.count(flipped)) {
      mask.keep_eq[i] = false;
      continue;
    }
    seen_eq.insert(c);
  }

  auto remainder = [&](std::optional<Index> skip_ineq, std::optional<Index> skip_eq) {
    HRep rest(h.dim);
    for (Index i = 0; i < m; ++i)
      if (mask.keep_ineq[i] && skip_ineq != i) rest.inequalities.push_back(h.inequalities[i]);
    for (Index i = 0; i < e; ++i)
      if (mask.keep_eq[i] && skip_eq != i) rest.equations.push_back(h.equations[i]);
    return rest;
  };
  for (Index i = 0; i < m; ++i) {
    if (!mask.keep_ineq[i]) continue;
    const Constraint& c = h.inequalities[i];
    if (is_valid(remainder(i, std::nullopt), c.a, c.b, limits).valid()) mask.keep_ineq[i] = false;
  }
  for (Index i = 0; i < e; ++i) {
    if (!mask.keep_eq[i]) continue;
    const Constraint& c = h.equations[i];
    HRep rest = remainder(std::nullopt, i);
    if (is_valid(rest, c.a, c.b, limits).valid() && is_valid(rest, scaled(c.a, -1), -c.b, limits).valid())
      mask.keep_eq[i] = false;
  }
  return mask;
}

/// The single row 0 <= -1 with multipliers taken from a Farkas certificate
/// of the source system.
inline TrackedSystem infeasible_system(const HRep& source, Index dim, const Limits& limits) {
  FeasibilityResult r = feasible(source, limits);
  const Index m = source.inequalities.size();
  const RatVector& cert = r.certificate->multipliers;
  RatVector lambda(m + source.equations.size());
  for (Index i = 0; i < m; ++i) lambda[i] = cert[i];
  for (Index j = 0; j < source.equations.size(); ++j) lambda[m + j] = cert[m + 2 * j] - cert[m + 2 * j + 1];
  auto [lhs, rhs] = combine_rows(source, cert);
  Rational s = -1 / rhs;
  for (Rational& x : lambda) x *= s;
  TrackedSystem out{dim, {}, {}};
  out.ineq.push_back({zeros(dim), Rational(-1), std::move(lambda)});
  return out;
}

/// Prunes a tracked system; nullopt when it is infeasible.
inline std::optional<TrackedSystem> prune(TrackedSystem s, const Limits& limits) {
  RedundancyMask mask = redundancy_mask(to_hrep(s), limits);
  if (mask.infeasible) return std::nullopt;
  TrackedSystem out{s.dim, {}, {}};
  for (Index i = 0; i < s.ineq.size(); ++i)
    if (mask.keep_ineq[i]) out.ineq.push_back(std::move(s.ineq[i]));
  for (Index i = 0; i < s.eq.size(); ++i)
    if (mask.keep_eq[i]) out.eq.push_back(std::move(s.eq[i]));
  return out;
}

/// Eliminates the listed coordinates (positions in `s`), pruning after every
/// step. Each step picks the pending coordinate that an equation can
/// substitute, else the one with the fewest pairwise combinations (ties: the
/// highest position). Surviving coordinates keep their relative order.
/// Returns nullopt when the system turns out infeasible.
inline std::optional<TrackedSystem> project_out(TrackedSystem s, std::vector<Index> coords, const Limits& limits) {
  std::sort(coords.begin(), coords.end());
  if (std::adjacent_find(coords.begin(), coords.end()) != coords.end())
    throw DimensionError("elimination coordinates must be distinct");
  for (Index j : coords)
    if (j >= s.dim) throw DimensionError("elimination coordinate out of range");
  const Index total = coords.size();
  if (coords.empty()) return prune(std::move(s), limits);
  for (Index step = 1; !coords.empty(); ++step) {
    Index best = coords.size();
    long best_cost = 0;
    for (Index t = coords.size(); t-- > 0;) {
      const Index j = coords[t];
      bool substitutable =
          std::any_of(s.eq.begin(), s.eq.end(), [j](const TrackedRow& r) { return r.a[j] != 0; });
      long cost;
      if (substitutable) {
        cost = -1;
      } else {
        long p = 0, n = 0;
        for (const TrackedRow& r : s.ineq) {
          p += r.a[j] > 0;
          n += r.a[j] < 0;
        }
        cost = p * n;
      }
      if (best == coords.size() || cost < best_cost) {
        best = t;
        best_cost = cost;
      }
    }
    const Index j = coords[best];
    coords.erase(coords.begin() + static_cast<std::ptrdiff_t>(best));
    for (Index& c : coords)
      if (c > j) --c;
    try {
      s = eliminate_coordinate(std::move(s), j, limits);
    } catch (const ResourceError& err) {
      throw ResourceError(std::string(err.what()) + " at elimination step " + std::to_string(step) + " of " +
                          std::to_string(total));
    }
    std::optional<TrackedSystem> pruned = prune(std::move(s), limits);
    if (!pruned) return std::nullopt;
    s = std::move(*pruned);
  }
  return s;
}

inline TraceEntry trace_entry(const RatVector& lambda) {
  TraceEntry t;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) continue;
    t.parents.push_back(i);
    t.multipliers.push_back(lambda[i]);
  }
  return t;
}

}  // namespace detail

/// Projects P in R^d onto its first d - 1 coordinates: rows without x_d are
/// kept, each (positive, negative) pair in x_d is combined, and the result is
/// pruned. An equation involving x_d is substituted exactly instead.
inline EliminationResult eliminate_last(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (h.dim == 0) throw DimensionError("eliminate_last: no coordinate to eliminate");
  detail::TrackedSystem s = detail::eliminate_coordinate(detail::track(h), h.dim - 1, limits);
  std::optional<detail::TrackedSystem> pruned = detail::prune(std::move(s), limits);
  detail::TrackedSystem out = pruned ? std::move(*pruned) : detail::infeasible_system(h, h.dim - 1, limits);
  EliminationResult r{detail::to_hrep(out), {}};
  for (const detail::TrackedRow& row : out.ineq) r.trace.inequalities.push_back(detail::trace_entry(row.lambda));
  for (const detail::TrackedRow& row : out.eq) r.trace.equations.push_back(detail::trace_entry(row.lambda));
  return r;
}

/// Rebuilds the rows of an elimination result from its trace; the
/// eliminated coordinate must cancel. Returns false on any mismatch.
inline bool replay_trace(const HRep& input, const EliminationResult& r) {
  const Index m = input.inequalities.size();
  auto source = [&](Index i) -> const Constraint& {
    return i < m ? input.inequalities[i] : input.equations[i - m];
  };
  auto check = [&](const TraceEntry& t, const Constraint& row, bool inequality) {
    RatVector a = zeros(input.dim);
    Rational b = 0;
    for (Index k = 0; k < t.parents.size(); ++k) {
      if (t.parents[k] >= m + input.equations.size()) return false;
      if (inequality && t.parents[k] < m && t.multipliers[k] < 0) return false;
      if (!inequality && t.parents[k] < m) return false;
      a = axpy(a, t.multipliers[k], source(t.parents[k]).a);
      b += t.multipliers[k] * source(t.parents[k]).b;
    }
    if (a.back() != 0 || b != row.b) return false;
    return std::equal(row.a.begin(), row.a.end(), a.begin(), a.end() - 1);
  };
  if (r.trace.inequalities.size() != r.result.inequalities.size() ||
      r.trace.equations.size() != r.result.equations.size())
    return false;
  for (Index i = 0; i < r.result.inequalities.size(); ++i)
    if (!check(r.trace.inequalities[i], r.result.inequalities[i], true)) return false;
  for (Index i = 0; i < r.result.equations.size(); ++i)
    if (!check(r.trace.equations[i], r.result.equations[i], false)) return false;
  return true;
}

/// Orthogonal projection forgetting the coordinates in `coords`; the
/// remaining coordinates keep their order.
inline HRep eliminate_coords(const HRep& h, const std::vector<Index>& coords, const Limits& limits = {}) {
  h.validate();
  std::optional<detail::TrackedSystem> s = detail::project_out(detail::track(h), coords, limits);
  if (!s) return HRep::infeasible(h.dim - coords.size());
  return detail::to_hrep(*s);
}

/// Removes every row implied by the remaining rows. An infeasible system
/// collapses to the canonical row 0 <= -1.
inline HRep prune_redundant(const HRep& h, const Limits& limits = {}) {
  h.validate();
  detail::RedundancyMask mask = detail::redundancy_mask(h, limits);
  if (mask.infeasible) return HRep::infeasible(h.dim);
  HRep out(h.dim);
  for (Index i = 0; i < h.inequalities.size(); ++i)
    if (mask.keep_ineq[i]) out.inequalities.push_back(h.inequalities[i]);
  for (Index i = 0; i < h.equations.size(); ++i)
    if (mask.keep_eq[i]) out.equations.push_back(h.equations[i]);
  return out;
}

/// Generators of the projection cone {lambda >= 0 : lambda^T D_{*,j} = 0 for
/// every j >= kept}. One eliminated column yields the unit vectors of rows with
/// a zero entry plus one primitive vector per (positive, negative) row pair.
/// Several columns compose this construction column by column; the result is
/// primitive, deduplicated, and sorted.
inline std::vector<RatVector> projection_cone_generators(const RatMatrix& d, Index kept,
                                                         const Limits& limits = {}) {
  if (kept > d.cols()) throw DimensionError("projection_cone_generators: more kept columns than columns");
  const Index q = d.rows();
  std::vector<RatVector> gens;
  for (Index i = 0; i < q; ++i) gens.push_back(unit_vector(q, i));
  for (Index col = kept; col < d.cols(); ++col) {
    RatVector column = d.column(col);
    std::vector<Rational> delta;
    for (const RatVector& g : gens) delta.push_back(dot(g, column));
    std::vector<RatVector> next;
    std::vector<Index> pos, neg;
    for (Index k = 0; k < gens.size(); ++k) {
      if (delta[k] == 0) {
        next.push_back(gens[k]);
      } else {
        (delta[k] > 0 ? pos : neg).push_back(k);
      }
    }
    if (next.size() + pos.size() * neg.size() > limits.max_rows)
      throw ResourceError("projection cone generator count exceeds the row cap");
    for (Index k : pos)
      for (Index l : neg) next.push_back(primitive(axpy(scaled(gens[k], -delta[l]), delta[k], gens[l])));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    gens = std::move(next);
  }
  for (RatVector& g : gens) g = primitive(g);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

/// Image of Q = {y : D y <= g, D_eq y = g_eq} under y -> T y.
struct ProjectionResult {
  /// Inequalities; then equations derived from Q's equations; then the
  /// equations <w, x> = 0 describing the image subspace T(R^d).
  HRep image;
  /// For each image inequality / derived equation, multipliers over the rows
  /// of Q with l^T [D; D_eq] = a^T T and <l, g> = b.
  std::vector<RatVector> ineq_multipliers;
  std::vector<RatVector> eq_multipliers;
  /// Basis of ker(T^T); these rows close the list of image equations.
  std::vector<RatVector> subspace;
};

/// Changes coordinates so that the first rank(T) coordinates are T_R y for a
/// maximal independent row set R of T, eliminates the others, embeds the
/// result in the x_R coordinates, and adds the equations of T(R^d).
inline ProjectionResult project_general(const HRep& h, const RatMatrix& t, const Limits& limits = {}) {
  h.validate();
  if (t.cols() != h.dim) throw DimensionError("project_general: map and polyhedron dimensions differ");
  const Index d = h.dim, n = t.rows();
  std::vector<RatVector> t_rows = t.row_vectors();
  std::vector<Index> rows_r = independent_rows(t_rows, d);
  const Index rank_t = rows_r.size();

  std::vector<RatVector> basis_rows;
  for (Index i : rows_r) basis_rows.push_back(t_rows[i]);
  std::vector<Index> pivots;
  rref(RatMatrix::from_rows(basis_rows, d), &pivots);
  std::vector<bool> is_pivot(d, false);
  for (Index c : pivots) is_pivot[c] = true;
  for (Index j = 0; j < d; ++j)
    if (!is_pivot[j]) basis_rows.push_back(unit_vector(d, j));
  RatMatrix change_inv = inverse(RatMatrix::from_rows(basis_rows, d));

  detail::TrackedSystem s = detail::track(h);
  for (detail::TrackedRow& r : s.ineq) r.a = left_multiply(r.a, change_inv);
  for (detail::TrackedRow& r : s.eq) r.a = left_multiply(r.a, change_inv);
  std::vector<Index> coords;
  for (Index j = rank_t; j < d; ++j) coords.push_back(j);
  std::optional<detail::TrackedSystem> projected = detail::project_out(std::move(s), coords, limits);
  detail::TrackedSystem low = projected ? std::move(*projected) : detail::infeasible_system(h, rank_t, limits);

  auto embed = [&](const RatVector& a) {
    RatVector x = zeros(n);
    for (Index k = 0; k < rank_t; ++k) x[rows_r[k]] = a[k];
    return x;
  };
  ProjectionResult r;
  r.image = HRep(n);
  for (detail::TrackedRow& row : low.ineq) {
    r.image.inequalities.push_back({embed(row.a), row.b});
    r.ineq_multipliers.push_back(std::move(row.lambda));
  }
  for (detail::TrackedRow& row : low.eq) {
    r.image.equations.push_back({embed(row.a), row.b});
    r.eq_multipliers.push_back(std::move(row.lambda));
  }
  r.subspace = kernel_basis(t.transpose());
  for (const RatVector& w : r.subspace) r.image.equations.push_back({w, Rational(0)});
  return r;
}

}  // namespace polyq
