#pragma once

// Multiplier-tracking Fourier-Motzkin engine behind the feasibility and
// validity decisions. Every row carries the nonnegative multipliers that
// produce it from the original rows, so a contradiction row 0 <= b < 0 is a
// Farkas certificate as soon as it appears.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polyq/limits.hpp"
#include "polyq/linalg.hpp"

namespace polyq::detail {

struct TrackedRow {
  RatVector a;
  Rational b;
  RatVector lambda;

  Index support() const {
    Index s = 0;
    for (const Rational& x : lambda) s += (x != 0);
    return s;
  }
};

struct EliminationOptions {
  /// Drop rows whose multiplier support exceeds (steps + 1); such rows are
  /// implied by the others (Chernikov/Kohler criterion).
  bool history_pruning = true;
  Limits limits{};
};

struct EliminationRun {
  std::vector<std::vector<TrackedRow>> stages;  // system before each step
  std::vector<Index> order;
  std::vector<TrackedRow> final_rows;
  std::optional<TrackedRow> contradiction;
};

inline void normalize(TrackedRow& row) {
  Rational s = is_zero(row.a) ? primitive_scale(row.lambda) : primitive_scale(row.a);
  if (s == 1) return;
  for (Rational& x : row.a) x *= s;
  row.b *= s;
  for (Rational& x : row.lambda) x *= s;
}

inline std::vector<TrackedRow> initial_rows(const std::vector<RatVector>& a, const std::vector<Rational>& b) {
  std::vector<TrackedRow> rows;
  rows.reserve(a.size());
  for (Index i = 0; i < a.size(); ++i) rows.push_back({a[i], b[i], unit_vector(a.size(), i)});
  return rows;
}

// Keeps, for every normalized left-hand side, the tightest row (ties: the
// smaller multiplier support, then first seen). Trivial rows 0 <= b, b >= 0,
// are dropped.
inline std::vector<TrackedRow> dedupe(std::vector<TrackedRow> rows) {
  std::map<RatVector, Index> best;
  std::vector<TrackedRow> kept;
  for (TrackedRow& r : rows) {
    if (is_zero(r.a) && r.b >= 0) continue;
    normalize(r);
    auto it = best.find(r.a);
    if (it == best.end()) {
      best.emplace(r.a, kept.size());
      kept.push_back(std::move(r));
      continue;
    }
    TrackedRow& old = kept[it->second];
    if (r.b < old.b || (r.b == old.b && r.support() < old.support())) old = std::move(r);
  }
  return kept;
}

inline std::optional<TrackedRow> find_contradiction(const std::vector<TrackedRow>& rows) {
  for (const TrackedRow& r : rows)
    if (is_zero(r.a) && r.b < 0) return r;
  return std::nullopt;
}

/// Eliminates the variables in `order` one after another. Stops at the first
/// contradiction row.
inline EliminationRun eliminate(std::vector<TrackedRow> rows, const std::vector<Index>& order,
                                const EliminationOptions& opts = {}) {
  EliminationRun run;
  run.order = order;
  rows = dedupe(std::move(rows));
  Index steps = 0;
  for (Index j : order) {
    if ((run.contradiction = find_contradiction(rows))) return run;
    run.stages.push_back(rows);
    std::vector<const TrackedRow*> pos, neg;
    std::vector<TrackedRow> next;
    for (const TrackedRow& r : rows) {
      int s = sign(r.a[j]);
      if (s > 0) {
        pos.push_back(&r);
      } else if (s < 0) {
        neg.push_back(&r);
      } else {
        next.push_back(r);
      }
    }
    const bool moved = !pos.empty() || !neg.empty();
    if (moved) ++steps;
    for (const TrackedRow* k : pos) {
      for (const TrackedRow* l : neg) {
        Rational fk = -l->a[j];
        Rational fl = k->a[j];
        TrackedRow c{RatVector(k->a.size()), Rational(fk * k->b + fl * l->b), RatVector(k->lambda.size())};
        for (Index i = 0; i < c.a.size(); ++i) c.a[i] = fk * k->a[i] + fl * l->a[i];
        c.a[j] = 0;
        for (Index i = 0; i < c.lambda.size(); ++i) c.lambda[i] = fk * k->lambda[i] + fl * l->lambda[i];
        if (is_zero(c.a)) {
          if (c.b >= 0) continue;
          normalize(c);
          run.contradiction = std::move(c);
          return run;
        }
        if (opts.history_pruning && c.support() > steps + 1) continue;
        next.push_back(std::move(c));
        if (next.size() > opts.limits.max_rows)
          throw ResourceError("elimination exceeded " + std::to_string(opts.limits.max_rows) + " rows");
      }
    }
    rows = dedupe(std::move(next));
  }
  run.contradiction = find_contradiction(rows);
  run.final_rows = std::move(rows);
  return run;
}

/// Extends `x` (kept variables already set) to a solution of the original
/// system, choosing each eliminated variable as close to zero as its bounds
/// allow.
inline RatVector back_substitute(const EliminationRun& run, RatVector x) {
  for (Index t = run.order.size(); t-- > 0;) {
    const Index j = run.order[t];
    std::optional<Rational> lo, hi;
    for (const TrackedRow& r : run.stages[t]) {
      if (r.a[j] == 0) continue;
      Rational rest = 0;
      for (Index i = 0; i < r.a.size(); ++i)
        if (i != j && r.a[i] != 0) rest += r.a[i] * x[i];
      Rational bound = (r.b - rest) / r.a[j];
      if (r.a[j] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    if (lo && hi && *lo > *hi) throw std::logic_error("back substitution found an empty interval");
    if ((!lo || *lo <= 0) && (!hi || *hi >= 0)) {
      x[j] = 0;
    } else if (lo && *lo > 0) {
      x[j] = *lo;
    } else {
      x[j] = *hi;
    }
  }
  return x;
}

}  // namespace polyq::detail
