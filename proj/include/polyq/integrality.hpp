#pragma once

// Integer hulls, integrality, integral Hilbert bases, total dual integrality,
// and integral strong duality. Every search here is exhaustive over a box
// whose sufficiency is argued next to it; nothing is sampled.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polyq/convert.hpp"
#include "polyq/structure.hpp"

namespace polyq {

namespace detail {

/// Counts the integer points of the box [lo, hi] and throws when they exceed
/// the lattice cap. Empty boxes count zero.
inline Integer box_size(const std::vector<Integer>& lo, const std::vector<Integer>& hi) {
  Integer count = 1;
  for (Index j = 0; j < lo.size(); ++j) {
    if (hi[j] < lo[j]) return 0;
    count *= hi[j] - lo[j] + 1;
  }
  return count;
}

inline void require_box_within(const std::vector<Integer>& lo, const std::vector<Integer>& hi, const Limits& limits,
                               const char* op) {
  Integer count = box_size(lo, hi);
  if (count > Integer(static_cast<unsigned long>(limits.max_lattice)))
    throw ResourceError(std::string(op) + ": " + count.get_str() + " lattice points exceed the cap");
}

/// Visits the integer points of [lo, hi] in lexicographic order.
template <class Fn>
void for_each_box_point(const std::vector<Integer>& lo, const std::vector<Integer>& hi, Fn&& fn) {
  const Index n = lo.size();
  for (Index j = 0; j < n; ++j)
    if (hi[j] < lo[j]) return;
  RatVector x(n);
  for (Index j = 0; j < n; ++j) x[j] = lo[j];
  while (true) {
    fn(static_cast<const RatVector&>(x));
    Index j = n;
    while (j > 0 && x[j - 1] == hi[j - 1]) {
      x[j - 1] = lo[j - 1];
      --j;
    }
    if (j == 0) return;
    x[j - 1] += 1;
  }
}

/// Some w with <w, g> >= 1 for every g; exists iff ccone(gens) is pointed
/// and no generator is zero.
inline std::optional<RatVector> positive_functional(const std::vector<RatVector>& gens, Index n,
                                                    const Limits& limits) {
  HRep h(n);
  for (const RatVector& g : gens) h.inequalities.push_back({scaled(g, -1), Rational(-1)});
  return feasible(h, limits).point;
}

inline std::vector<RatVector> nonzero(const std::vector<RatVector>& gens) {
  std::vector<RatVector> out;
  for (const RatVector& g : gens)
    if (!is_zero(g)) out.push_back(g);
  return out;
}

}  // namespace detail

/// Decides membership in mono(generators) for a pointed cone. A functional
/// that is positive on every generator bounds each multiplier, so the search
/// over multipliers is finite; failed (generator index, residual) states are
/// remembered across queries.
class MonoidOracle {
 public:
  MonoidOracle(std::vector<RatVector> generators, Index n, const Limits& limits = {})
      : gens_(std::move(generators)), n_(n), limits_(limits) {
    for (const RatVector& g : gens_)
      if (g.size() != n_) throw DimensionError("MonoidOracle: generator dimension mismatch");
    std::vector<RatVector> active = detail::nonzero(gens_);
    std::optional<RatVector> w = detail::positive_functional(active, n_, limits_);
    if (!w) throw PreconditionError("MonoidOracle: the generators span a cone with a nontrivial lineality space");
    weight_ = std::move(*w);
    for (const RatVector& g : gens_) {
      gen_weight_.push_back(dot(weight_, g));
      integral_ = integral_ && is_integral(g);
    }
  }

  const std::vector<RatVector>& generators() const { return gens_; }

  /// Multipliers in N (one per generator, zero generators get 0) summing the
  /// generators to `target`, or nullopt when target is not in the monoid.
  std::optional<std::vector<Integer>> decompose(const RatVector& target) {
    if (target.size() != n_) throw DimensionError("MonoidOracle: target dimension mismatch");
    if (!is_integral(target) && integral_) return std::nullopt;
    std::vector<Integer> lambda(gens_.size(), Integer(0));
    if (!search(0, target, lambda)) return std::nullopt;
    return lambda;
  }

  bool contains(const RatVector& target) { return decompose(target).has_value(); }

 private:
  bool search(Index i, const RatVector& residual, std::vector<Integer>& lambda) {
    if (i == gens_.size()) return is_zero(residual);
    Rational budget = dot(weight_, residual);
    if (budget < 0) return false;
    if (budget == 0) return is_zero(residual);
    if (failed_.count({i, residual})) return false;
    if (++states_ > limits_.max_lattice)
      throw ResourceError("MonoidOracle: search states exceed the lattice cap");
    Integer top = gen_weight_[i] == 0 ? Integer(0) : floor_of(budget / gen_weight_[i]);
    for (Integer k = top; k >= 0; --k) {
      RatVector rest = axpy(residual, Rational(-k), gens_[i]);
      if (search(i + 1, rest, lambda)) {
        lambda[i] = k;
        return true;
      }
    }
    failed_.insert({i, residual});
    return false;
  }

  std::vector<RatVector> gens_;
  Index n_;
  Limits limits_;
  RatVector weight_;
  std::vector<Rational> gen_weight_;
  bool integral_ = true;
  std::set<std::pair<Index, RatVector>> failed_;
  std::size_t states_ = 0;
};

/// Finds lambda in N^k with sum lambda_i g_i = target, reusable across
/// targets. Pointed generator sets go to MonoidOracle. Otherwise the fiber
/// D = {lambda >= 0 : G lambda = target} equals Q + ccone(R), where the
/// primitive integral rays R depend only on G. The vertices Q are the
/// nonnegative basic solutions. Subtracting integer multiples of rays moves
/// any integral point of D into Q + [0,1]R, which bounds the search. Within
/// that box, only the coordinates outside one fixed basis are enumerated.
class CombinationSolver {
 public:
  CombinationSolver(std::vector<RatVector> generators, Index n, const Limits& limits = {})
      : gens_(std::move(generators)), n_(n), limits_(limits) {
    for (const RatVector& g : gens_)
      if (g.size() != n_) throw DimensionError("nonnegative_integer_combination: generator dimension mismatch");
    std::vector<RatVector> active = detail::nonzero(gens_);
    if (detail::positive_functional(active, n_, limits_)) {
      for (Index i = 0; i < gens_.size(); ++i)
        if (!is_zero(gens_[i])) active_ids_.push_back(i);
      monoid_.emplace(std::move(active), n_, limits_);
      return;
    }
    const Index k = gens_.size();
    std::vector<RatVector> g_rows;
    for (Index j = 0; j < n_; ++j) {
      RatVector row(k);
      for (Index i = 0; i < k; ++i) row[i] = gens_[i][j];
      g_rows.push_back(std::move(row));
    }
    rows_ = independent_rows(g_rows, k);
    std::vector<RatVector> reduced;
    for (Index j : rows_) reduced.push_back(g_rows[j]);
    reduced_ = RatMatrix::from_rows(reduced, k);

    HRep cone(k);
    for (Index i = 0; i < k; ++i) cone.inequalities.push_back({scaled(unit_vector(k, i), -1), Rational(0)});
    for (const RatVector& row : reduced) cone.equations.push_back({row, Rational(0)});
    for (const RatVector& r : h_to_v(cone, limits_).rays) rays_.push_back(primitive(r));

    const Index r = rows_.size();
    std::vector<Index> all_rows(r);
    std::iota(all_rows.begin(), all_rows.end(), Index{0});
    std::size_t seen = 0;
    for_each_subset(k, r, [&](std::span<const Index> cols) {
      if (++seen > limits_.max_subsets) throw ResourceError("nonnegative_integer_combination: column bases exceed the cap");
      RatMatrix b = reduced_.submatrix(all_rows, cols);
      if (determinant(b) != 0) bases_.push_back({{cols.begin(), cols.end()}, inverse(b)});
      return true;
    });
  }

  std::optional<std::vector<Integer>> solve(const RatVector& target) {
    if (target.size() != n_) throw DimensionError("nonnegative_integer_combination: target dimension mismatch");
    const Index k = gens_.size();
    if (monoid_) {
      std::optional<std::vector<Integer>> lambda = monoid_->decompose(target);
      if (!lambda) return std::nullopt;
      std::vector<Integer> full(k, Integer(0));
      for (Index i = 0; i < active_ids_.size(); ++i) full[active_ids_[i]] = (*lambda)[i];
      return full;
    }
    RatVector reduced_target;
    for (Index j : rows_) reduced_target.push_back(target[j]);
    std::vector<RatVector> vertices;
    for (const Basis& basis : bases_) {
      std::optional<RatVector> lambda = basic_solution(basis, reduced_target, {});
      if (lambda && satisfies(*lambda, target)) vertices.push_back(std::move(*lambda));
    }
    if (vertices.empty()) return std::nullopt;

    std::vector<Integer> hi(k);
    for (Index i = 0; i < k; ++i) {
      Rational top = vertices.front()[i];
      for (const RatVector& v : vertices) top = std::max(top, v[i]);
      for (const RatVector& ray : rays_) top += ray[i];
      hi[i] = floor_of(top);
    }
    const Basis& fixed = bases_.front();
    std::vector<Index> free;
    for (Index i = 0; i < k; ++i)
      if (!std::binary_search(fixed.cols.begin(), fixed.cols.end(), i)) free.push_back(i);
    std::vector<Integer> lo_free(free.size(), Integer(0)), hi_free;
    for (Index i : free) hi_free.push_back(hi[i]);
    detail::require_box_within(lo_free, hi_free, limits_, "nonnegative_integer_combination");
    std::optional<std::vector<Integer>> found;
    detail::for_each_box_point(lo_free, hi_free, [&](const RatVector& chosen) {
      if (found) return;
      RatVector assigned = zeros(k);
      for (Index t = 0; t < free.size(); ++t) assigned[free[t]] = chosen[t];
      std::optional<RatVector> lambda = basic_solution(fixed, reduced_target, assigned);
      if (!lambda || !is_integral(*lambda) || !satisfies(*lambda, target)) return;
      std::vector<Integer> out;
      for (const Rational& x : *lambda) out.push_back(x.get_num());
      found = std::move(out);
    });
    return found;
  }

 private:
  struct Basis {
    std::vector<Index> cols;
    RatMatrix inverse;
  };

  /// Solves for the basic coordinates given the others (`assigned`, or all
  /// zero); nullopt when a basic coordinate comes out negative.
  std::optional<RatVector> basic_solution(const Basis& basis, const RatVector& reduced_target,
                                          const RatVector& assigned) const {
    const Index k = gens_.size();
    RatVector lambda = assigned.empty() ? zeros(k) : assigned;
    RatVector rhs = reduced_target;
    if (!assigned.empty())
      for (Index i = 0; i < rhs.size(); ++i)
        for (Index c = 0; c < k; ++c)
          if (assigned[c] != 0) rhs[i] -= reduced_(i, c) * assigned[c];
    RatVector basic = basis.inverse * rhs;
    for (Index t = 0; t < basis.cols.size(); ++t) {
      if (basic[t] < 0) return std::nullopt;
      lambda[basis.cols[t]] = basic[t];
    }
    return lambda;
  }

  /// Full check of G lambda = target; the reduced rows alone miss targets
  /// outside the column space of G.
  bool satisfies(const RatVector& lambda, const RatVector& target) const {
    for (Index j = 0; j < n_; ++j) {
      Rational sum = 0;
      for (Index i = 0; i < gens_.size(); ++i) sum += lambda[i] * gens_[i][j];
      if (sum != target[j]) return false;
    }
    return true;
  }

  std::vector<RatVector> gens_;
  Index n_;
  Limits limits_;
  std::optional<MonoidOracle> monoid_;
  std::vector<Index> active_ids_;
  std::vector<Index> rows_;
  RatMatrix reduced_;
  std::vector<RatVector> rays_;
  std::vector<Basis> bases_;
};

/// Some lambda in N^k with sum lambda_i g_i = target, or nullopt.
inline std::optional<std::vector<Integer>> nonnegative_integer_combination(const std::vector<RatVector>& gens,
                                                                           const RatVector& target, Index n,
                                                                           const Limits& limits = {}) {
  if (target.size() != n) throw DimensionError("nonnegative_integer_combination: target dimension mismatch");
  return CombinationSolver(gens, n, limits).solve(target);
}

// ---------------------------------------------------------------------------
// Lattice points and integer hulls
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<RatVector> bounded_vertices(const HRep& h, const char* op, const Limits& limits) {
  if (!lineality_space(h).empty() || !extreme_rays(h, limits).empty())
    throw PreconditionError(std::string(op) + ": the polyhedron is unbounded");
  return vertices(h, limits);
}

}  // namespace detail

/// Integer points of a bounded P, sorted; enumerated over the integer
/// bounding box of its vertices.
inline std::vector<RatVector> lattice_points(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (!feasible(h, limits).feasible()) return {};
  std::vector<RatVector> verts = detail::bounded_vertices(h, "lattice_points", limits);
  const Index n = h.dim;
  std::vector<Integer> lo(n), hi(n);
  for (Index j = 0; j < n; ++j) {
    Rational mn = verts.front()[j], mx = verts.front()[j];
    for (const RatVector& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_of(mn);
    hi[j] = floor_of(mx);
  }
  detail::require_box_within(lo, hi, limits, "lattice_points");
  std::vector<RatVector> out;
  detail::for_each_box_point(lo, hi, [&](const RatVector& x) {
    if (contains(h, x).inside) out.push_back(x);
  });
  return out;
}

namespace detail {

/// Drops every point that is the midpoint of two others; the convex hull is
/// unchanged and the orthant projection behind v_to_h gets far fewer columns.
inline std::vector<RatVector> drop_midpoints(const std::vector<RatVector>& points) {
  std::set<RatVector> all(points.begin(), points.end());
  std::set<RatVector> inner;
  for (auto p = all.begin(); p != all.end(); ++p) {
    for (auto q = std::next(p); q != all.end(); ++q) {
      RatVector mid = scaled(*p + *q, make_rational(1, 2));
      if (all.count(mid)) inner.insert(std::move(mid));
    }
  }
  std::vector<RatVector> out;
  for (const RatVector& p : all)
    if (!inner.count(p)) out.push_back(p);
  return out;
}

}  // namespace detail

/// Outer description of conv(P cap Z^n) for bounded P.
inline HRep integer_hull(const HRep& h, const Limits& limits = {}) {
  std::vector<RatVector> points = detail::drop_midpoints(lattice_points(h, limits));
  return v_to_h(VRep(h.dim, std::move(points)), limits);
}

struct IntegralityVerdict {
  bool integral = true;
  std::optional<RatVector> fractional_vertex;
};

/// A pointed P is integral iff all of its vertices are. The empty set is
/// integral.
inline IntegralityVerdict is_integral(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (!feasible(h, limits).feasible()) return {};
  if (!lineality_space(h).empty()) throw PreconditionError("is_integral: the polyhedron is not pointed");
  for (const RatVector& v : vertices(h, limits))
    if (!is_integral(v)) return {false, v};
  return {};
}

// ---------------------------------------------------------------------------
// Hilbert bases
// ---------------------------------------------------------------------------

struct HilbertBasis {
  std::vector<RatVector> cone_generators;
  std::vector<RatVector> basis;
};

namespace detail {

/// Integer points of the half-open parallelepipeds {sum lambda_g g : 0 <= lambda < 1}
/// spanned by every maximal linearly independent subset of `gens`. Every
/// integer point of ccone(gens) is an N-combination of these and of `gens`:
/// write it as a conic combination of an independent subset and split off
/// the integral parts of the coefficients.
inline std::vector<RatVector> parallelepiped_points(const std::vector<RatVector>& gens, Index n,
                                                    const Limits& limits) {
  std::set<RatVector> found;
  const Index r = rank(gens, n);
  if (r == 0) return {};
  std::size_t visited = 0;
  for_each_subset(gens.size(), r, [&](std::span<const Index> ids) {
    std::vector<RatVector> cols;
    for (Index i : ids) cols.push_back(gens[i]);
    if (rank(cols, n) < r) return true;
    RatMatrix g = RatMatrix::from_columns(cols, n);
    std::vector<Index> pivots = independent_rows(g.row_vectors(), r);
    std::vector<Index> all(r);
    std::iota(all.begin(), all.end(), Index{0});
    RatMatrix left = inverse(g.submatrix(pivots, all));
    std::vector<Integer> lo(n), hi(n);
    for (Index j = 0; j < n; ++j) {
      Rational neg = 0, pos = 0;
      for (const RatVector& c : cols) (c[j] < 0 ? neg : pos) += c[j];
      lo[j] = ceil_of(neg);
      hi[j] = floor_of(pos);
    }
    Integer size = box_size(lo, hi);
    if (size > Integer(static_cast<unsigned long>(limits.max_lattice - visited)))
      throw ResourceError("hilbert_basis: parallelepiped enumeration exceeds the lattice cap");
    visited += size.get_ui();
    for_each_box_point(lo, hi, [&](const RatVector& z) {
      RatVector zp(r);
      for (Index k = 0; k < r; ++k) zp[k] = z[pivots[k]];
      RatVector lambda = left * zp;
      for (const Rational& l : lambda)
        if (l < 0 || l >= 1) return;
      if (g * lambda != z || is_zero(z)) return;
      found.insert(z);
    });
    return true;
  });
  return {found.begin(), found.end()};
}

inline std::vector<RatVector> integral_generators(const std::vector<RatVector>& gens, Index n, const char* op) {
  std::set<RatVector> out;
  for (const RatVector& g : gens) {
    if (g.size() != n) throw DimensionError(std::string(op) + ": generator dimension mismatch");
    if (!is_zero(g)) out.insert(primitive(g));
  }
  return {out.begin(), out.end()};
}

}  // namespace detail

/// The unique inclusion-minimal integral Hilbert basis of the pointed cone
/// ccone(y), sorted. Rational generators are scaled to primitive integers.
inline HilbertBasis hilbert_basis(const std::vector<RatVector>& y, Index n, const Limits& limits = {}) {
  std::vector<RatVector> gens = detail::integral_generators(y, n, "hilbert_basis");
  HilbertBasis out{y, {}};
  if (gens.empty()) return out;
  std::optional<RatVector> w = detail::positive_functional(gens, n, limits);
  if (!w) throw PreconditionError("hilbert_basis: the cone is not pointed");
  std::set<RatVector> pool(gens.begin(), gens.end());
  for (RatVector& z : detail::parallelepiped_points(gens, n, limits)) pool.insert(std::move(z));
  std::vector<RatVector> candidates(pool.begin(), pool.end());
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const RatVector& a, const RatVector& b) { return dot(*w, a) < dot(*w, b); });
  // A reducible candidate splits into elements of strictly smaller weight,
  // all of which are generated by the irreducible ones kept so far.
  for (const RatVector& c : candidates) {
    if (!out.basis.empty() && MonoidOracle(out.basis, n, limits).contains(c)) continue;
    out.basis.push_back(c);
  }
  std::sort(out.basis.begin(), out.basis.end());
  return out;
}

/// An integer point of ccone(h) outside mono(h), or nullopt when h is an
/// integral Hilbert basis of the cone it spans. Exact: only the generating
/// parallelepiped points need testing. Requires a pointed cone.
inline std::optional<RatVector> hilbert_property_violation(const std::vector<RatVector>& h, Index n,
                                                           const Limits& limits = {}) {
  for (const RatVector& g : h) {
    if (g.size() != n) throw DimensionError("hilbert_property_violation: generator dimension mismatch");
    if (!is_integral(g)) throw PreconditionError("hilbert_property_violation: generators must be integral");
  }
  std::vector<RatVector> gens = detail::nonzero(h);
  if (gens.empty()) return std::nullopt;
  MonoidOracle oracle(gens, n, limits);
  for (const RatVector& z : detail::parallelepiped_points(gens, n, limits))
    if (!oracle.contains(z)) return z;
  return std::nullopt;
}

/// P cap Z^n = X + mono(Y) with char(P) = ccone(Y).
struct MonoidDecomposition {
  std::vector<RatVector> points;
  std::vector<RatVector> generators;
};

/// Supported shapes: bounded P (Y empty, X all lattice points) and pointed
/// cones (X = {0}, Y the Hilbert basis).
inline MonoidDecomposition lattice_decomposition(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (!feasible(h, limits).feasible()) return {};
  if (!lineality_space(h).empty()) throw PreconditionError("lattice_decomposition: the polyhedron is not pointed");
  std::vector<RatVector> rays = extreme_rays(h, limits);
  if (rays.empty()) return {lattice_points(h, limits), {}};
  std::vector<RatVector> verts = vertices(h, limits);
  if (verts.size() != 1 || !is_zero(verts.front()))
    throw PreconditionError("lattice_decomposition: only bounded polyhedra and pointed cones are supported");
  return {{zeros(h.dim)}, hilbert_basis(rays, h.dim, limits).basis};
}

// ---------------------------------------------------------------------------
// Total dual integrality
// ---------------------------------------------------------------------------

struct TdiVerdict {
  bool tdi = true;
  /// False when the verdict rests on a bounded search (definitional check
  /// without a violation): then it only says "no violation up to c_box".
  bool complete = true;
  /// Equality set of the face whose active rows fail the Hilbert property.
  std::optional<std::vector<Index>> face;
  /// Either the lattice point outside the active monoid (face set) or the
  /// objective without an integral dual optimum.
  std::optional<RatVector> witness;
  /// Objective box used by the definitional check, 0 when not used.
  long c_box = 0;
};

namespace detail {

/// Maximizes linear objectives over a fixed nonempty P using its vertices,
/// extreme rays, and lineality space, computed once.
class LpOracle {
 public:
  LpOracle(const HRep& h, const Limits& limits) : h_(h), rows_(h.expanded_rows()) {
    lineality_ = lineality_space(h);
    HRep q = h;
    for (const RatVector& l : lineality_) q.equations.push_back({l, Rational(0)});
    rays_ = extreme_rays(q, limits);
    vertices_ = polyq::vertices(q, limits);
  }

  /// (max value, lexicographically smallest maximizing vertex); nullopt when
  /// the maximum is infinite.
  std::optional<std::pair<Rational, RatVector>> maximize(const RatVector& c) const {
    for (const RatVector& l : lineality_)
      if (dot(c, l) != 0) return std::nullopt;
    for (const RatVector& r : rays_)
      if (dot(c, r) > 0) return std::nullopt;
    std::optional<std::pair<Rational, RatVector>> best;
    for (const RatVector& v : vertices_) {
      Rational val = dot(c, v);
      if (!best || val > best->first) best = {val, v};
    }
    return best;
  }

  /// Expanded rows (inequalities, then equation pairs) tight at x.
  std::vector<Index> tight_rows(const RatVector& x) const {
    std::vector<Index> out;
    for (Index i = 0; i < rows_.size(); ++i)
      if (dot(rows_[i].a, x) == rows_[i].b) out.push_back(i);
    return out;
  }

  const std::vector<Constraint>& rows() const { return rows_; }
  bool bounded() const { return lineality_.empty() && rays_.empty(); }
  const std::vector<RatVector>& vertices() const { return vertices_; }

  /// Solver over the rows tight at x, shared by every objective whose
  /// optimal vertex has the same tight set.
  CombinationSolver& solver_for(const std::vector<Index>& tight, Index n, const Limits& limits) const {
    auto it = solvers_.find(tight);
    if (it == solvers_.end()) {
      std::vector<RatVector> gens;
      for (Index i : tight) gens.push_back(rows_[i].a);
      it = solvers_.emplace(tight, CombinationSolver(std::move(gens), n, limits)).first;
    }
    return it->second;
  }

 private:
  HRep h_;
  std::vector<Constraint> rows_;
  std::vector<RatVector> lineality_;
  std::vector<RatVector> rays_;
  std::vector<RatVector> vertices_;
  mutable std::map<std::vector<Index>, CombinationSolver> solvers_;
};

/// An integral optimum of min{<b, y> : A^T y = c, y >= 0} when one exists,
/// as multipliers over the expanded rows. By complementary slackness with
/// the optimal vertex x, the optimal duals are exactly the nonnegative y
/// supported on the rows tight at x with A^T y = c.
inline std::optional<RatVector> integral_dual_optimum(const LpOracle& lp, const RatVector& c, const RatVector& x,
                                                      Index n, const Limits& limits) {
  std::vector<Index> tight = lp.tight_rows(x);
  std::optional<std::vector<Integer>> lambda = lp.solver_for(tight, n, limits).solve(c);
  if (!lambda) return std::nullopt;
  RatVector y = zeros(lp.rows().size());
  for (Index k = 0; k < tight.size(); ++k) y[tight[k]] = (*lambda)[k];
  return y;
}

inline void require_integral_matrix(const HRep& h, const char* op) {
  for (const Constraint& c : h.expanded_rows())
    if (!is_integral(c.a)) throw PreconditionError(std::string(op) + ": the constraint matrix must be integral");
}

/// Objectives of [-box, box]^n in lexicographic order.
template <class Fn>
bool for_each_objective(Index n, long box, Fn&& fn) {
  std::vector<Integer> lo(n, Integer(-box)), hi(n, Integer(box));
  bool stopped = false;
  for_each_box_point(lo, hi, [&](const RatVector& c) {
    if (!stopped && !fn(c)) stopped = true;
  });
  return !stopped;
}

}  // namespace detail

/// The definition, checked for every integral objective c with
/// |c|_inf <= c_box and finite maximum: some y in N^m has A^T y = c and
/// <b, y> equal to the optimum. A violation disproves TDI; exhausting the box
/// does not prove it (`complete` is false). Empty systems are TDI.
inline TdiVerdict is_tdi_definitional(const HRep& h, long c_box = 3, const Limits& limits = {}) {
  h.validate();
  if (c_box < 0) throw PreconditionError("is_tdi_definitional: c_box must be nonnegative");
  TdiVerdict out;
  out.c_box = c_box;
  if (!feasible(h, limits).feasible()) return out;
  detail::LpOracle lp(h, limits);
  detail::for_each_objective(h.dim, c_box, [&](const RatVector& c) {
    std::optional<std::pair<Rational, RatVector>> opt = lp.maximize(c);
    if (!opt) return true;
    if (detail::integral_dual_optimum(lp, c, opt->second, h.dim, limits)) return true;
    out.tdi = false;
    out.witness = c;
    return false;
  });
  out.complete = !out.tdi;
  return out;
}

/// Integral A x <= b is TDI iff for every nonempty face the active rows form
/// an integral Hilbert basis. Checked exactly on every face whose active cone
/// is pointed; a nonpointed active cone (equations, implicit equalities)
/// sends the whole system to the definitional check with the default box.
inline TdiVerdict is_tdi(const HRep& h, const Limits& limits = {}) {
  h.validate();
  detail::require_integral_matrix(h, "is_tdi");
  if (!feasible(h, limits).feasible()) return {};
  std::vector<Constraint> rows = h.expanded_rows();
  const Index m = h.inequalities.size();
  for (const FaceDescriptor& f : faces(h, limits.max_subsets, limits)) {
    if (f.dim < 0) continue;
    std::set<RatVector> active;
    for (Index i : f.equality_set) {
      if (i < m) {
        active.insert(rows[i].a);
      } else {
        active.insert(rows[m + 2 * (i - m)].a);
        active.insert(rows[m + 2 * (i - m) + 1].a);
      }
    }
    std::vector<RatVector> gens = detail::nonzero({active.begin(), active.end()});
    if (!detail::positive_functional(gens, h.dim, limits)) return is_tdi_definitional(h, 3, limits);
    if (std::optional<RatVector> z = hilbert_property_violation(gens, h.dim, limits)) {
      TdiVerdict out;
      out.tdi = false;
      out.face = f.equality_set;
      out.witness = std::move(z);
      return out;
    }
  }
  return {};
}

/// A TDI system with integral matrix for a nonempty full-dimensional
/// polytope: at each vertex v, one row <g, x> <= <g, v> per element g of the
/// Hilbert basis of the cone of active row normals. Rows are sorted and
/// unique; b is integral when P is.
inline HRep make_tdi(const HRep& h, const Limits& limits = {}) {
  h.validate();
  if (!feasible(h, limits).feasible()) throw PreconditionError("make_tdi: the polyhedron is empty");
  if (dimension(h, limits) != static_cast<long>(h.dim))
    throw PreconditionError("make_tdi: the polyhedron must be full-dimensional");
  std::vector<RatVector> verts = detail::bounded_vertices(h, "make_tdi", limits);
  std::set<Constraint> out;
  for (const RatVector& v : verts) {
    std::vector<RatVector> normals;
    for (const Constraint& c : h.inequalities)
      if (dot(c.a, v) == c.b) normals.push_back(c.a);
    for (const RatVector& g : hilbert_basis(normals, h.dim, limits).basis) out.insert({g, dot(g, v)});
  }
  return HRep(h.dim, {out.begin(), out.end()});
}

// ---------------------------------------------------------------------------
// Integral strong duality
// ---------------------------------------------------------------------------

struct DualityReport {
  /// max{<c, x> : A x <= b, x integral}; nullopt when P has no lattice point.
  std::optional<Rational> primal_max;
  std::optional<RatVector> primal_argmax;
  /// The LP optimum, a bound between the two integral optima.
  Rational lp_value;
  /// min{<b, y> : A^T y = c, y >= 0 integral} when it equals the LP optimum;
  /// nullopt means every integral dual is strictly worse.
  std::optional<Rational> dual_min;
  std::optional<RatVector> dual_solution;
  bool equal = false;
};

/// Integral primal and dual optima of a bounded system with integral A and
/// b over a fixed P, reusing lattice points and vertices across objectives.
class DualityChecker {
 public:
  explicit DualityChecker(const HRep& h, const Limits& limits = {}) : h_(h), limits_(limits) {
    h.validate();
    detail::require_integral_matrix(h, "verify_strong_duality");
    for (const Constraint& c : h.expanded_rows())
      if (!is_integer(c.b)) throw PreconditionError("verify_strong_duality: the right-hand side must be integral");
    if (!feasible(h, limits).feasible()) throw PreconditionError("verify_strong_duality: the polyhedron is empty");
    lp_.emplace(h, limits);
    if (!lp_->bounded()) throw PreconditionError("verify_strong_duality: the polyhedron is unbounded");
    lattice_ = lattice_points(h, limits);
  }

  DualityReport check(const RatVector& c) const {
    if (c.size() != h_.dim) throw DimensionError("verify_strong_duality: objective dimension mismatch");
    if (!is_integral(c)) throw PreconditionError("verify_strong_duality: the objective must be integral");
    DualityReport r;
    for (const RatVector& x : lattice_) {
      Rational val = dot(c, x);
      if (!r.primal_max || val > *r.primal_max) {
        r.primal_max = val;
        r.primal_argmax = x;
      }
    }
    std::optional<std::pair<Rational, RatVector>> opt = lp_->maximize(c);
    r.lp_value = opt->first;
    if (std::optional<RatVector> y = detail::integral_dual_optimum(*lp_, c, opt->second, h_.dim, limits_)) {
      r.dual_min = dot(*y, expanded_b());
      r.dual_solution = std::move(y);
    }
    r.equal = r.primal_max && r.dual_min && *r.primal_max == *r.dual_min;
    return r;
  }

 private:
  RatVector expanded_b() const {
    RatVector b;
    for (const Constraint& c : lp_->rows()) b.push_back(c.b);
    return b;
  }

  HRep h_;
  Limits limits_;
  std::optional<detail::LpOracle> lp_;
  std::vector<RatVector> lattice_;
};

inline DualityReport verify_strong_duality(const HRep& h, const RatVector& c, const Limits& limits = {}) {
  return DualityChecker(h, limits).check(c);
}

}  // namespace polyq
