#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyq/errors.hpp"
#include "polyq/limits.hpp"
#include "polyq/rational.hpp"

namespace polyq {

using RatVector = std::vector<Rational>;
using Index = std::size_t;

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

inline RatVector zeros(Index n) { return RatVector(n, Rational(0)); }

inline RatVector unit_vector(Index n, Index i) {
  RatVector e = zeros(n);
  e[i] = 1;
  return e;
}

inline RatVector int_vector(std::initializer_list<long> values) {
  RatVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

inline Rational dot(std::span<const Rational> x, std::span<const Rational> y) {
  if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
  Rational s = 0;
  for (Index i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline bool is_integral(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

inline RatVector scaled(std::span<const Rational> v, const Rational& s) {
  RatVector out(v.begin(), v.end());
  for (Rational& x : out) x *= s;
  return out;
}

/// x + s*y
inline RatVector axpy(std::span<const Rational> x, const Rational& s, std::span<const Rational> y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  RatVector out(x.begin(), x.end());
  for (Index i = 0; i < out.size(); ++i) out[i] += s * y[i];
  return out;
}

inline RatVector operator+(const RatVector& x, const RatVector& y) { return axpy(x, 1, y); }
inline RatVector operator-(const RatVector& x, const RatVector& y) { return axpy(x, -1, y); }
inline RatVector operator-(const RatVector& x) { return scaled(x, -1); }

/// Smallest positive rational s such that s*v is an integer vector with
/// coprime entries. Returns 1 for the zero vector.
inline Rational primitive_scale(std::span<const Rational> v) {
  Integer l = 1;
  Integer g = 0;
  for (const Rational& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (const Rational& x : v) {
    Integer num = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return 1;
  return make_rational(l, g);
}

/// Positive rescaling to a primitive integer vector (direction preserved).
inline RatVector primitive(std::span<const Rational> v) { return scaled(v, primitive_scale(v)); }

/// Canonical representative of the line through v: primitive, first nonzero
/// entry positive.
inline RatVector canonical_direction(std::span<const Rational> v) {
  RatVector p = primitive(v);
  auto first = std::find_if(p.begin(), p.end(), [](const Rational& x) { return x != 0; });
  if (first != p.end() && *first < 0) {
    for (Rational& x : p) x = -x;
  }
  return p;
}

inline std::string to_string(std::span<const Rational> v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

/// Maximum entry encoding length; 0 for empty input.
inline long encoding_length_max(std::span<const Rational> v) {
  long best = 0;
  for (const Rational& x : v) best = std::max(best, encoding_length(x));
  return best;
}

/// n + sum of entry lengths.
inline long encoding_length(std::span<const Rational> v) {
  long total = static_cast<long>(v.size());
  for (const Rational& x : v) total += encoding_length(x);
  return total;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Dense row-major rational matrix.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RatMatrix from_rows(const std::vector<RatVector>& rows, Index cols) {
    RatMatrix m(rows.size(), cols);
    for (Index i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("from_rows: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static RatMatrix from_rows(const std::vector<RatVector>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
  }

  static RatMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<RatVector> rs;
    for (auto r : rows) rs.push_back(int_vector(r));
    return from_rows(rs);
  }

  static RatMatrix from_columns(const std::vector<RatVector>& cols, Index rows) {
    RatMatrix m(rows, cols.size());
    for (Index j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("from_columns: ragged columns");
      for (Index i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static RatMatrix identity(Index n) {
    RatMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const Rational& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(Index i) const { return {data_.data() + i * cols_, cols_}; }

  RatVector row_vector(Index i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  RatVector column(Index j) const {
    RatVector c(rows_);
    for (Index i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<RatVector> row_vectors() const {
    std::vector<RatVector> out;
    out.reserve(rows_);
    for (Index i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  std::span<const Rational> entries() const { return data_; }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// M_{I,J}, keeping the order of `row_ids` and `col_ids`.
  RatMatrix submatrix(std::span<const Index> row_ids, std::span<const Index> col_ids) const {
    RatMatrix s(row_ids.size(), col_ids.size());
    for (Index i = 0; i < row_ids.size(); ++i)
      for (Index j = 0; j < col_ids.size(); ++j) s(i, j) = (*this)(row_ids[i], col_ids[j]);
    return s;
  }

  void swap_rows(Index a, Index b) {
    if (a == b) return;
    for (Index j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Rational> data_;
};

inline RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  RatMatrix c(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Index j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline RatVector operator*(const RatMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: length mismatch");
  RatVector y(a.rows());
  for (Index i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

inline RatVector operator*(const RatMatrix& a, const RatVector& x) { return a * std::span<const Rational>(x); }

/// y^T A
inline RatVector left_multiply(std::span<const Rational> y, const RatMatrix& a) {
  if (a.rows() != y.size()) throw DimensionError("vector-matrix product: length mismatch");
  RatVector out = zeros(a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    if (y[i] == 0) continue;
    for (Index j = 0; j < a.cols(); ++j) out[j] += y[i] * a(i, j);
  }
  return out;
}

inline long encoding_length(const RatMatrix& m) {
  long total = static_cast<long>(m.rows() * m.cols());
  for (const Rational& x : m.entries()) total += encoding_length(x);
  return total;
}

inline long encoding_length_max(const RatMatrix& m) { return encoding_length_max(m.entries()); }

/// Maximum entry encoding length over a finite set of vectors.
inline long encoding_length_max(const std::vector<RatVector>& vs) {
  long best = 0;
  for (const RatVector& v : vs) best = std::max(best, encoding_length_max(v));
  return best;
}

// ---------------------------------------------------------------------------
// Elimination kernel
// ---------------------------------------------------------------------------

/// Fraction-free Bareiss elimination. The empty matrix has determinant one.
inline Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const Index n = m.rows();
  if (n == 0) return 1;
  RatMatrix w = m;
  Rational previous = 1;
  int swaps = 0;
  for (Index k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      Index p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return 0;
      w.swap_rows(k, p);
      ++swaps;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / previous;
      }
      w(i, k) = 0;
    }
    previous = w(k, k);
  }
  Rational det = w(n - 1, n - 1);
  return swaps % 2 ? Rational(-det) : det;
}

/// Reduced row echelon form of `m`; `pivots` receives the pivot columns.
inline RatMatrix rref(RatMatrix m, std::vector<Index>* pivots = nullptr) {
  Index lead_row = 0;
  std::vector<Index> piv;
  for (Index col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    Index p = lead_row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(lead_row, p);
    Rational inv = 1 / m(lead_row, col);
    for (Index j = col; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == lead_row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(lead_row, j);
    }
    piv.push_back(col);
    ++lead_row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

inline Index rank(const RatMatrix& m) {
  std::vector<Index> piv;
  rref(m, &piv);
  return piv.size();
}

inline Index rank(const std::vector<RatVector>& rows, Index cols) {
  return rank(RatMatrix::from_rows(rows, cols));
}

/// Indices of a maximal linearly independent prefix-greedy subset of `rows`.
inline std::vector<Index> independent_rows(const std::vector<RatVector>& rows, Index cols) {
  std::vector<Index> chosen;
  std::vector<RatVector> basis;
  for (Index i = 0; i < rows.size(); ++i) {
    basis.push_back(rows[i]);
    if (rank(basis, cols) == basis.size()) {
      chosen.push_back(i);
    } else {
      basis.pop_back();
    }
  }
  return chosen;
}

/// Basis of ker(M), each vector primitive with first nonzero entry positive.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  std::vector<Index> piv;
  RatMatrix r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index c : piv) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v = zeros(m.cols());
    v[free] = 1;
    for (Index k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, free);
    basis.push_back(canonical_direction(v));
  }
  return basis;
}

struct AffineSolution {
  RatVector point;
  std::vector<RatVector> kernel;
};

/// All solutions of Ax = b as point + span(kernel); nullopt when inconsistent.
inline std::optional<AffineSolution> solve_affine(const RatMatrix& a, std::span<const Rational> b) {
  if (a.rows() != b.size()) throw DimensionError("solve_affine: right-hand side length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<Index> piv;
  RatMatrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  AffineSolution sol{zeros(a.cols()), kernel_basis(a)};
  for (Index k = 0; k < piv.size(); ++k) sol.point[piv[k]] = r(k, a.cols());
  return sol;
}

/// Unique solution of a regular system by Cramer's quotients
/// x_j = det(A with column j replaced by b) / det(A).
inline RatVector cramer_solve(const RatMatrix& a, std::span<const Rational> b) {
  if (!a.square()) throw DimensionError("cramer_solve: matrix is not square");
  if (a.rows() != b.size()) throw DimensionError("cramer_solve: right-hand side length mismatch");
  Rational det = determinant(a);
  if (det == 0) throw SingularMatrixError("cramer_solve: singular matrix");
  const Index n = a.rows();
  RatVector x(n);
  RatMatrix replaced = a;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) replaced(i, j) = b[i];
    x[j] = determinant(replaced) / det;
    for (Index i = 0; i < n; ++i) replaced(i, j) = a(i, j);
  }
  return x;
}

/// Regular solve by Gauss-Jordan elimination; used on hot paths where the
/// n+1 determinants of Cramer's rule are wasteful. Returns nullopt when singular.
inline std::optional<RatVector> solve_regular(const RatMatrix& a, std::span<const Rational> b) {
  if (!a.square() || a.rows() != b.size()) throw DimensionError("solve_regular: shape mismatch");
  const Index n = a.rows();
  RatMatrix aug(n, n + 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<Index> piv;
  RatMatrix r = rref(aug, &piv);
  if (piv.size() != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
  RatVector x(n);
  for (Index i = 0; i < n; ++i) x[i] = r(i, n);
  return x;
}

inline RatMatrix inverse(const RatMatrix& a) {
  if (!a.square()) throw DimensionError("inverse of a non-square matrix");
  const Index n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<Index> piv;
  RatMatrix r = rref(aug, &piv);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw SingularMatrixError("inverse: singular matrix");
  RatMatrix inv(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Subdeterminants
// ---------------------------------------------------------------------------

/// Visits every k-subset of {0..n-1} in lexicographic order; stops early
/// when `fn` returns false. Returns false iff stopped early.
template <class Fn>
bool for_each_subset(Index n, Index k, Fn&& fn) {
  if (k > n) return true;
  std::vector<Index> idx(k);
  std::iota(idx.begin(), idx.end(), Index{0});
  while (true) {
    if (!fn(std::span<const Index>(idx))) return false;
    Index i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (Index j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Integer binomial(Index n, Index k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Determinants of all square submatrices of order <= max_order, including
/// the empty one (determinant one).
inline std::set<Rational> subdeterminants(const RatMatrix& m, Index max_order, const Limits& limits = {}) {
  if (max_order > std::min(m.rows(), m.cols())) throw DimensionError("subdeterminants: order exceeds matrix size");
  Integer count = 0;
  for (Index k = 1; k <= max_order; ++k) count += binomial(m.rows(), k) * binomial(m.cols(), k);
  if (count > Integer(static_cast<unsigned long>(limits.max_subsets)))
    throw ResourceError("subdeterminants: " + count.get_str() + " submatrices exceed the cap");
  std::set<Rational> dets{Rational(1)};
  for (Index k = 1; k <= max_order; ++k) {
    for_each_subset(m.rows(), k, [&](std::span<const Index> rs) {
      for_each_subset(m.cols(), k, [&](std::span<const Index> cs) {
        dets.insert(determinant(m.submatrix(rs, cs)));
        return true;
      });
      return true;
    });
  }
  return dets;
}

/// The set {p/q : p, q in +-subdeterminants, q != 0} restricted to
/// submatrices of order <= max_order.
inline std::set<Rational> delta_set(const RatMatrix& m, Index max_order, const Limits& limits = {}) {
  std::set<Rational> signed_dets;
  for (const Rational& d : subdeterminants(m, max_order, limits)) {
    signed_dets.insert(d);
    signed_dets.insert(-d);
  }
  std::set<Rational> out;
  for (const Rational& p : signed_dets)
    for (const Rational& q : signed_dets)
      if (q != 0) out.insert(p / q);
  return out;
}

}  // namespace polyq
