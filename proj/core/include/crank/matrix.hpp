#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "crank/fields.hpp"
#include "crank/rng.hpp"

namespace crank {

/// Dense matrix over an exact field. Values are immutable in spirit: all
/// operations return fresh matrices, so instances can be shared freely
/// between workers.
template <class F>
class DenseMatrix {
 public:
  using Element = typename F::Element;

  DenseMatrix(int rows, int cols, F field)
      : rows_(rows), cols_(cols), field_(field), a_(static_cast<std::size_t>(rows) * cols, field.zero()) {
    if (rows < 0 || cols < 0) throw Error("negative matrix dimension");
  }

  static DenseMatrix identity(int n, F field) {
    DenseMatrix m(n, n, field);
    for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  Element& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Element& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<Element>& data() const { return a_; }
  std::vector<Element>& data() { return a_; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_, field_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field_.eq(a_[i], o.a_[i])) return false;
    return true;
  }

  DenseMatrix scaled(const Element& c) const {
    DenseMatrix r = *this;
    for (auto& v : r.a_) v = field_.mul(v, c);
    return r;
  }

  DenseMatrix plus(const DenseMatrix& o) const {
    require_same_shape(o);
    DenseMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(r.a_[i], o.a_[i]);
    return r;
  }

  void add_scaled_in_place(const DenseMatrix& o, const Element& c) {
    require_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] = field_.add(a_[i], field_.mul(o.a_[i], c));
  }

  std::vector<Element> apply(const std::vector<Element>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw Error("matrix-vector shape mismatch");
    std::vector<Element> out(rows_, field_.zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[i] = field_.add(out[i], field_.mul(at(i, j), v[j]));
    return out;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!field_.eq(at(i, j), at(j, i))) return false;
    return true;
  }

  bool is_skew() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i) {
      if (!field_.is_zero(at(i, i))) return false;
      for (int j = i + 1; j < cols_; ++j)
        if (!field_.eq(at(i, j), field_.neg(at(j, i)))) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!field_.is_zero(v)) return false;
    return true;
  }

 private:
  void require_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }

  int rows_, cols_;
  F field_;
  std::vector<Element> a_;
};

/// Row-reduce in place over the field (full RREF). Returns pivot columns.
template <class F>
std::vector<int> rref_in_place(DenseMatrix<F>& m) {
  const F& k = m.field();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!k.is_zero(m.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    auto inv = k.inv(m.at(row, col));
    for (int j = col; j < m.cols(); ++j) m.at(row, j) = k.mul(m.at(row, j), inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || k.is_zero(m.at(i, col))) continue;
      auto c = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) = k.sub(m.at(i, j), k.mul(c, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

namespace detail {

// Fraction-free (Bareiss) echelon over the integers after clearing row
// denominators; pivots divide exactly because every intermediate entry is a
// minor of the scaled matrix. Returns (rank, det of the scaled matrix when
// square, parity sign included).
inline std::pair<int, mpz_class> bareiss_echelon(std::vector<std::vector<mpz_class>>& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  mpz_class prev = 1;
  int sign = 1;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) {
      std::swap(a[piv], a[row]);
      sign = -sign;
    }
    for (int i = row + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        mpz_class t = a[i][j] * a[row][col] - a[i][col] * a[row][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][col] = 0;
    }
    prev = a[row][col];
    ++row;
  }
  return {row, sign * prev};
}

inline std::vector<std::vector<mpz_class>> clear_denominators(const DenseMatrix<RationalField>& m,
                                                              mpq_class* scale = nullptr) {
  std::vector<std::vector<mpz_class>> rows(m.rows(), std::vector<mpz_class>(m.cols()));
  mpq_class total = 1;
  for (int i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (int j = 0; j < m.cols(); ++j) {
      mpq_class v = m.at(i, j) * mpq_class(l);
      rows[i][j] = v.get_num();
    }
    total *= mpq_class(l);
  }
  if (scale) *scale = total;
  return rows;
}

}  // namespace detail

/// Exact rank. Over Q this runs fraction-free elimination on the
/// denominator-cleared integer matrix; over F_p plain elimination.
inline int rank(const DenseMatrix<RationalField>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto rows = detail::clear_denominators(m);
  return detail::bareiss_echelon(rows).first;
}

inline int rank(const DenseMatrix<PrimeField>& m) {
  DenseMatrix<PrimeField> c = m;
  const PrimeField& k = c.field();
  const std::int64_t p = k.modulus();
  int row = 0;
  for (int col = 0; col < c.cols() && row < c.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < c.rows(); ++i)
      if (c.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = col; j < c.cols(); ++j) std::swap(c.at(piv, j), c.at(row, j));
    std::int64_t inv = k.inv(c.at(row, col));
    for (int i = row + 1; i < c.rows(); ++i) {
      if (c.at(i, col) == 0) continue;
      std::int64_t f = (c.at(i, col) * inv) % p;
      c.at(i, col) = 0;
      for (int j = col + 1; j < c.cols(); ++j) {
        std::int64_t v = c.at(i, j) - (f * c.at(row, j)) % p;
        c.at(i, j) = v < 0 ? v + p : v;
      }
    }
    ++row;
  }
  return row;
}

/// Exact determinant of a square matrix. Bareiss over Q, plain elimination
/// with pivot tracking over F_p.
inline mpq_class determinant(const DenseMatrix<RationalField>& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  mpq_class scale;
  auto rows = detail::clear_denominators(m, &scale);
  auto [rk, det] = detail::bareiss_echelon(rows);
  if (rk < m.rows()) return 0;
  return mpq_class(det) / scale;
}

inline std::int64_t determinant(const DenseMatrix<PrimeField>& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  const PrimeField& k = m.field();
  if (m.rows() == 0) return 1;
  DenseMatrix<PrimeField> c = m;
  const std::int64_t p = k.modulus();
  std::int64_t det = 1;
  for (int col = 0; col < c.cols(); ++col) {
    int piv = -1;
    for (int i = col; i < c.rows(); ++i)
      if (c.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = col; j < c.cols(); ++j) std::swap(c.at(piv, j), c.at(col, j));
      det = k.neg(det);
    }
    det = (det * c.at(col, col)) % p;
    std::int64_t inv = k.inv(c.at(col, col));
    for (int i = col + 1; i < c.rows(); ++i) {
      if (c.at(i, col) == 0) continue;
      std::int64_t f = (c.at(i, col) * inv) % p;
      for (int j = col; j < c.cols(); ++j) {
        std::int64_t v = c.at(i, j) - (f * c.at(col, j)) % p;
        c.at(i, j) = v < 0 ? v + p : v;
      }
    }
  }
  return det;
}

/// Basis of the right kernel {v : Mv = 0}, size cols - rank.
template <class F>
std::vector<std::vector<typename F::Element>> kernel_basis(const DenseMatrix<F>& m) {
  const F& k = m.field();
  DenseMatrix<F> r = m;
  std::vector<int> pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Element>> basis;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<typename F::Element> v(m.cols(), k.zero());
    v[j] = k.one();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = k.neg(r.at(static_cast<int>(pi), j));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Deterministic random matrix. Over Q the entries are integers with
/// |entry| <= height; over F_p uniform residues.
inline DenseMatrix<RationalField> random_matrix(const RationalField& f, int rows, int cols, std::uint64_t seed,
                                                long height = 100) {
  Rng rng(seed);
  DenseMatrix<RationalField> m(rows, cols, f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = mpq_class(static_cast<long>(rng.between(-height, height)));
  return m;
}

inline DenseMatrix<PrimeField> random_matrix(const PrimeField& f, int rows, int cols, std::uint64_t seed,
                                             long /*height*/ = 100) {
  Rng rng(seed);
  DenseMatrix<PrimeField> m(rows, cols, f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(f.modulus())));
  return m;
}

/// Stack the flattened matrices as rows of a single (count x rows*cols) matrix.
template <class F>
DenseMatrix<F> stack_flattened(const std::vector<DenseMatrix<F>>& ms) {
  if (ms.empty()) throw Error("cannot stack an empty list");
  const F& k = ms[0].field();
  int len = ms[0].rows() * ms[0].cols();
  DenseMatrix<F> s(static_cast<int>(ms.size()), len, k);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i].rows() != ms[0].rows() || ms[i].cols() != ms[0].cols()) throw Error("stack: shape mismatch");
    for (int t = 0; t < len; ++t) s.at(static_cast<int>(i), t) = ms[i].data()[t];
  }
  return s;
}

}  // namespace crank
