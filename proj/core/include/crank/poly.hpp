#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "crank/combinatorics.hpp"
#include "crank/fields.hpp"
#include "crank/matrix.hpp"

namespace crank {

/// Sparse multivariate polynomial: unique exponent vectors, no stored zeros,
/// terms sorted lexicographically by exponent vector.
template <class F>
class MultiPoly {
 public:
  using Element = typename F::Element;
  struct Term {
    std::vector<std::uint32_t> exp;
    Element coeff;
  };

  MultiPoly(int nvars, F field) : nvars_(nvars), field_(field) {
    if (nvars < 0) throw Error("negative variable count");
  }

  static MultiPoly zero(int nvars, F field) { return MultiPoly(nvars, field); }

  static MultiPoly constant(int nvars, F field, Element c) {
    MultiPoly p(nvars, field);
    if (!field.is_zero(c)) p.terms_.push_back({std::vector<std::uint32_t>(nvars, 0), c});
    return p;
  }

  static MultiPoly variable(int nvars, F field, int i) {
    if (i < 0 || i >= nvars) throw Error("variable index out of range");
    MultiPoly p(nvars, field);
    std::vector<std::uint32_t> e(nvars, 0);
    e[i] = 1;
    p.terms_.push_back({std::move(e), field.one()});
    return p;
  }

  int nvars() const { return nvars_; }
  const F& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) {
      int s = 0;
      for (auto e : t.exp) s += static_cast<int>(e);
      d = std::max(d, s);
    }
    return d;  // -1 for the zero polynomial
  }

  bool is_homogeneous_of_degree(int d) const {
    for (const auto& t : terms_) {
      int s = 0;
      for (auto e : t.exp) s += static_cast<int>(e);
      if (s != d) return false;
    }
    return true;
  }

  MultiPoly plus(const MultiPoly& o) const {
    require_compatible(o);
    MultiPoly r(nvars_, field_);
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exp < o.terms_[j].exp)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].exp < terms_[i].exp) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Element c = field_.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!field_.is_zero(c)) r.terms_.push_back({terms_[i].exp, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  MultiPoly negated() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
    return r;
  }

  MultiPoly minus(const MultiPoly& o) const { return plus(o.negated()); }

  MultiPoly scaled(const Element& c) const {
    MultiPoly r(nvars_, field_);
    if (field_.is_zero(c)) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
    return r;
  }

  MultiPoly times(const MultiPoly& o) const {
    require_compatible(o);
    std::map<std::vector<std::uint32_t>, Element> acc;
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        std::vector<std::uint32_t> e(nvars_);
        for (int v = 0; v < nvars_; ++v) e[v] = a.exp[v] + b.exp[v];
        auto it = acc.find(e);
        if (it == acc.end())
          acc.emplace(std::move(e), field_.mul(a.coeff, b.coeff));
        else
          it->second = field_.add(it->second, field_.mul(a.coeff, b.coeff));
      }
    MultiPoly r(nvars_, field_);
    for (auto& [e, c] : acc)
      if (!field_.is_zero(c)) r.terms_.push_back({e, c});
    return r;
  }

  Element evaluate(const std::vector<Element>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw Error("evaluation point has wrong length");
    Element acc = field_.zero();
    for (const auto& t : terms_) {
      Element v = t.coeff;
      for (int i = 0; i < nvars_; ++i)
        for (std::uint32_t e = 0; e < t.exp[i]; ++e) v = field_.mul(v, point[i]);
      acc = field_.add(acc, v);
    }
    return acc;
  }

  bool eq(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].exp != o.terms_[i].exp || !field_.eq(terms_[i].coeff, o.terms_[i].coeff)) return false;
    return true;
  }
  bool operator==(const MultiPoly& o) const { return eq(o); }

  /// Coefficient of a given exponent vector.
  Element coeff(const std::vector<std::uint32_t>& e) const {
    for (const auto& t : terms_)
      if (t.exp == e) return t.coeff;
    return field_.zero();
  }

  void push_term_unchecked(std::vector<std::uint32_t> e, Element c) {
    terms_.push_back({std::move(e), std::move(c)});
  }
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp)
        out.back().coeff = field_.add(out.back().coeff, t.coeff);
      else
        out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [this](const Term& t) { return field_.is_zero(t.coeff); }),
              out.end());
    terms_ = std::move(out);
  }

 private:
  void require_compatible(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || !(field_ == o.field_)) throw Error("incompatible polynomials");
  }

  int nvars_;
  F field_;
  std::vector<Term> terms_;
};

/// Matrix of multivariate polynomials, row-major.
template <class F>
class PolyMatrix {
 public:
  using Element = typename F::Element;

  PolyMatrix(int rows, int cols, int nvars, F field)
      : rows_(rows), cols_(cols), nvars_(nvars), field_(field),
        e_(static_cast<std::size_t>(rows) * cols, MultiPoly<F>::zero(nvars, field)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }
  const F& field() const { return field_; }

  MultiPoly<F>& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const MultiPoly<F>& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  DenseMatrix<F> evaluate(const std::vector<Element>& point) const {
    DenseMatrix<F> m(rows_, cols_, field_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).evaluate(point);
    return m;
  }

 private:
  int rows_, cols_, nvars_;
  F field_;
  std::vector<MultiPoly<F>> e_;
};

/// Matrix of homogeneous linear forms in two variables (s, t); the shape a
/// matrix of linear forms takes after restriction to a line.
template <class F>
class BinaryFormMatrix {
 public:
  explicit BinaryFormMatrix(PolyMatrix<F> p) : p_(std::move(p)) {
    if (p_.nvars() != 2) throw Error("binary form matrix must have 2 variables");
    for (int i = 0; i < p_.rows(); ++i)
      for (int j = 0; j < p_.cols(); ++j)
        if (!p_.at(i, j).is_zero() && !p_.at(i, j).is_homogeneous_of_degree(1))
          throw Error("binary form matrix entries must be linear");
  }
  const PolyMatrix<F>& poly() const { return p_; }
  int rows() const { return p_.rows(); }
  int cols() const { return p_.cols(); }

 private:
  PolyMatrix<F> p_;
};

/// Determinant of a square polynomial matrix restricted to the given rows and
/// columns; Laplace expansion with a subset table over the columns.
template <class F>
MultiPoly<F> poly_minor_det(const PolyMatrix<F>& p, const std::vector<int>& rows, const std::vector<int>& cols) {
  const F& k = p.field();
  const int t = static_cast<int>(rows.size());
  if (t != static_cast<int>(cols.size())) throw Error("minor must be square");
  if (t == 0) return MultiPoly<F>::constant(p.nvars(), k, k.one());
  if (t > 20) throw Error("minor size too large");
  std::vector<MultiPoly<F>> table(static_cast<std::size_t>(1) << t, MultiPoly<F>::zero(p.nvars(), k));
  table[0] = MultiPoly<F>::constant(p.nvars(), k, k.one());
  for (int level = 0; level < t; ++level) {
    // dets of the first (level+1) rows against every column subset of that size
    for (std::uint32_t mask = (1u << t) - 1;; --mask) {
      if (std::popcount(mask) == level + 1) {
        MultiPoly<F> acc = MultiPoly<F>::zero(p.nvars(), k);
        int pos = 0;
        for (int j = 0; j < t; ++j) {
          if (!(mask & (1u << j))) continue;
          const auto& entry = p.at(rows[level], cols[j]);
          if (!entry.is_zero()) {
            auto term = entry.times(table[mask & ~(1u << j)]);
            acc = ((level + pos) % 2 == 0) ? acc.plus(term) : acc.minus(term);
          }
          ++pos;
        }
        table[mask] = std::move(acc);
      }
      if (mask == 0) break;
    }
  }
  return table[(1u << t) - 1];
}

template <class F>
MultiPoly<F> poly_det(const PolyMatrix<F>& p) {
  if (p.rows() != p.cols()) throw Error("determinant of non-square polynomial matrix");
  std::vector<int> idx(p.rows());
  for (int i = 0; i < p.rows(); ++i) idx[i] = i;
  return poly_minor_det(p, idx, idx);
}

/// All t x t minors in the fixed enumeration order: row subsets lexicographic,
/// then column subsets lexicographic.
template <class F>
std::vector<MultiPoly<F>> minors(const PolyMatrix<F>& p, int t) {
  if (t < 0 || t > std::min(p.rows(), p.cols())) throw Error("minor size out of range");
  std::vector<MultiPoly<F>> out;
  auto rsubs = lex_subsets(p.rows(), t);
  auto csubs = lex_subsets(p.cols(), t);
  out.reserve(rsubs.size() * csubs.size());
  for (const auto& r : rsubs)
    for (const auto& c : csubs) out.push_back(poly_minor_det(p, r, c));
  return out;
}

/// Substitute x_i = p_i * s + q_i * t, producing a matrix of binary forms.
template <class F>
BinaryFormMatrix<F> restrict_to_line(const PolyMatrix<F>& pm, const std::vector<typename F::Element>& p,
                                     const std::vector<typename F::Element>& q) {
  const F& k = pm.field();
  if (static_cast<int>(p.size()) != pm.nvars() || static_cast<int>(q.size()) != pm.nvars())
    throw Error("line points must have one coordinate per variable");
  {
    DenseMatrix<F> pts(2, pm.nvars(), k);
    for (int j = 0; j < pm.nvars(); ++j) {
      pts.at(0, j) = p[j];
      pts.at(1, j) = q[j];
    }
    if (rank(pts) != 2) throw Error("line points are linearly dependent");
  }
  // linear factors x_i -> p_i s + q_i t, expanded by repeated multiplication
  std::vector<MultiPoly<F>> subs;
  subs.reserve(pm.nvars());
  for (int i = 0; i < pm.nvars(); ++i) {
    MultiPoly<F> l(2, k);
    l = MultiPoly<F>::variable(2, k, 0).scaled(p[i]).plus(MultiPoly<F>::variable(2, k, 1).scaled(q[i]));
    subs.push_back(std::move(l));
  }
  PolyMatrix<F> out(pm.rows(), pm.cols(), 2, k);
  for (int i = 0; i < pm.rows(); ++i)
    for (int j = 0; j < pm.cols(); ++j) {
      MultiPoly<F> acc = MultiPoly<F>::zero(2, k);
      for (const auto& term : pm.at(i, j).terms()) {
        MultiPoly<F> prod = MultiPoly<F>::constant(2, k, term.coeff);
        for (int v = 0; v < pm.nvars(); ++v)
          for (std::uint32_t e = 0; e < term.exp[v]; ++e) prod = prod.times(subs[v]);
        acc = acc.plus(prod);
      }
      out.at(i, j) = std::move(acc);
    }
  return BinaryFormMatrix<F>(std::move(out));
}

/// Matrix of multiplication by B from degree-d form vectors of length cols(B)
/// to degree-(d+1) form vectors of length rows(B). Monomial bases are ordered
/// s^d, s^{d-1} t, ..., t^d; the column for component j and exponent e is
/// j*(d+1)+e, the row for component i and exponent f is i*(d+2)+f.
template <class F>
DenseMatrix<F> multiplication_matrix(const BinaryFormMatrix<F>& b, int d) {
  if (d < 0) throw Error("multiplication matrix degree must be nonnegative");
  const F& k = b.poly().field();
  const int n = b.rows(), m = b.cols();
  DenseMatrix<F> out(n * (d + 2), m * (d + 1), k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const auto& entry = b.poly().at(i, j);
      auto s_coeff = entry.coeff({1, 0});
      auto t_coeff = entry.coeff({0, 1});
      for (int e = 0; e <= d; ++e) {
        int col = j * (d + 1) + e;
        out.at(i * (d + 2) + e, col) = k.add(out.at(i * (d + 2) + e, col), s_coeff);
        out.at(i * (d + 2) + e + 1, col) = k.add(out.at(i * (d + 2) + e + 1, col), t_coeff);
      }
    }
  return out;
}

// --- univariate helpers -----------------------------------------------------

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
template <class F>
using UniPoly = std::vector<typename F::Element>;

template <class F>
void uni_trim(const F& k, UniPoly<F>& p) {
  while (!p.empty() && k.is_zero(p.back())) p.pop_back();
}

template <class Elt>
int uni_deg(const std::vector<Elt>& p) {
  return static_cast<int>(p.size()) - 1;  // -1 for zero
}

template <class F>
typename F::Element uni_eval(const F& k, const UniPoly<F>& p, const typename F::Element& x) {
  typename F::Element acc = k.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = k.add(k.mul(acc, x), *it);
  return acc;
}

template <class F>
UniPoly<F> uni_monic(const F& k, UniPoly<F> p) {
  uni_trim(k, p);
  if (p.empty()) return p;
  auto inv = k.inv(p.back());
  for (auto& c : p) c = k.mul(c, inv);
  return p;
}

template <class F>
UniPoly<F> uni_rem(const F& k, UniPoly<F> a, const UniPoly<F>& b) {
  uni_trim(k, a);
  if (b.empty()) throw Error("polynomial division by zero");
  auto lead_inv = k.inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    auto f = k.mul(a.back(), lead_inv);
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = k.sub(a[off + i], k.mul(f, b[i]));
    uni_trim(k, a);
    if (!a.empty() && a.size() >= b.size() && k.is_zero(a.back())) uni_trim(k, a);
  }
  return a;
}

template <class F>
UniPoly<F> uni_gcd(const F& k, UniPoly<F> a, UniPoly<F> b) {
  uni_trim(k, a);
  uni_trim(k, b);
  while (!b.empty()) {
    auto r = uni_rem(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return uni_monic(k, std::move(a));
}

/// The single variable index a polynomial actually uses, or -1 if constant.
template <class F>
int uni_variable_index(const MultiPoly<F>& p) {
  int var = -1;
  for (const auto& t : p.terms())
    for (int v = 0; v < p.nvars(); ++v)
      if (t.exp[v] > 0) {
        if (var >= 0 && var != v) throw Error("polynomial is multivariate");
        var = v;
      }
  return var;
}

template <class F>
UniPoly<F> uni_from_multipoly(const MultiPoly<F>& p, int* var_out = nullptr) {
  const F& k = p.field();
  int var = uni_variable_index(p);
  if (var_out) *var_out = var;
  UniPoly<F> out;
  for (const auto& t : p.terms()) {
    std::uint32_t e = var >= 0 ? t.exp[var] : 0;
    if (out.size() <= e) out.resize(e + 1, k.zero());
    out[e] = k.add(out[e], t.coeff);
  }
  uni_trim(k, out);
  return out;
}

template <class F>
MultiPoly<F> multipoly_from_uni(const F& k, const UniPoly<F>& p, int nvars, int var) {
  MultiPoly<F> out(nvars, k);
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (k.is_zero(p[e])) continue;
    std::vector<std::uint32_t> exp(nvars, 0);
    if (e > 0) {
      if (var < 0 || var >= nvars) throw Error("variable index out of range");
      exp[var] = static_cast<std::uint32_t>(e);
    }
    out.push_term_unchecked(std::move(exp), p[e]);
  }
  out.normalize();
  return out;
}

/// Monic gcd of univariate polynomials; the gcd of an empty or all-zero
/// collection is 0. Rejects genuinely multivariate input.
template <class F>
MultiPoly<F> gcd_univariate(const F& k, int nvars, const std::vector<MultiPoly<F>>& polys) {
  int var = -1;
  UniPoly<F> g;
  for (const auto& p : polys) {
    int v = uni_variable_index(p);
    if (v >= 0) {
      if (var >= 0 && var != v) throw Error("polynomials use different variables");
      var = v;
    }
    g = uni_gcd(k, std::move(g), uni_from_multipoly(p));
    if (uni_deg(g) == 0) break;  // gcd is already 1
  }
  return multipoly_from_uni(k, g, nvars, var < 0 ? 0 : var);
}

template <class F>
MultiPoly<F> gcd_univariate(const std::vector<MultiPoly<F>>& polys) {
  if (polys.empty()) throw Error("gcd of an empty list needs an explicit field and variable count");
  return gcd_univariate(polys[0].field(), polys[0].nvars(), polys);
}

}  // namespace crank
