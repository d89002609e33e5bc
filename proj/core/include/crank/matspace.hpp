#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "crank/combinatorics.hpp"
#include "crank/fields.hpp"
#include "crank/matrix.hpp"
#include "crank/poly.hpp"
#include "crank/rational_roots.hpp"
#include "crank/rng.hpp"

namespace crank {

enum class Symmetry { general, symmetric, skew };

inline std::string symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::general: return "general";
    case Symmetry::symmetric: return "symmetric";
    default: return "skew";
  }
}
inline Symmetry symmetry_from_name(const std::string& s) {
  if (s == "general") return Symmetry::general;
  if (s == "symmetric") return Symmetry::symmetric;
  if (s == "skew") return Symmetry::skew;
  throw Error("unknown symmetry tag: '" + s + "'");
}

enum class CertMode { minors_exact, exhaustive, pencil_gcd, monte_carlo };
enum class CertStatus { proven, evidence };

inline std::string cert_mode_name(CertMode m) {
  switch (m) {
    case CertMode::minors_exact: return "minors_exact";
    case CertMode::exhaustive: return "exhaustive";
    case CertMode::pencil_gcd: return "pencil_gcd";
    default: return "monte_carlo";
  }
}
inline std::string cert_status_name(CertStatus s) { return s == CertStatus::proven ? "proven" : "evidence"; }

/// Outcome of rank certification. `mode` records the route that certified the
/// minimum rank; the bounded-above route (symbolic minors), when run, is
/// recorded under details["bounded_minors_identically_zero"].
struct RankCertificate {
  int generic_rank = 0;
  int min_nonzero_rank = 0;
  int max_rank = 0;
  bool constant = false;
  CertMode mode = CertMode::monte_carlo;
  CertStatus status = CertStatus::evidence;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> details;
};

/// A linear space of matrices given by a basis, with its symmetry class.
template <class F>
struct MatrixSpace {
  using Element = typename F::Element;

  F field;
  int rows = 0;
  int cols = 0;
  Symmetry symmetry = Symmetry::general;
  std::vector<DenseMatrix<F>> basis;

  int dim() const { return static_cast<int>(basis.size()); }

  DenseMatrix<F> combine(const std::vector<Element>& coeffs) const {
    DenseMatrix<F> out(rows, cols, field);
    combine_into(coeffs, out);
    return out;
  }

  void combine_into(const std::vector<Element>& coeffs, DenseMatrix<F>& out) const {
    if (static_cast<int>(coeffs.size()) != dim()) throw Error("coefficient count does not match space dimension");
    for (auto& v : out.data()) v = field.zero();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (field.is_zero(coeffs[i])) continue;
      out.add_scaled_in_place(basis[i], coeffs[i]);
    }
  }
};

/// Validate a basis and build the space: consistent shapes, linear
/// independence (exact rank of the k x (rows*cols) stacking), and the
/// symmetry tag detected from the basis.
template <class F>
MatrixSpace<F> from_basis(const F& field, int rows, int cols, std::vector<DenseMatrix<F>> matrices) {
  if (matrices.empty()) throw Error("a matrix space needs at least one basis matrix");
  for (const auto& m : matrices) {
    if (m.rows() != rows || m.cols() != cols) throw Error("basis matrix shape mismatch");
    if (!(m.field() == field)) throw Error("basis matrix field mismatch");
  }
  auto stacked = stack_flattened(matrices);
  if (rank(stacked) != static_cast<int>(matrices.size())) throw Error("basis matrices are linearly dependent");
  bool all_sym = true, all_skew = true;
  for (const auto& m : matrices) {
    all_sym = all_sym && m.is_symmetric();
    all_skew = all_skew && m.is_skew();
  }
  Symmetry sym = all_sym ? Symmetry::symmetric : (all_skew ? Symmetry::skew : Symmetry::general);
  return MatrixSpace<F>{field, rows, cols, sym, std::move(matrices)};
}

/// The matrix of linear forms sum_i x_i * basis_i.
template <class F>
PolyMatrix<F> to_polymatrix(const MatrixSpace<F>& a) {
  const int k = a.dim();
  PolyMatrix<F> p(a.rows, a.cols, k, a.field);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      MultiPoly<F> acc(k, a.field);
      for (int v = 0; v < k; ++v) {
        const auto& c = a.basis[v].at(i, j);
        if (!a.field.is_zero(c)) acc.push_term_unchecked([&] {
            std::vector<std::uint32_t> e(k, 0);
            e[v] = 1;
            return e;
          }(), c);
      }
      acc.normalize();
      p.at(i, j) = std::move(acc);
    }
  return p;
}

// --- generic rank (randomized, with an explicit failure bound) --------------

struct GenericRankResult {
  int rank = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string failure_bound;  // exact rational, probability all draws undershot
};

namespace detail {

inline void random_coeffs(const RationalField&, Rng& rng, long height, std::vector<mpq_class>& out) {
  bool nonzero = false;
  do {
    for (auto& c : out) {
      c = mpq_class(static_cast<long>(rng.between(-height, height)));
      nonzero = nonzero || sgn(c) != 0;
    }
  } while (!nonzero);
}

inline void random_coeffs(const PrimeField& f, Rng& rng, long /*height*/, std::vector<std::int64_t>& out) {
  bool nonzero = false;
  do {
    for (auto& c : out) {
      c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(f.modulus())));
      nonzero = nonzero || c != 0;
    }
  } while (!nonzero);
}

inline mpq_class sample_space_size(const RationalField&, long height, std::uint64_t /*p*/) {
  return mpq_class(2 * height + 1);
}

}  // namespace detail

/// Maximum rank over `samples` random evaluations. Over Q the draws are
/// integer points of the stated height, and a nonzero minor polynomial of
/// degree <= min(rows, cols) vanishes at a fraction <= deg/(2*height+1) of
/// them, so the chance that every draw missed the generic rank is bounded by
/// (deg/(2*height+1))^samples; the bound is recorded, never hidden.
template <class F>
GenericRankResult generic_rank(const MatrixSpace<F>& a, std::uint64_t seed, int samples = 8, long height = 100) {
  if (samples < 1) throw Error("generic_rank needs at least one sample");
  Rng rng(derive_seed(seed, "generic_rank"));
  std::vector<typename F::Element> coeffs(a.dim(), a.field.zero());
  DenseMatrix<F> scratch(a.rows, a.cols, a.field);
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    detail::random_coeffs(a.field, rng, height, coeffs);
    a.combine_into(coeffs, scratch);
    best = std::max(best, rank(scratch));
  }
  mpq_class domain;
  if constexpr (std::is_same_v<F, PrimeField>)
    domain = mpq_class(static_cast<unsigned long>(a.field.modulus()));
  else
    domain = detail::sample_space_size(a.field, height, 0);
  mpq_class per = mpq_class(std::min(a.rows, a.cols)) / domain;
  if (per > 1) per = 1;
  mpq_class bound = 1;
  for (int s = 0; s < samples; ++s) bound *= per;
  GenericRankResult r;
  r.rank = best;
  r.samples = static_cast<std::uint64_t>(samples);
  r.seed = seed;
  r.failure_bound = bound.get_str();
  return r;
}

/// True iff every (r+1) x (r+1) minor of the matrix of linear forms vanishes
/// identically; vacuously true when r+1 exceeds the shape.
template <class F>
bool bounded_rank_check(const MatrixSpace<F>& a, int r) {
  if (r < 0) throw Error("negative rank bound");
  if (r >= std::min(a.rows, a.cols)) return true;
  auto p = to_polymatrix(a);
  auto rsubs = lex_subsets(a.rows, r + 1);
  auto csubs = lex_subsets(a.cols, r + 1);
  for (const auto& rs : rsubs)
    for (const auto& cs : csubs)
      if (!poly_minor_det(p, rs, cs).is_zero()) return false;
  return true;
}

// --- exhaustive enumeration over F_q -----------------------------------------

/// Number of projective points of F_q^k: (q^k - 1)/(q - 1).
inline mpz_class projective_point_count(std::uint64_t q, int k) {
  mpz_class qz(static_cast<unsigned long>(q)), pw;
  mpz_pow_ui(pw.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(k));
  return (pw - 1) / (qz - 1);
}

/// Canonical representative of the idx-th projective point: the first nonzero
/// coordinate is 1 at position i, positions before i are 0, and the trailing
/// coordinates run through mixed radix with the last coordinate fastest.
inline void decode_projective_point(std::uint64_t q, int k, std::uint64_t idx, std::vector<std::int64_t>& out) {
  out.assign(k, 0);
  std::uint64_t pw = 1;
  for (int i = 0; i < k - 1; ++i) pw *= q;  // q^(k-1) points with first nonzero at position 0
  for (int i = 0; i < k; ++i) {
    if (idx < pw) {
      out[i] = 1;
      std::uint64_t rest = idx;
      std::uint64_t div = pw;
      for (int j = i + 1; j < k; ++j) {
        div /= q;
        out[j] = static_cast<std::int64_t>(rest / div);
        rest %= div;
      }
      return;
    }
    idx -= pw;
    pw /= q;
  }
  throw Error("projective point index out of range");
}

struct ExhaustiveSweep {
  int min_rank = 0;
  int max_rank = 0;
  std::uint64_t min_index = 0;  // first enumeration index attaining the minimum
  std::uint64_t points = 0;
};

/// Rank at every projective point of the space, partitioned into contiguous
/// index ranges per worker; the merge is a min/max reduction with the lowest
/// witness index, so the result does not depend on the worker count.
inline ExhaustiveSweep exhaustive_rank_sweep(const MatrixSpace<PrimeField>& a, std::uint64_t budget = 10'000'000,
                                             int workers = 1) {
  const std::uint64_t q = static_cast<std::uint64_t>(a.field.modulus());
  mpz_class total_z = projective_point_count(q, a.dim());
  if (total_z > mpz_class(static_cast<unsigned long>(budget)))
    throw Error("exhaustive enumeration budget exceeded: " + total_z.get_str() + " projective points");
  const std::uint64_t total = static_cast<std::uint64_t>(total_z.get_ui());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(total, 64))));

  std::vector<ExhaustiveSweep> parts(workers);
  auto run = [&](int w) {
    std::uint64_t lo = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
    std::uint64_t hi = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
    ExhaustiveSweep s;
    s.min_rank = std::min(a.rows, a.cols) + 1;
    s.max_rank = -1;
    s.points = hi - lo;
    std::vector<std::int64_t> coeffs(a.dim());
    DenseMatrix<PrimeField> scratch(a.rows, a.cols, a.field);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      decode_projective_point(q, a.dim(), idx, coeffs);
      a.combine_into(coeffs, scratch);
      int r = rank(scratch);
      if (r > s.max_rank) s.max_rank = r;
      if (r < s.min_rank) {
        s.min_rank = r;
        s.min_index = idx;
      }
    }
    parts[w] = s;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  ExhaustiveSweep out;
  out.min_rank = std::min(a.rows, a.cols) + 1;
  out.max_rank = -1;
  out.points = 0;
  for (const auto& s : parts) {
    if (s.points == 0) continue;
    out.points += s.points;
    out.max_rank = std::max(out.max_rank, s.max_rank);
    if (s.min_rank < out.min_rank || (s.min_rank == out.min_rank && s.min_index < out.min_index)) {
      out.min_rank = s.min_rank;
      out.min_index = s.min_index;
    }
  }
  return out;
}

/// Minimum rank over every nonzero projective point (proven, F_q only).
inline int min_rank_exhaustive(const MatrixSpace<PrimeField>& a, std::uint64_t budget = 10'000'000,
                               int workers = 1) {
  return exhaustive_rank_sweep(a, budget, workers).min_rank;
}

// --- pencil certification -----------------------------------------------------

namespace detail {

/// Univariate chart matrix base + t * dir.
template <class F>
PolyMatrix<F> pencil_chart(const MatrixSpace<F>& a, int base, int dir) {
  PolyMatrix<F> p(a.rows, a.cols, 1, a.field);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      MultiPoly<F> e(1, a.field);
      if (!a.field.is_zero(a.basis[base].at(i, j)))
        e = e.plus(MultiPoly<F>::constant(1, a.field, a.basis[base].at(i, j)));
      if (!a.field.is_zero(a.basis[dir].at(i, j)))
        e = e.plus(MultiPoly<F>::variable(1, a.field, 0).scaled(a.basis[dir].at(i, j)));
      p.at(i, j) = std::move(e);
    }
  return p;
}

inline std::vector<mpq_class> gcd_field_roots(const RationalField& k, const UniPoly<RationalField>& g) {
  return rational_roots(k, g);
}
inline std::vector<std::int64_t> gcd_field_roots(const PrimeField& k, const UniPoly<PrimeField>& g) {
  return prime_field_roots(k, g);
}

}  // namespace detail

template <class F>
struct PencilDrop {
  std::vector<typename F::Element> coeffs;  // pencil coefficients of the drop point
  int rank = 0;
};

/// First point of P^1 over the ground field where the pencil drops below
/// rank r, if any. Chart 1 (A + tB): the gcd of all r x r minors is computed
/// with early exit and its roots in the field are found exactly. Chart 2 only
/// contributes the point at infinity, where a drop means every r-minor of the
/// direction matrix vanishes.
template <class F>
std::optional<PencilDrop<F>> pencil_drop_point(const MatrixSpace<F>& a, int r) {
  if (a.dim() != 2) throw Error("pencil certification requires a 2-dimensional space");
  if (r < 1) throw Error("pencil certification requires r >= 1");
  const F& k = a.field;
  auto witness_at = [&](typename F::Element c0, typename F::Element c1) {
    PencilDrop<F> w;
    w.coeffs = {c0, c1};
    w.rank = rank(a.combine(w.coeffs));
    return w;
  };
  if (r > std::min(a.rows, a.cols)) return witness_at(k.one(), k.zero());

  auto chart1 = detail::pencil_chart(a, 0, 1);
  auto rsubs = lex_subsets(a.rows, r);
  auto csubs = lex_subsets(a.cols, r);

  // chart 1: running gcd over the r-minors, stopping once it is a nonzero constant
  UniPoly<F> g;
  bool gcd_is_unit = false;
  for (const auto& rs : rsubs) {
    for (const auto& cs : csubs) {
      auto mp = poly_minor_det(chart1, rs, cs);
      g = uni_gcd(k, std::move(g), uni_from_multipoly(mp));
      if (uni_deg(g) == 0) {
        gcd_is_unit = true;
        break;
      }
    }
    if (gcd_is_unit) break;
  }
  if (!gcd_is_unit) {
    if (g.empty()) return witness_at(k.one(), k.zero());  // every r-minor vanishes identically
    auto roots = detail::gcd_field_roots(k, g);
    if (!roots.empty()) return witness_at(k.one(), roots.front());
  }

  // chart 2: drop at (0:1) iff every r-minor of the direction matrix is zero
  auto chart2 = detail::pencil_chart(a, 1, 0);
  for (const auto& rs : rsubs)
    for (const auto& cs : csubs) {
      auto mp = poly_minor_det(chart2, rs, cs);
      if (!k.is_zero(mp.evaluate({k.zero()}))) return std::nullopt;
    }
  return witness_at(k.zero(), k.one());
}

/// True iff the pencil never drops below rank r at a point of P^1 over the
/// ground field.
template <class F>
bool min_rank_pencil(const MatrixSpace<F>& a, int r) {
  return !pencil_drop_point(a, r).has_value();
}

// --- mod-p reduction (evidence route for Q) ----------------------------------

/// Reduce a rational space mod p. Fails (nullopt, with reason) when a
/// denominator vanishes mod p or the basis becomes dependent.
inline std::optional<MatrixSpace<PrimeField>> reduce_mod_p(const MatrixSpace<RationalField>& a, std::uint64_t p,
                                                           std::string* reason = nullptr) {
  PrimeField f(p);
  std::vector<DenseMatrix<PrimeField>> basis;
  basis.reserve(a.basis.size());
  for (const auto& m : a.basis) {
    DenseMatrix<PrimeField> mm(a.rows, a.cols, f);
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.cols; ++j) {
        const mpq_class& v = m.at(i, j);
        mpz_class den_mod = v.get_den() % static_cast<unsigned long>(p);
        if (den_mod == 0) {
          if (reason) *reason = "denominator divisible by " + std::to_string(p);
          return std::nullopt;
        }
        mpz_class num_mod = v.get_num() % static_cast<unsigned long>(p);
        std::int64_t num = f.from_int(num_mod.get_si());
        std::int64_t den = f.from_int(den_mod.get_si());
        mm.at(i, j) = f.div(num, den);
      }
    basis.push_back(std::move(mm));
  }
  auto stacked = stack_flattened(basis);
  if (rank(stacked) != static_cast<int>(basis.size())) {
    if (reason) *reason = "basis becomes dependent mod " + std::to_string(p);
    return std::nullopt;
  }
  return MatrixSpace<PrimeField>{f, a.rows, a.cols, a.symmetry, std::move(basis)};
}

// --- the combined certificate -------------------------------------------------

struct CheckOptions {
  std::uint64_t budget = 10'000'000;
  int samples = 8;
  long height = 100;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<std::uint64_t> primes = {3, 5, 7, 11};
  std::size_t minors_cost_limit = 20000;  // largest minor count for the symbolic check
};

namespace detail {

template <class F>
std::optional<bool> bounded_check_with_limit(const MatrixSpace<F>& a, int r, std::size_t limit,
                                             std::string* note) {
  if (r >= std::min(a.rows, a.cols)) {
    if (note) *note = "vacuous (r+1 exceeds the shape)";
    return true;
  }
  mpz_class count = binomial(a.rows, r + 1) * binomial(a.cols, r + 1);
  if (count > mpz_class(static_cast<unsigned long>(limit))) {
    if (note) *note = "skipped (" + count.get_str() + " minors exceeds the cost limit)";
    return std::nullopt;
  }
  if (note) *note = count.get_str() + " minors";
  return bounded_rank_check(a, r);
}

inline std::string coeffs_to_text(const RationalField& f, const std::vector<mpq_class>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + scalar_to_string(f, c[i]);
  return s + ")";
}
inline std::string coeffs_to_text(const PrimeField&, const std::vector<std::int64_t>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

}  // namespace detail

/// Certify constancy of rank r over F_q: full projective exhaustion decides
/// both the minimum and maximum (that is the definition of constant rank over
/// the finite field itself); the symbolic minors check is recorded when it is
/// affordable.
inline RankCertificate constant_rank_check(const MatrixSpace<PrimeField>& a, int r, CheckOptions opts = {}) {
  RankCertificate cert;
  cert.seed = opts.seed;
  std::string note;
  auto bounded = detail::bounded_check_with_limit(a, r, opts.minors_cost_limit, &note);
  cert.details["bounded_minors"] = note;
  if (bounded.has_value()) cert.details["bounded_minors_identically_zero"] = *bounded ? "true" : "false";

  auto sweep = exhaustive_rank_sweep(a, opts.budget, opts.workers);
  cert.generic_rank = sweep.max_rank;
  cert.max_rank = sweep.max_rank;
  cert.min_nonzero_rank = sweep.min_rank;
  cert.samples = sweep.points;
  cert.mode = CertMode::exhaustive;
  cert.status = CertStatus::proven;
  cert.constant = (sweep.min_rank == r && sweep.max_rank == r);
  cert.details["field"] = "F_" + std::to_string(a.field.modulus());
  cert.details["projective_points"] = std::to_string(sweep.points);
  if (!cert.constant) {
    std::vector<std::int64_t> witness(a.dim());
    decode_projective_point(static_cast<std::uint64_t>(a.field.modulus()), a.dim(), sweep.min_index, witness);
    cert.details["witness"] = "rank " + std::to_string(sweep.min_rank) + " at coefficients " +
                              detail::coeffs_to_text(a.field, witness);
  }
  if (bounded.has_value() && !*bounded && cert.constant)
    cert.details["note"] =
        "constant over every F_q point although some (r+1)-minor is not identically zero; "
        "the statement is about F_q itself";
  return cert;
}

/// Certify constancy of rank r over Q. k = 1 is a single projective point;
/// k = 2 uses the exact pencil route; k >= 3 has no complete decision
/// procedure here, so the certificate combines Monte-Carlo sampling with
/// exhaustive verification of the mod-p reductions and says so (evidence).
inline RankCertificate constant_rank_check(const MatrixSpace<RationalField>& a, int r, CheckOptions opts = {}) {
  RankCertificate cert;
  cert.seed = opts.seed;
  cert.details["field"] = "Q";
  const int k = a.dim();

  std::string note;
  auto bounded = detail::bounded_check_with_limit(a, r, opts.minors_cost_limit, &note);
  cert.details["bounded_minors"] = note;
  if (bounded.has_value()) cert.details["bounded_minors_identically_zero"] = *bounded ? "true" : "false";

  auto gr = generic_rank(a, opts.seed, opts.samples, opts.height);
  cert.generic_rank = gr.rank;
  cert.max_rank = gr.rank;
  cert.samples = gr.samples;
  cert.details["schwartz_zippel_failure_bound"] = gr.failure_bound;

  if (k == 1) {
    int r0 = rank(a.basis[0]);
    cert.generic_rank = cert.max_rank = cert.min_nonzero_rank = r0;
    cert.samples = 1;
    cert.mode = CertMode::exhaustive;
    cert.status = CertStatus::proven;
    cert.constant = (r0 == r);
    cert.details["note"] = "one projective point; the basis matrix decides";
    return cert;
  }

  if (bounded.has_value() && !*bounded) {
    // over an infinite field a nonvanishing minor certifies a rational point
    // of rank exceeding r
    cert.constant = false;
    cert.mode = CertMode::minors_exact;
    cert.status = CertStatus::proven;
    cert.min_nonzero_rank = gr.rank;
    cert.details["refutation"] = "some (r+1)-minor is not identically zero, so rank exceeds " +
                                 std::to_string(r) + " at some rational point";
    return cert;
  }

  if (k == 2 && bounded.has_value() && *bounded) {
    auto drop = pencil_drop_point(a, r);
    cert.mode = CertMode::pencil_gcd;
    cert.status = CertStatus::proven;
    cert.constant = !drop.has_value();
    if (!drop) {
      cert.min_nonzero_rank = r;
      cert.max_rank = r;
      cert.generic_rank = r;
    } else {
      cert.min_nonzero_rank = drop->rank;
      cert.details["refutation"] = "rank " + std::to_string(drop->rank) + " at pencil coefficients " +
                                   detail::coeffs_to_text(a.field, drop->coeffs);
    }
    return cert;
  }

  // Monte-Carlo plus multi-prime exhaustion (evidence tier)
  cert.mode = CertMode::monte_carlo;
  cert.status = CertStatus::evidence;
  Rng rng(derive_seed(opts.seed, "monte_carlo"));
  std::vector<mpq_class> coeffs(static_cast<std::size_t>(k));
  DenseMatrix<RationalField> scratch(a.rows, a.cols, a.field);
  int min_seen = std::min(a.rows, a.cols);
  bool witness_below = false;
  for (int s = 0; s < opts.samples; ++s) {
    detail::random_coeffs(a.field, rng, opts.height, coeffs);
    a.combine_into(coeffs, scratch);
    int rr = rank(scratch);
    min_seen = std::min(min_seen, rr);
    if (rr < r && !witness_below) {
      witness_below = true;
      cert.details["refutation_witness"] =
          "rank " + std::to_string(rr) + " at rational coefficients " + detail::coeffs_to_text(a.field, coeffs);
    }
  }
  cert.min_nonzero_rank = std::min(min_seen, cert.generic_rank);
  if (witness_below) {
    cert.constant = false;
    cert.details["note"] = "the witness refutes constancy exactly even though the route is sampling";
    return cert;
  }

  bool prime_drop = false;
  std::string prime_report;
  for (std::uint64_t p : opts.primes) {
    std::string reason;
    auto red = reduce_mod_p(a, p, &reason);
    if (!red) {
      prime_report += "p=" + std::to_string(p) + ": skipped (" + reason + "); ";
      continue;
    }
    try {
      auto sweep = exhaustive_rank_sweep(*red, opts.budget, opts.workers);
      prime_report += "p=" + std::to_string(p) + ": min " + std::to_string(sweep.min_rank) + ", max " +
                      std::to_string(sweep.max_rank) + " over " + std::to_string(sweep.points) + " points; ";
      if (sweep.min_rank < r) prime_drop = true;
    } catch (const Error& e) {
      prime_report += "p=" + std::to_string(p) + ": skipped (budget); ";
    }
  }
  cert.details["mod_p_exhaustion"] = prime_report.empty() ? "none" : prime_report;
  cert.details["note"] =
      "a rational rank drop would reduce to a drop mod every prime avoiding the denominators; "
      "multi-prime exhaustion is evidence, not proof";
  if (prime_drop) {
    cert.constant = false;
    cert.details["mod_p_drop"] = "a reduction drops below r; possibly spurious, but constancy is not asserted";
    return cert;
  }
  cert.constant = (bounded.has_value() && *bounded && min_seen == r && cert.generic_rank == r);
  if (!bounded.has_value())
    cert.details["note_bounded"] = "symbolic minors skipped by cost limit; constancy not asserted";
  return cert;
}

}  // namespace crank
