#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "crank/fields.hpp"
#include "crank/matrix.hpp"
#include "crank/rng.hpp"

using namespace crank;

namespace {

DenseMatrix<RationalField> qmat(int rows, int cols, const std::vector<long>& vals) {
  RationalField f;
  DenseMatrix<RationalField> m(rows, cols, f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = mpq_class(vals[static_cast<std::size_t>(i) * cols + j]);
  return m;
}

DenseMatrix<PrimeField> pmat(const PrimeField& f, int rows, int cols, const std::vector<long>& vals) {
  DenseMatrix<PrimeField> m(rows, cols, f);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = f.from_int(vals[static_cast<std::size_t>(i) * cols + j]);
  return m;
}

std::vector<std::vector<int>> lexsubs(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k > n || k < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Independent rank oracle: largest t with a nonvanishing t x t minor,
// determinants by permutation expansion.
template <class F>
typename F::Element minor_det_expansion(const DenseMatrix<F>& m, const std::vector<int>& rows,
                                        const std::vector<int>& cols) {
  const F& k = m.field();
  int n = static_cast<int>(rows.size());
  if (n == 0) return k.one();
  typename F::Element acc = k.zero();
  std::vector<int> perm(cols.begin(), cols.end());
  std::sort(perm.begin(), perm.end());
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    typename F::Element term = k.one();
    for (int i = 0; i < n; ++i) term = k.mul(term, m.at(rows[i], perm[i]));
    acc = (inv % 2 == 0) ? k.add(acc, term) : k.sub(acc, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

template <class F>
int rank_oracle(const DenseMatrix<F>& m) {
  const F& k = m.field();
  int bound = std::min(m.rows(), m.cols());
  for (int t = bound; t >= 1; --t) {
    auto rsubs = lexsubs(m.rows(), t);
    auto csubs = lexsubs(m.cols(), t);
    for (auto& r : rsubs)
      for (auto& c : csubs)
        if (!k.is_zero(minor_det_expansion(m, r, c))) return t;
  }
  return 0;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.mul(3, 4) == 2);
  CHECK(f.inv(2) == 3);
  CHECK(f.inv(4) == 4);
  CHECK(f.neg(0) == 0);
  CHECK(f.from_int(-1) == 4);
  CHECK_THROWS_AS(f.inv(0), Error);
  CHECK_THROWS_AS(PrimeField(2), Error);
  CHECK_THROWS_AS(PrimeField(9), Error);
  CHECK(is_odd_prime(7));
  CHECK(!is_odd_prime(1));
}

TEST_CASE("rational scalars normalize and round-trip as strings") {
  RationalField f;
  mpq_class v(6, -8);
  v.canonicalize();
  CHECK(scalar_to_string(f, v) == "-3/4");
  CHECK(parse_scalar(f, "42") == mpq_class(42));
  CHECK(parse_scalar(f, "-3/4") == v);
  CHECK(parse_scalar(f, "6/8") == mpq_class(3, 4));
  CHECK_THROWS_AS(parse_scalar(f, "x"), Error);
  PrimeField p5(5);
  CHECK(parse_scalar(p5, "2 mod 5") == 2);
  CHECK(parse_scalar(p5, "7") == 2);
  CHECK(scalar_to_string(p5, 2) == "2 mod 5");
  CHECK_THROWS_AS(parse_scalar(p5, "2 mod 7"), Error);
}

TEST_CASE("rank: identity, zero, and a rank-2 skew matrix") {
  RationalField q;
  CHECK(rank(DenseMatrix<RationalField>::identity(3, q)) == 3);
  PrimeField f5(5);
  CHECK(rank(DenseMatrix<PrimeField>(2, 3, f5)) == 0);
  // skew with (1,2)-entry 1: a single nonzero 2x2 minor, vanishing 3x3 det
  auto skew = qmat(3, 3, {0, 1, 0, -1, 0, 0, 0, 0, 0});
  CHECK(rank(skew) == 2);
}

TEST_CASE("determinant examples") {
  RationalField q;
  CHECK(determinant(DenseMatrix<RationalField>::identity(4, q)) == 1);
  CHECK(determinant(qmat(2, 2, {4, 6, 1, 4})) == 10);
  CHECK(determinant(qmat(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 5})) == 30);
  CHECK(determinant(qmat(3, 3, {1, 2, 3, 1, 2, 3, 0, 1, 1})) == 0);
  CHECK_THROWS_AS(determinant(qmat(2, 3, {1, 2, 3, 4, 5, 6})), Error);
  PrimeField f7(7);
  CHECK(determinant(pmat(f7, 2, 2, {4, 6, 1, 4})) == 3);  // 10 mod 7
}

TEST_CASE("determinant with rational entries") {
  RationalField q;
  DenseMatrix<RationalField> m(2, 2, q);
  m.at(0, 0) = mpq_class(1, 2);
  m.at(0, 1) = mpq_class(1, 3);
  m.at(1, 0) = mpq_class(1, 4);
  m.at(1, 1) = mpq_class(1, 5);
  CHECK(determinant(m) == mpq_class(1, 2) * mpq_class(1, 5) - mpq_class(1, 3) * mpq_class(1, 4));
}

TEST_CASE("kernel basis") {
  RationalField q;
  auto m = qmat(2, 3, {1, 0, 0, 0, 1, 0});
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == std::vector<mpq_class>{0, 0, 1});
  CHECK(kernel_basis(DenseMatrix<RationalField>::identity(4, q)).empty());

  // kernel of a rank-2 3x3 skew matrix: 1-dimensional, exactly annihilated
  auto skew = qmat(3, 3, {0, 2, -1, -2, 0, 3, 1, -3, 0});
  auto kb = kernel_basis(skew);
  REQUIRE(kb.size() == 1);
  for (auto& v : skew.apply(kb[0])) CHECK(sgn(v) == 0);
}

TEST_CASE("random_matrix is deterministic and height-bounded") {
  PrimeField f3(3);
  auto a = random_matrix(f3, 2, 2, 7);
  auto b = random_matrix(f3, 2, 2, 7);
  CHECK(a == b);
  RationalField q;
  auto r = random_matrix(q, 1, 1, 123);
  CHECK(abs(r.at(0, 0).get_num()) <= 100);
  CHECK(r.at(0, 0).get_den() == 1);
  bool differs = false;
  for (std::uint64_t s = 0; s < 8 && !differs; ++s)
    differs = !(random_matrix(q, 3, 3, s) == random_matrix(q, 3, 3, s + 100));
  CHECK(differs);
}

TEST_CASE("rank equals transpose rank and matches the minor oracle") {
  RationalField q;
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto m = random_matrix(q, 3 + static_cast<int>(s % 2), 4, derive_seed(1, "ranktest", s), 5);
    int r = rank(m);
    CHECK(r == rank(m.transpose()));
    CHECK(r == rank_oracle(m));
  }
  PrimeField f3(3);
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto m = random_matrix(f3, 4, 3, derive_seed(2, "ranktest", s));
    int r = rank(m);
    CHECK(r == rank(m.transpose()));
    CHECK(r == rank_oracle(m));
  }
}

TEST_CASE("rank over Q vs rank of the mod-p reduction on integer matrices") {
  RationalField q;
  PrimeField f11(11);
  int agreements = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto m = random_matrix(q, 3, 3, derive_seed(3, "modp", s), 4);
    DenseMatrix<PrimeField> mp(3, 3, f11);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mp.at(i, j) = f11.from_int(m.at(i, j).get_num().get_si());
    CHECK(rank(mp) <= rank(m));  // reduction can only lower the rank
    if (rank(mp) == rank(m)) ++agreements;
  }
  CHECK(agreements >= 15);
}

TEST_CASE("kernel vectors are independent and exactly annihilated") {
  PrimeField f5(5);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto m = random_matrix(f5, 3, 5, derive_seed(4, "kernel", s));
    auto ker = kernel_basis(m);
    CHECK(static_cast<int>(ker.size()) == 5 - rank(m));
    for (auto& v : ker)
      for (auto x : m.apply(v)) CHECK(x == 0);
    if (!ker.empty()) {
      DenseMatrix<PrimeField> kmat(static_cast<int>(ker.size()), 5, f5);
      for (std::size_t i = 0; i < ker.size(); ++i)
        for (int j = 0; j < 5; ++j) kmat.at(static_cast<int>(i), j) = ker[i][j];
      CHECK(rank(kmat) == static_cast<int>(ker.size()));
    }
  }
}

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, "a", 0) != derive_seed(1, "b", 0));
  CHECK(derive_seed(1, "a", 0) != derive_seed(1, "a", 1));
  CHECK(derive_seed(1, "a", 0) == derive_seed(1, "a", 0));
  Rng r(9);
  for (int i = 0; i < 200; ++i) CHECK(r.below(7) < 7);
}
