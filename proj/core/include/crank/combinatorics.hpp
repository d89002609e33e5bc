#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "crank/fields.hpp"

namespace crank {

inline mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline std::int64_t binomial_i64(long n, long k) {
  mpz_class b = binomial(n, k);
  if (!b.fits_slong_p()) throw Error("binomial overflow");
  return b.get_si();
}

inline mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// All k-element subsets of {0,...,n-1} in lexicographic order, each sorted
/// ascending. This order is the index convention for exterior-power bases
/// and for minor enumeration.
inline std::vector<std::vector<int>> lex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Sign of sorting the concatenation of strictly increasing index lists,
/// counting inversions; 0 if they share an index. This fixes the sign
/// convention e_S ^ e_T throughout.
inline int concat_sign(const std::vector<int>& a, const std::vector<int>& b) {
  long inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace crank
