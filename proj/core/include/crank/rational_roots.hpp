#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

#include "crank/fields.hpp"
#include "crank/poly.hpp"

namespace crank {
namespace detail {

inline mpz_class pollard_rho(const mpz_class& n) {
  // Brent cycle detection; n composite, odd, > 1
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](mpz_class v) {
      mpz_class r = (v * v + c) % n;
      return r;
    };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      mpz_class diff = x - y;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  for (unsigned long p = 17; p < 100000 && n > 1; p += 2) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) > 0) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

inline std::vector<mpz_class> positive_divisors(const mpz_class& n, std::size_t cap) {
  std::map<mpz_class, unsigned> f;
  factor_into(n, f);
  std::vector<mpz_class> divs = {1};
  for (auto& [p, e] : f) {
    std::vector<mpz_class> next;
    next.reserve(divs.size() * (e + 1));
    mpz_class pk = 1;
    for (unsigned i = 0; i <= e; ++i) {
      for (auto& d : divs) next.push_back(d * pk);
      pk *= p;
    }
    divs = std::move(next);
    if (divs.size() > cap) throw Error("too many divisor candidates in rational root search");
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

/// All rational roots of a nonzero univariate polynomial over Q, exactly.
inline std::vector<mpq_class> rational_roots(const RationalField& k, UniPoly<RationalField> p) {
  uni_trim(k, p);
  if (p.empty()) throw Error("rational_roots of the zero polynomial");
  std::vector<mpq_class> roots;
  // strip powers of t; root at 0
  std::size_t low = 0;
  while (low < p.size() && sgn(p[low]) == 0) ++low;
  if (low > 0) {
    roots.emplace_back(0);
    p.erase(p.begin(), p.begin() + static_cast<long>(low));
  }
  if (p.size() <= 1) return roots;
  // integerize to a primitive polynomial
  mpz_class den_lcm = 1;
  for (auto& c : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ip;
  ip.reserve(p.size());
  mpz_class content = 0;
  for (auto& c : p) {
    mpq_class v = c * mpq_class(den_lcm);
    ip.push_back(v.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ip.back().get_mpz_t());
  }
  if (content > 1)
    for (auto& c : ip) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  auto nums = detail::positive_divisors(ip.front(), 200000);
  auto dens = detail::positive_divisors(ip.back(), 200000);
  for (const auto& num : nums)
    for (const auto& den : dens) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (g != 1) continue;
      for (int sign : {1, -1}) {
        mpq_class cand(sign * num, den);
        cand.canonicalize();
        // exact Horner over the integer coefficients
        mpq_class acc = 0;
        for (auto it = ip.rbegin(); it != ip.rend(); ++it) acc = acc * cand + mpq_class(*it);
        if (sgn(acc) == 0) roots.push_back(cand);
      }
    }
  std::sort(roots.begin(), roots.end(), [](const mpq_class& a, const mpq_class& b) { return a < b; });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Roots of a univariate polynomial in F_p, by evaluation at every residue.
inline std::vector<std::int64_t> prime_field_roots(const PrimeField& k, const UniPoly<PrimeField>& p) {
  std::vector<std::int64_t> roots;
  if (p.empty()) throw Error("prime_field_roots of the zero polynomial");
  for (std::int64_t x = 0; x < k.modulus(); ++x)
    if (k.is_zero(uni_eval(k, p, x))) roots.push_back(x);
  return roots;
}

}  // namespace crank
