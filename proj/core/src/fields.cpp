#include "crank/fields.hpp"

#include <cctype>

namespace crank {

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  mpz_class z(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

PrimeField::Element PrimeField::inv(Element a) const {
  a %= p_;
  if (a < 0) a += p_;
  if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
  // extended Euclid on (a, p)
  std::int64_t old_r = a, r = p_, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t res = old_s % p_;
  return res < 0 ? res + p_ : res;
}

std::string scalar_to_string(const RationalField&, const mpq_class& v) {
  return v.get_str();  // "num" or "num/den", canonical
}

std::string scalar_to_string(const PrimeField& f, std::int64_t v) {
  return std::to_string(v) + " mod " + std::to_string(f.modulus());
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

mpq_class parse_scalar(const RationalField&, const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(s)) throw Error("bad rational scalar: '" + s + "'");
    mpq_class v(s);
    v.canonicalize();
    return v;
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) throw Error("bad rational scalar: '" + s + "'");
  mpq_class v(s);
  if (v.get_den() == 0) throw Error("zero denominator in scalar: '" + s + "'");
  v.canonicalize();
  return v;
}

std::int64_t parse_scalar(const PrimeField& f, const std::string& s) {
  auto mod_pos = s.find(" mod ");
  std::string val = s;
  if (mod_pos != std::string::npos) {
    val = s.substr(0, mod_pos);
    std::string mod = s.substr(mod_pos + 5);
    if (!is_integer_token(mod) || std::stoll(mod) != f.modulus())
      throw Error("scalar '" + s + "' does not match field F_" + std::to_string(f.modulus()));
  }
  if (!is_integer_token(val)) throw Error("bad prime-field scalar: '" + s + "'");
  return f.from_int(std::stoll(val));
}

}  // namespace crank
