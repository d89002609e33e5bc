#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crank {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an exact check refutes a claimed mathematical property
// (as opposed to malformed input).
struct CertificationError : Error {
  explicit CertificationError(const std::string& msg) : Error(msg) {}
};

enum class FieldKind { rationals, prime_field };

bool is_odd_prime(std::uint64_t p);

/// Runtime description of the ground field: Q, or F_p with p an odd prime.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return FieldSpec{FieldKind::rationals, 0}; }
  static FieldSpec prime(std::uint64_t p) {
    if (!is_odd_prime(p)) throw Error("field modulus must be an odd prime, got " + std::to_string(p));
    return FieldSpec{FieldKind::prime_field, p};
  }
  bool operator==(const FieldSpec&) const = default;
  std::string name() const {
    return kind == FieldKind::rationals ? "Q" : "F_" + std::to_string(p);
  }
};

/// The field of rationals. Elements are GMP rationals, always canonical
/// (lowest terms, positive denominator).
class RationalField {
 public:
  using Element = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }
  bool operator==(const RationalField&) const { return true; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long v) const { return Element(v); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw Error("division by zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
};

/// F_p for an odd prime p. Elements are residues in [0, p).
class PrimeField {
 public:
  using Element = std::int64_t;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::int64_t>(p)) {
    if (!is_odd_prime(p)) throw Error("field modulus must be an odd prime, got " + std::to_string(p));
  }

  FieldSpec spec() const { return FieldSpec::prime(static_cast<std::uint64_t>(p_)); }
  std::int64_t modulus() const { return p_; }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long v) const {
    Element r = static_cast<Element>(v % p_);
    return r < 0 ? r + p_ : r;
  }

  Element add(Element a, Element b) const {
    Element r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  Element sub(Element a, Element b) const {
    Element r = a - b;
    return r < 0 ? r + p_ : r;
  }
  Element mul(Element a, Element b) const { return (a * b) % p_; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool eq(Element a, Element b) const { return a == b; }

 private:
  std::int64_t p_;
};

// Scalar text form: integers "42", rationals "3/7", residues "2 mod 5".
std::string scalar_to_string(const RationalField& f, const mpq_class& v);
std::string scalar_to_string(const PrimeField& f, std::int64_t v);
mpq_class parse_scalar(const RationalField& f, const std::string& s);
std::int64_t parse_scalar(const PrimeField& f, const std::string& s);

}  // namespace crank
