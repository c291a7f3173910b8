#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace freeprod {

using Integer = boost::multiprecision::cpp_int;

/// Coefficient ring: the integers (modulus 0) or Z/N for N >= 2.
struct CoefficientRing {
  std::int64_t modulus = 0;

  static CoefficientRing integers() { return {0}; }
  static CoefficientRing mod(std::int64_t n);

  bool is_integers() const { return modulus == 0; }
  /// Reduces into [0, N) for Z/N; identity over Z.
  Integer normalize(Integer c) const;

  friend bool operator==(CoefficientRing, CoefficientRing) = default;
};

/// Laurent polynomial in one variable u over a CoefficientRing.
/// Only nonzero coefficients are stored.
class LaurentPoly {
 public:
  using Terms = std::map<std::int64_t, Integer>;

  explicit LaurentPoly(CoefficientRing ring = {}) : ring_(ring) {}
  LaurentPoly(CoefficientRing ring, const Terms& terms);

  static LaurentPoly monomial(CoefficientRing ring, Integer coeff, std::int64_t exponent);
  /// u - 1
  static LaurentPoly u_minus_one(CoefficientRing ring);

  CoefficientRing ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// Coefficient of u^e (zero if absent).
  Integer coefficient(std::int64_t e) const;
  std::int64_t low_degree() const;
  std::int64_t high_degree() const;

  void add_term(const Integer& coeff, std::int64_t exponent);

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const;

 private:
  CoefficientRing ring_;
  Terms terms_;
};

/// Exact convolution product; throws InvalidInput on ring mismatch.
LaurentPoly laurent_multiply(const LaurentPoly& p, const LaurentPoly& q);

/// Witness that (u - 1) q != 1: the product has two distinct nonzero terms.
struct NonUnitCertificate {
  LaurentPoly product;
  Integer low_coeff;  // -a_r
  std::int64_t low_exponent = 0;   // r
  Integer high_coeff;  // a_s
  std::int64_t high_exponent = 0;  // s + 1
};

/// Computes (u - 1) q and certifies it is not 1. Throws InvalidInput for q = 0.
NonUnitCertificate check_u_minus_1_times_q_not_one(const LaurentPoly& q);

/// Parses "exp:coef,exp:coef,..." (e.g. "-2:1,1:5" for u^-2 + 5u).
LaurentPoly parse_laurent_terms(CoefficientRing ring, const std::string& text);

}  // namespace freeprod
