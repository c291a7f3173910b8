#include <random>

#include "doctest.h"
#include "freeprod/error.hpp"
#include "freeprod/group_ring.hpp"

using namespace freeprod;

namespace {

// Dense reference product with plain int64 arithmetic.
std::map<std::int64_t, std::int64_t> dense_product(const std::map<std::int64_t, std::int64_t>& p,
                                                  const std::map<std::int64_t, std::int64_t>& q,
                                                  std::int64_t modulus) {
  if (p.empty() || q.empty()) return {};
  const std::int64_t lo = p.begin()->first + q.begin()->first;
  const std::int64_t hi = p.rbegin()->first + q.rbegin()->first;
  std::vector<std::int64_t> acc(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [e1, c1] : p)
    for (const auto& [e2, c2] : q) acc[static_cast<std::size_t>(e1 + e2 - lo)] += c1 * c2;
  std::map<std::int64_t, std::int64_t> out;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    std::int64_t c = acc[i];
    if (modulus) c = ((c % modulus) + modulus) % modulus;
    if (c != 0) out[lo + static_cast<std::int64_t>(i)] = c;
  }
  return out;
}

std::map<std::int64_t, std::int64_t> random_terms(std::mt19937_64& rng, std::int64_t modulus) {
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<std::int64_t> exp(-8, 8);
  std::uniform_int_distribution<std::int64_t> coef(-20, 20);
  std::map<std::int64_t, std::int64_t> t;
  while (t.empty()) {
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::int64_t c = coef(rng);
      if (modulus) c = ((c % modulus) + modulus) % modulus;
      if (c != 0) t[exp(rng)] = c;
    }
  }
  return t;
}

LaurentPoly to_poly(CoefficientRing ring, const std::map<std::int64_t, std::int64_t>& t) {
  LaurentPoly p(ring);
  for (const auto& [e, c] : t) p.add_term(Integer(c), e);
  return p;
}

std::map<std::int64_t, std::int64_t> to_map(const LaurentPoly& p) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& [e, c] : p.terms()) out[e] = static_cast<std::int64_t>(c);
  return out;
}

}  // namespace

TEST_CASE("u - 1 times simple polynomials") {
  const auto Z = CoefficientRing::integers();
  const auto one = LaurentPoly::monomial(Z, 1, 0);
  CHECK(laurent_multiply(LaurentPoly::u_minus_one(Z), one) == LaurentPoly::u_minus_one(Z));

  const auto geom = parse_laurent_terms(Z, "0:1,1:1,2:1");
  const auto p = laurent_multiply(LaurentPoly::u_minus_one(Z), geom);
  CHECK(p == parse_laurent_terms(Z, "0:-1,3:1"));
  CHECK(p.to_string() == "u^3 - 1");

  const auto Z2 = CoefficientRing::mod(2);
  const auto q2 = laurent_multiply(LaurentPoly::u_minus_one(Z2), parse_laurent_terms(Z2, "0:1,1:1"));
  CHECK(q2 == parse_laurent_terms(Z2, "0:1,2:1"));
}

TEST_CASE("non-unit certificates") {
  const auto Z = CoefficientRing::integers();
  const auto c = check_u_minus_1_times_q_not_one(parse_laurent_terms(Z, "-2:1,1:5"));
  CHECK(c.low_coeff == -1);
  CHECK(c.low_exponent == -2);
  CHECK(c.high_coeff == 5);
  CHECK(c.high_exponent == 2);
  CHECK(c.product == parse_laurent_terms(Z, "-2:-1,-1:1,1:-5,2:5"));

  const auto Z6 = CoefficientRing::mod(6);
  const auto c6 = check_u_minus_1_times_q_not_one(parse_laurent_terms(Z6, "0:3"));
  CHECK(c6.low_coeff == 3);  // -3 = 3 mod 6
  CHECK(c6.low_exponent == 0);
  CHECK(c6.high_coeff == 3);
  CHECK(c6.high_exponent == 1);
  CHECK_FALSE(c6.product.is_one());
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(17);
  for (std::int64_t m : {0, 2, 5, 12}) {
    const CoefficientRing ring{m};
    for (int i = 0; i < 300; ++i) {
      const auto a = to_poly(ring, random_terms(rng, m));
      const auto b = to_poly(ring, random_terms(rng, m));
      const auto c = to_poly(ring, random_terms(rng, m));
      CHECK(laurent_multiply(a, b) == laurent_multiply(b, a));
      CHECK(laurent_multiply(laurent_multiply(a, b), c) == laurent_multiply(a, laurent_multiply(b, c)));
    }
  }
}

TEST_CASE("(u - 1) q is never 1: sampled over Z and Z/N") {
  std::mt19937_64 rng(0x1a2b);
  std::size_t checked = 0;
  const std::map<std::int64_t, std::int64_t> u_minus_1{{0, -1}, {1, 1}};
  for (std::int64_t m = 0; m <= 12; ++m) {
    if (m == 1) continue;
    const CoefficientRing ring{m};
    for (int i = 0; i < 8000; ++i) {
      const auto t = random_terms(rng, m);
      const auto q = to_poly(ring, t);
      const auto cert = check_u_minus_1_times_q_not_one(q);
      auto ref_factor = u_minus_1;
      if (m) ref_factor[0] = m - 1;
      const auto ref = dense_product(ref_factor, t, m);
      if (to_map(cert.product) != ref) FAIL("product mismatch");
      if (cert.product.is_one() || ref == std::map<std::int64_t, std::int64_t>{{0, 1}}) FAIL("unit");
      if (cert.low_exponent == cert.high_exponent) FAIL("degenerate certificate");
      ++checked;
    }
  }
  CHECK(checked == 12 * 8000);
}

TEST_CASE("errors") {
  const auto Z = CoefficientRing::integers();
  CHECK_THROWS_AS(laurent_multiply(LaurentPoly::u_minus_one(Z), LaurentPoly::u_minus_one(CoefficientRing::mod(3))),
                  InvalidInput);
  CHECK_THROWS_AS(check_u_minus_1_times_q_not_one(LaurentPoly(Z)), InvalidInput);
  CHECK_THROWS_AS(CoefficientRing::mod(1), InvalidInput);
  CHECK_THROWS_AS(parse_laurent_terms(Z, "1:"), InvalidInput);
  CHECK(parse_laurent_terms(CoefficientRing::mod(3), "0:3").is_zero());
}
