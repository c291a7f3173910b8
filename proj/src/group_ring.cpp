#include "freeprod/group_ring.hpp"

#include <sstream>
#include <stdexcept>

#include "freeprod/error.hpp"

namespace freeprod {

CoefficientRing CoefficientRing::mod(std::int64_t n) {
  if (n < 2) throw InvalidInput("modulus must be at least 2");
  return {n};
}

Integer CoefficientRing::normalize(Integer c) const {
  if (modulus == 0) return c;
  Integer n = modulus;
  c %= n;
  if (c < 0) c += n;
  return c;
}

LaurentPoly::LaurentPoly(CoefficientRing ring, const Terms& terms) : ring_(ring) {
  for (const auto& [e, c] : terms) add_term(c, e);
}

LaurentPoly LaurentPoly::monomial(CoefficientRing ring, Integer coeff, std::int64_t exponent) {
  LaurentPoly p(ring);
  p.add_term(coeff, exponent);
  return p;
}

LaurentPoly LaurentPoly::u_minus_one(CoefficientRing ring) {
  LaurentPoly p(ring);
  p.add_term(1, 1);
  p.add_term(-1, 0);
  return p;
}

void LaurentPoly::add_term(const Integer& coeff, std::int64_t exponent) {
  auto it = terms_.find(exponent);
  Integer sum = ring_.normalize(it == terms_.end() ? coeff : it->second + coeff);
  if (sum == 0) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(exponent, std::move(sum));
  } else {
    it->second = std::move(sum);
  }
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

Integer LaurentPoly::coefficient(std::int64_t e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer{0} : it->second;
}

std::int64_t LaurentPoly::low_degree() const {
  if (terms_.empty()) throw InvalidInput("zero polynomial has no degree");
  return terms_.begin()->first;
}

std::int64_t LaurentPoly::high_degree() const {
  if (terms_.empty()) throw InvalidInput("zero polynomial has no degree");
  return terms_.rbegin()->first;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Integer c = it->second;
    const auto e = it->first;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      os << "-";
      c = -c;
    }
    first = false;
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << "u";
    if (e != 1) os << "^" << e;
  }
  if (!ring_.is_integers()) os << " (mod " << ring_.modulus << ")";
  return os.str();
}

LaurentPoly laurent_multiply(const LaurentPoly& p, const LaurentPoly& q) {
  if (!(p.ring() == q.ring())) throw InvalidInput("Laurent polynomials over different rings");
  LaurentPoly out(p.ring());
  for (const auto& [e1, c1] : p.terms()) {
    for (const auto& [e2, c2] : q.terms()) out.add_term(c1 * c2, e1 + e2);
  }
  return out;
}

NonUnitCertificate check_u_minus_1_times_q_not_one(const LaurentPoly& q) {
  if (q.is_zero()) throw InvalidInput("q must be nonzero");
  const auto ring = q.ring();
  NonUnitCertificate cert;
  cert.product = laurent_multiply(LaurentPoly::u_minus_one(ring), q);
  cert.low_exponent = q.low_degree();
  cert.low_coeff = ring.normalize(-q.coefficient(cert.low_exponent));
  cert.high_exponent = q.high_degree() + 1;
  cert.high_coeff = q.coefficient(q.high_degree());

  // The extreme terms of (u - 1) q cannot cancel against anything, so both
  // survive and sit at distinct exponents.
  if (cert.product.coefficient(cert.low_exponent) != cert.low_coeff ||
      cert.product.coefficient(cert.high_exponent) != cert.high_coeff || cert.low_coeff == 0 ||
      cert.high_coeff == 0 || cert.high_exponent <= cert.low_exponent || cert.product.is_one()) {
    throw std::logic_error("non-unit certificate failed for q = " + q.to_string());
  }
  return cert;
}

LaurentPoly parse_laurent_terms(CoefficientRing ring, const std::string& text) {
  LaurentPoly p(ring);
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidInput("expected exponent:coefficient, got '" + item + "'");
    }
    std::int64_t e = 0;
    try {
      std::size_t used = 0;
      e = std::stoll(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("bad exponent in '" + item + "'");
    }
    Integer c;
    try {
      auto coeff = item.substr(colon + 1);
      while (!coeff.empty() && coeff.front() == ' ') coeff.erase(coeff.begin());
      while (!coeff.empty() && coeff.back() == ' ') coeff.pop_back();
      if (coeff.empty()) throw std::invalid_argument(item);
      c = Integer(coeff);
    } catch (const std::exception&) {
      throw InvalidInput("bad coefficient in '" + item + "'");
    }
    p.add_term(c, e);
  }
  return p;
}

}  // namespace freeprod
