#include "freeprod/geodesic_bounds.hpp"

#include <cctype>

#include "freeprod/error.hpp"

namespace freeprod {

namespace {

constexpr std::int64_t kMaxBoundIndex = 4096;
constexpr int kMaxPolynomialDegree = 1024;

using boost::multiprecision::cpp_int;

Rational pow(Rational base, std::int64_t e) {
  Rational out = 1;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

Classification single(GrowthClass growth, const char* rule, std::string statement) {
  Classification c;
  c.growth = growth;
  c.trace.push_back({rule, std::move(statement)});
  return c;
}

void validate(const Summand& s, const std::string& where) {
  if (s.b1 < 0) throw InvalidInput(where + ": b1 must be nonnegative");
  if (is_finite(s.pi1) && s.b1 != 0) {
    throw InvalidInput(where + ": a finite fundamental group forces b1 = 0");
  }
  if (s.pi1 == Pi1Class::FiniteOther && s.order < 3) {
    throw InvalidInput(where + ": finite_other needs order >= 3");
  }
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return InvalidInput("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  cpp_int digits = 0;
  std::int64_t scale = 0;
  bool any = false;
  bool dot = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = digits * 10 + (ch - '0');
      if (dot) --scale;
      any = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw bad();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw bad();
    std::size_t used = 0;
    std::int64_t exp = 0;
    try {
      exp = std::stoll(text.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != text.size() - i - 1 || exp > 4096 || exp < -4096) throw bad();
    scale += exp;
  }
  Rational value = digits;
  if (scale > 0) value *= pow(Rational(10), scale);
  if (scale < 0) value /= pow(Rational(10), -scale);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

void validate(const MetricParams& params) {
  if (params.L1 <= 0) throw InvalidInput("L1 must be positive");
  if (params.L < params.L1) throw InvalidInput("L must be at least L1");
}

ExponentialBound exponential_lower_bound(const MetricParams& params, const Rational& t) {
  validate(params);
  if (t <= 0) throw InvalidInput("t must be positive");
  const Rational ratio = t / (3 * params.L);
  const cpp_int r = boost::multiprecision::numerator(ratio) / boost::multiprecision::denominator(ratio);
  ExponentialBound out;
  if (r < 1) {
    out.below_range = true;
    return out;
  }
  if (r > kMaxBoundIndex) throw InvalidInput("t / 3L exceeds " + std::to_string(kMaxBoundIndex));
  out.r = r.convert_to<std::int64_t>();
  out.value = pow(Rational(2), out.r) * params.L1 / (3 * Rational(out.r * out.r) * params.L);
  return out;
}

Rational polynomial_lower_bound(int k, std::int64_t cover_order, const Rational& lambda_k,
                                const Rational& t) {
  if (k < 1 || k > kMaxPolynomialDegree) throw InvalidInput("k must be in [1, 1024]");
  if (cover_order < 1) throw InvalidInput("cover order must be positive");
  if (lambda_k <= 0) throw InvalidInput("lambda_k must be positive");
  if (t <= 0) throw InvalidInput("t must be positive");
  return lambda_k / cover_order * pow(t, k);
}

std::vector<CurvePoint> exponential_bound_curve(const MetricParams& params, std::int64_t r_max) {
  validate(params);
  if (r_max < 1 || r_max > kMaxBoundIndex) throw InvalidInput("r_max must be in [1, 4096]");
  std::vector<CurvePoint> out;
  for (std::int64_t r = 1; r <= r_max; ++r) {
    Rational t = 3 * r * params.L;
    out.push_back({t, exponential_lower_bound(params, t).value});
  }
  return out;
}

std::string to_string(Pi1Class c) {
  switch (c) {
    case Pi1Class::Trivial: return "trivial";
    case Pi1Class::Z2: return "Z2";
    case Pi1Class::FiniteOther: return "finite_other";
    case Pi1Class::SolvableInfinite: return "solvable_infinite";
    case Pi1Class::InfiniteOther: return "infinite_other";
  }
  return "unknown";
}

Pi1Class parse_pi1_class(const std::string& text) {
  for (auto c : {Pi1Class::Trivial, Pi1Class::Z2, Pi1Class::FiniteOther, Pi1Class::SolvableInfinite,
                 Pi1Class::InfiniteOther}) {
    if (text == to_string(c)) return c;
  }
  throw InvalidInput("unknown fundamental-group class '" + text + "'");
}

bool is_finite(Pi1Class c) {
  return c == Pi1Class::Trivial || c == Pi1Class::Z2 || c == Pi1Class::FiniteOther;
}

std::string to_string(GrowthKind k) {
  switch (k) {
    case GrowthKind::Exponential: return "Exponential";
    case GrowthKind::PrimeLike: return "PrimeLike";
    case GrowthKind::PolynomialAtLeast: return "PolynomialAtLeast";
    case GrowthKind::AllPolynomial: return "AllPolynomial";
    case GrowthKind::GenericOnly: return "GenericOnly";
    case GrowthKind::InfinitelyMany: return "InfinitelyMany";
    case GrowthKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

Classification classify_three_manifold(const ManifoldDescriptor& d) {
  if (d.summands.empty()) throw InvalidInput("descriptor has no summands");
  std::vector<const Summand*> nontrivial;
  bool infinite_pi1 = false;
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    const auto& s = d.summands[i];
    validate(s, "summand " + std::to_string(i));
    if (s.pi1 != Pi1Class::Trivial) nontrivial.push_back(&s);
    if (!is_finite(s.pi1)) infinite_pi1 = true;
  }
  // A free product of two non-trivial groups is infinite.
  if (nontrivial.size() >= 2) infinite_pi1 = true;

  if (!d.orientable) {
    if (!infinite_pi1) {
      return single({GrowthKind::GenericOnly}, rules::kFiniteGeneric,
                    "finite fundamental group: N(t) log t / t is bounded below only for "
                    "C^4-generic Riemannian metrics");
    }
    return single({GrowthKind::PrimeLike}, rules::kOrientationCover,
                  "infinite fundamental group lifts to the twofold orientation cover: "
                  "liminf N(t) log t / t > 0");
  }

  if (nontrivial.size() >= 2) {
    const bool rp3_rp3 = nontrivial.size() == 2 && nontrivial[0]->pi1 == Pi1Class::Z2 &&
                         nontrivial[1]->pi1 == Pi1Class::Z2;
    if (rp3_rp3) {
      return single({GrowthKind::PrimeLike}, rules::kRp3SumRp3,
                    "RP3 # RP3: Z2 * Z2 has an index-two infinite cyclic subgroup, cover "
                    "S1 x S2: liminf N(t) log t / t > 0");
    }
    return single({GrowthKind::Exponential}, rules::kNonPrimeExponential,
                  "not prime and not RP3 # RP3: fundamental group is a free product with a "
                  "factor of order >= 3: liminf log N(t) / t > 0");
  }

  if (nontrivial.empty()) {
    return single({GrowthKind::GenericOnly}, rules::kFiniteGeneric,
                  "simply connected: only C^4-generic Riemannian metrics are covered");
  }

  const auto& s = *nontrivial.front();
  switch (s.pi1) {
    case Pi1Class::InfiniteOther:
      return single({GrowthKind::AllPolynomial}, rules::kPrimeNonSolvable,
                    "prime, fundamental group neither finite nor solvable: vb1 = infinity, so "
                    "liminf N(t) / t^r > 0 for every r >= 1");
    case Pi1Class::SolvableInfinite: {
      auto c = single({GrowthKind::PrimeLike}, rules::kPrimeSolvable,
                      "prime with infinite solvable fundamental group: liminf N(t) log t / t > 0");
      if (s.b1 >= 2) {
        c.growth = {GrowthKind::PolynomialAtLeast, s.b1};
        c.trace.push_back({rules::kFiniteCoverBetti,
                           "b1 = " + std::to_string(s.b1) +
                               " >= 2 bounds vb1 from below: liminf N(t) / t^" +
                               std::to_string(s.b1) + " > 0"});
      }
      return c;
    }
    default:
      return single({GrowthKind::GenericOnly}, rules::kFiniteGeneric,
                    "finite fundamental group: only C^4-generic Riemannian metrics are covered");
  }
}

Classification classify_connected_sum(const ConnectedSumInput& in) {
  validate(in.m1, "M1");
  validate(in.m2, "M2");
  const bool t1 = in.m1.pi1 != Pi1Class::Trivial;
  const bool t2 = in.m2.pi1 != Pi1Class::Trivial;

  if (in.m2_is_sphere) {
    if (t2) throw InvalidInput("M2 is declared a sphere but has non-trivial fundamental group");
    if (!t1) throw InvalidInput("M1 and M2 are both simply connected and M2 is a sphere: "
                                "not a genuine connected sum");
    return single({GrowthKind::Unknown}, rules::kSumSphere,
                  "M1 # S^n is M1: no connected-sum rule applies");
  }
  if (!t1 && !t2) {
    return single({GrowthKind::Unknown}, rules::kSumSimplyConnected,
                  "both summands simply connected: no connected-sum rule applies");
  }
  if (!t1) {
    throw InvalidInput("pass the summand with non-trivial fundamental group as M1");
  }

  if (t2) {
    if (in.m1.pi1 == Pi1Class::Z2 && in.m2.pi1 == Pi1Class::Z2) {
      return single({GrowthKind::PrimeLike}, rules::kSumDihedral,
                    "pi1 = Z2 * Z2 contains t = ab with a t a^-1 = t^-1, an index-two infinite "
                    "cyclic subgroup: liminf N(t) log t / t > 0");
    }
    return single({GrowthKind::Exponential}, rules::kSumBothNontrivial,
                  "both fundamental groups non-trivial and not both Z2: "
                  "liminf log N(t) / t > 0");
  }

  // M2 simply connected and not a sphere.
  if (in.m1.b1 >= 1) {
    return single({GrowthKind::PrimeLike}, rules::kSumBetti,
                  "b1(M1) >= 1: liminf N(t) log t / t > 0");
  }
  if (is_finite(in.m1.pi1)) {
    return single({GrowthKind::InfinitelyMany}, rules::kSumFiniteSimplyConnected,
                  "pi1(M1) finite, M2 simply connected: infinitely many closed geodesics, "
                  "no growth rate");
  }
  return single({GrowthKind::Unknown}, rules::kSumRemainingCase,
                "M2 simply connected, pi1(M1) infinite, b1(M1) = 0: the remaining open case");
}

}  // namespace freeprod
