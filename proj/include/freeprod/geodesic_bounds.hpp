#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace freeprod {

using Rational = boost::multiprecision::cpp_rational;

/// Parses an exact rational from "p/q", an integer, or a decimal like "2.5".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Loop lengths on the manifold, supplied by the user.
struct MetricParams {
  Rational L;   // max over a, b_1, b_2 of the shortest loop length
  Rational L1;  // shortest homotopically non-trivial closed geodesic
};

void validate(const MetricParams& params);

struct ExponentialBound {
  Rational value;
  std::int64_t r = 0;
  /// t < 3L: no admissible r, value is 0.
  bool below_range = false;
};

/// 2^r L1 / (3 r^2 L) with r = floor(t / (3L)).
ExponentialBound exponential_lower_bound(const MetricParams& params, const Rational& t);

/// (lambda_k / r) t^k for a finite cover of order r.
Rational polynomial_lower_bound(int k, std::int64_t cover_order, const Rational& lambda_k,
                                const Rational& t);

struct CurvePoint {
  Rational t;
  Rational bound;
};

/// The exponential bound sampled at t = 3L, 6L, ..., 3 r_max L.
std::vector<CurvePoint> exponential_bound_curve(const MetricParams& params, std::int64_t r_max);

enum class Pi1Class { Trivial, Z2, FiniteOther, SolvableInfinite, InfiniteOther };

std::string to_string(Pi1Class c);
Pi1Class parse_pi1_class(const std::string& text);
bool is_finite(Pi1Class c);

struct Summand {
  Pi1Class pi1 = Pi1Class::Trivial;
  std::int64_t order = 0;  // FiniteOther only
  std::int64_t b1 = 0;
};

struct ManifoldDescriptor {
  bool orientable = true;
  std::vector<Summand> summands;
};

enum class GrowthKind {
  Exponential,        // liminf log N(t) / t > 0
  PrimeLike,          // liminf N(t) log t / t > 0
  PolynomialAtLeast,  // liminf N(t) / t^k > 0 for the reported k
  AllPolynomial,      // liminf N(t) / t^r > 0 for every r
  GenericOnly,        // only generic metrics are covered
  InfinitelyMany,     // infinitely many closed geodesics, no rate
  Unknown,            // open case
};

std::string to_string(GrowthKind k);

struct GrowthClass {
  GrowthKind kind = GrowthKind::Unknown;
  std::int64_t degree = 0;  // PolynomialAtLeast only

  friend bool operator==(const GrowthClass&, const GrowthClass&) = default;
};

/// Stable rule identifiers returned in classification traces.
namespace rules {
inline constexpr const char* kNonPrimeExponential = "non_prime.exponential";
inline constexpr const char* kRp3SumRp3 = "rp3_sum_rp3.index_two_cyclic";
inline constexpr const char* kPrimeNonSolvable = "prime.infinite_non_solvable.all_polynomial";
inline constexpr const char* kPrimeSolvable = "prime.infinite_solvable.prime_like";
inline constexpr const char* kFiniteCoverBetti = "finite_cover.betti_polynomial";
inline constexpr const char* kFiniteGeneric = "finite_pi1.generic_metric_only";
inline constexpr const char* kOrientationCover = "non_orientable.orientation_double_cover";
inline constexpr const char* kSumBothNontrivial = "connected_sum.both_nontrivial.exponential";
inline constexpr const char* kSumDihedral = "connected_sum.z2_z2.prime_like";
inline constexpr const char* kSumBetti = "connected_sum.betti.prime_like";
inline constexpr const char* kSumFiniteSimplyConnected = "connected_sum.finite_and_simply_connected";
inline constexpr const char* kSumRemainingCase = "connected_sum.remaining_case.unknown";
inline constexpr const char* kSumSphere = "connected_sum.sphere_summand";
inline constexpr const char* kSumSimplyConnected = "connected_sum.both_simply_connected";
}  // namespace rules

struct RuleStep {
  std::string rule;
  std::string statement;
};

struct Classification {
  GrowthClass growth;
  /// Rule applied to reach the result, last entry decisive.
  std::vector<RuleStep> trace;

  const std::string& rule() const { return trace.back().rule; }
};

/// Throws InvalidInput for an empty summand list or inconsistent summands.
Classification classify_three_manifold(const ManifoldDescriptor& d);

struct ConnectedSumInput {
  Summand m1;
  Summand m2;
  bool m2_is_sphere = false;
};

/// Growth of N(t) on M1 # M2 (dimension >= 3). M1 must carry the non-trivial
/// fundamental group when only one summand does.
Classification classify_connected_sum(const ConnectedSumInput& in);

}  // namespace freeprod
