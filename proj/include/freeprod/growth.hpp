#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freeprod/free_product.hpp"

namespace freeprod {

inline constexpr int kDefaultDepthCap = 12;
inline constexpr std::size_t kDefaultMemoryBudgetMb = 2048;

struct EnumerationOptions {
  int max_k = 0;
  int depth_cap = kDefaultDepthCap;
  /// Approximate bytes held by the enumeration before it stops early.
  std::size_t memory_budget_bytes = kDefaultMemoryBudgetMb << 20;
  unsigned threads = 1;
};

/// Elements sorted into spheres by word length: spheres[k] = {g : w_E(g) = k}.
struct Ball {
  std::vector<std::vector<NormalForm>> spheres;
  bool truncated = false;
  std::string truncation_reason;

  int reached_depth() const { return static_cast<int>(spheres.size()) - 1; }
};

/// Breadth-first closure of the identity under right multiplication by the
/// symmetric generators. Throws BudgetExceeded if max_k exceeds the depth cap;
/// running out of memory budget returns the complete spheres found so far with
/// `truncated` set.
Ball enumerate_elements(const FreeProduct& group, const EnumerationOptions& options);

struct GrowthRow {
  int k = 0;
  std::uint64_t elements = 0;  // G(k), cumulative
  std::uint64_t classes = 0;   // F(k), cumulative
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool truncated = false;
  std::string truncation_reason;
};

GrowthTable count_conjugacy_classes(const FreeProduct& group, const Ball& ball);
GrowthTable count_conjugacy_classes(const FreeProduct& group, const EnumerationOptions& options);

struct GrowthRateEstimate {
  double lambda_elements = 0;
  double lambda_classes = 0;
  /// Root-mean-square residual of the log-linear fits.
  double residual_elements = 0;
  double residual_classes = 0;
  int first_k = 0;
  int last_k = 0;
};

/// Least-squares fit of log(count) against k over the upper half of the rows.
GrowthRateEstimate growth_rate_estimate(const GrowthTable& table);

/// The elements a, b_1, b_2 used to build the word family.
struct FamilyGenerators {
  FactorElement a;   // in the first factor
  FactorElement b1;  // in the second factor
  FactorElement b2;
  std::string b2_rule;  // "square", "other_generator" or "override"
};

/// Picks a from E_1 and b_1 from E_2; b_2 = b_1^2 unless b_1 is an
/// involution, in which case b_2 is another generator of E_2.
/// Throws NotApplicable when no valid b_2 exists.
FamilyGenerators choose_family_generators(const FreeProduct& group,
                                          const std::optional<FactorElement>& b2_override = {});

struct FamilyMember {
  std::vector<int> tuple;  // entries in {1, 2}
  NormalForm word;
};

struct WordFamily {
  int r = 0;
  FamilyGenerators generators;
  std::vector<FamilyMember> representatives;
  bool pairwise_nonconjugate = false;
};

inline constexpr int kMaxFamilyLength = 20;

/// Words a b_{m_1} a b_{m_2} ... a b_{m_r}, one per necklace of {1,2}^r.
WordFamily gm_family(const FreeProduct& group, int r,
                     const std::optional<FactorElement>& b2_override = {});

/// Binary necklaces of length r; exact for 1 <= r <= 60.
std::uint64_t necklace_count(int r);
/// Rotation-minimal tuples over {1, 2} of length r, in lexicographic order.
std::vector<std::vector<int>> necklace_representatives(int r);

struct FreeSubgroupCheck {
  bool free = true;
  int depth = 0;
  std::uint64_t words_checked = 0;
  /// Offending reduced word over x = a b_1 (+1) and y = a b_2 (+2), negatives
  /// for inverses. Set when free is false.
  std::vector<int> witness;
  /// When the failure is a collision, the earlier word with the same image.
  std::vector<int> collides_with;
};

inline constexpr int kMaxFreeSubgroupDepth = 12;

/// Checks that reduced words in x = a b_1, y = a b_2 of length <= depth map
/// injectively and never to the identity.
FreeSubgroupCheck verify_free_subgroup(const FreeProduct& group, int depth,
                                       const std::optional<FactorElement>& b2_override = {});

struct DihedralCheck {
  bool inverts_t = false;         // a t a^-1 == t^-1
  bool inverts_t_squared = false;  // a t^2 a^-1 == t^-2
  bool fixes_identity = false;     // a t^0 a^-1 == 1
  bool holds() const { return inverts_t && inverts_t_squared && fixes_identity; }
};

/// Relations of the infinite dihedral group Z2 * Z2 with t = ab.
DihedralCheck verify_dihedral_relation();

/// Z_n * Z_m with generators named `a` and `b`.
FreeProduct cyclic_free_product(std::int64_t n, std::int64_t m);

}  // namespace freeprod
