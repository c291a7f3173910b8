#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace freeprod {

enum class FactorKind { FiniteTable, FiniteCyclic, InfiniteCyclic, Free };

std::string to_string(FactorKind kind);

/// An element of one factor group.
///
/// The encoding depends on the kind of the owning group:
///   - finite kinds: `value` is the element id, identity is id 0;
///   - infinite cyclic: `value` is the exponent of the generator t;
///   - free: `word` is a freely reduced word, letter +i is x_i, -i is x_i^-1.
/// The unused field stays zero/empty, so the identity is the default value for
/// every kind.
struct FactorElement {
  std::int64_t value = 0;
  std::vector<std::int32_t> word;

  static FactorElement id(std::int64_t v) { return FactorElement{v, {}}; }
  static FactorElement free_word(std::vector<std::int32_t> w) {
    return FactorElement{0, std::move(w)};
  }

  bool is_identity() const { return value == 0 && word.empty(); }

  friend bool operator==(const FactorElement&, const FactorElement&) = default;
};

std::size_t hash_value(const FactorElement& x);

struct GeneratorSpec {
  std::string name;
  FactorElement element;
};

/// Description of a factor group as read from a group-spec file.
struct FactorGroupSpec {
  FactorKind kind = FactorKind::FiniteCyclic;
  std::int64_t order = 0;  // finite_cyclic n
  int rank = 0;            // free rank
  std::vector<std::string> element_names;          // finite_table, optional
  std::vector<std::vector<std::int64_t>> table;    // finite_table
  std::vector<GeneratorSpec> generators;
  std::string label;
};

/// Validated, immutable factor group.
///
/// All tables (word lengths, inverses, conjugacy representatives) are filled
/// in by the constructor, so a constructed group is read-only and can be
/// shared between threads.
class FactorGroup {
 public:
  explicit FactorGroup(FactorGroupSpec spec);

  const FactorGroupSpec& spec() const { return spec_; }
  FactorKind kind() const { return spec_.kind; }
  bool is_finite() const {
    return spec_.kind == FactorKind::FiniteTable || spec_.kind == FactorKind::FiniteCyclic;
  }
  /// Group order for finite kinds, nullopt otherwise.
  std::optional<std::int64_t> order() const;

  /// Throws InvalidInput if x is not an element of this group.
  void check(const FactorElement& x) const;
  bool is_valid(const FactorElement& x) const;

  FactorElement identity() const { return {}; }
  FactorElement multiply(const FactorElement& x, const FactorElement& y) const;
  FactorElement inverse(const FactorElement& x) const;
  FactorElement power(const FactorElement& x, std::int64_t k) const;

  /// Declared generators E, in file order.
  const std::vector<GeneratorSpec>& generators() const { return spec_.generators; }
  /// E together with the inverses of its elements, deduplicated, in a fixed order.
  const std::vector<FactorElement>& symmetric_generators() const { return sym_generators_; }

  /// Length over E and its inverses.
  std::int64_t word_length(const FactorElement& x) const;

  bool are_conjugate(const FactorElement& x, const FactorElement& y) const;
  /// Least element (in letter order) of the conjugacy class of x.
  FactorElement conjugacy_representative(const FactorElement& x) const;

  /// Strict total order on elements used for normal-form letter ordering.
  bool less(const FactorElement& x, const FactorElement& y) const;

  /// All elements, identity first. Finite kinds only.
  std::vector<FactorElement> elements() const;

  std::string format(const FactorElement& x) const;

 private:
  void validate_table();
  void build_finite_tables();

  std::int64_t finite_order() const;
  std::int64_t table_product(std::int64_t x, std::int64_t y) const;

  FactorGroupSpec spec_;
  std::vector<FactorElement> sym_generators_;
  // Finite kinds only, indexed by element id.
  std::vector<std::int64_t> inverse_;
  std::vector<std::int64_t> length_;
  std::vector<std::int64_t> class_rep_;
};

/// Cyclic group of order n generated by element 1 (named `gen`).
FactorGroupSpec cyclic_spec(std::int64_t n, std::string gen);
FactorGroupSpec infinite_cyclic_spec(std::string gen);
FactorGroupSpec free_spec(std::vector<std::string> gens);
/// Symmetric group on three points as an explicit table, generated by a
/// transposition `s` and a 3-cycle `r`.
FactorGroupSpec symmetric3_spec(std::string s = "s", std::string r = "r");

/// Freely reduces a word over the free-group letters (+i / -i).
std::vector<std::int32_t> free_reduce(std::vector<std::int32_t> w);

}  // namespace freeprod

template <>
struct std::hash<freeprod::FactorElement> {
  std::size_t operator()(const freeprod::FactorElement& x) const noexcept {
    return freeprod::hash_value(x);
  }
};
