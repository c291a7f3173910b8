#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "freeprod/factor_group.hpp"

namespace freeprod {

/// One syllable of a normal form: a non-identity element of factor 0 or 1.
struct Letter {
  std::uint8_t factor = 0;
  FactorElement value;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Reduced alternating word g_1 g_2 ... g_r; empty is the identity.
///
/// Normal forms are unique, so sequence equality is group equality.
struct NormalForm {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

std::size_t hash_value(const NormalForm& g);

/// Canonical representative of a conjugacy class, stored as a normal form.
struct ConjugacyClassKey {
  NormalForm form;
  friend bool operator==(const ConjugacyClassKey&, const ConjugacyClassKey&) = default;
};

/// Result of cyclic reduction: result = conjugator * original * conjugator^-1.
struct Conjugation {
  NormalForm conjugator;
  NormalForm result;
};

/// The free product G_1 * G_2 of two validated factor groups.
///
/// Everything here is a pure function of immutable state.
class FreeProduct {
 public:
  FreeProduct(FactorGroup first, FactorGroup second);
  FreeProduct(FactorGroupSpec first, FactorGroupSpec second)
      : FreeProduct(FactorGroup(std::move(first)), FactorGroup(std::move(second))) {}

  const FactorGroup& factor(std::size_t i) const { return factors_.at(i); }

  /// Throws InvalidInput unless g satisfies the normal-form invariants.
  void check(const NormalForm& g) const;
  bool is_valid(const NormalForm& g) const;

  NormalForm identity() const { return {}; }
  /// Single-letter form, or the identity when x is trivial.
  NormalForm letter(std::size_t factor, const FactorElement& x) const;

  NormalForm multiply(const NormalForm& g, const NormalForm& h) const;
  NormalForm invert(const NormalForm& g) const;
  /// h * g * h^-1
  NormalForm conjugate(const NormalForm& g, const NormalForm& h) const;

  bool is_cyclically_reduced(const NormalForm& g) const;
  bool is_weakly_reduced(const NormalForm& g) const;
  Conjugation cyclically_reduce(const NormalForm& g) const;

  bool are_conjugate(const NormalForm& g, const NormalForm& h) const;
  ConjugacyClassKey canonical_class_key(const NormalForm& g) const;

  std::int64_t word_length(const NormalForm& g) const;

  /// Generators of both factors and their inverses, as single-letter forms.
  std::vector<NormalForm> symmetric_generators() const;

  /// Strict total order on letters: factor index, then the factor's element order.
  bool letter_less(const Letter& x, const Letter& y) const;
  bool sequence_less(const std::vector<Letter>& x, const std::vector<Letter>& y) const;

  std::string format(const NormalForm& g) const;

 private:
  Letter invert_letter(const Letter& l) const;
  std::vector<Letter> least_rotation(const std::vector<Letter>& w) const;

  std::vector<FactorGroup> factors_;
};

}  // namespace freeprod

template <>
struct std::hash<freeprod::NormalForm> {
  std::size_t operator()(const freeprod::NormalForm& g) const noexcept {
    return freeprod::hash_value(g);
  }
};

template <>
struct std::hash<freeprod::ConjugacyClassKey> {
  std::size_t operator()(const freeprod::ConjugacyClassKey& k) const noexcept {
    return freeprod::hash_value(k.form);
  }
};
