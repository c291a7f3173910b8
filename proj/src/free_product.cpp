#include "freeprod/free_product.hpp"

#include <algorithm>
#include <sstream>

#include "freeprod/error.hpp"

namespace freeprod {

std::size_t hash_value(const NormalForm& g) {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& l : g.letters) {
    h ^= hash_value(l.value) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2) + l.factor;
  }
  return h;
}

FreeProduct::FreeProduct(FactorGroup first, FactorGroup second) {
  factors_.push_back(std::move(first));
  factors_.push_back(std::move(second));
  for (const auto& a : factors_[0].generators()) {
    for (const auto& b : factors_[1].generators()) {
      if (a.name == b.name) {
        throw InvalidInput("generator name '" + a.name + "' is used by both factors");
      }
    }
  }
}

bool FreeProduct::is_valid(const NormalForm& g) const {
  for (std::size_t i = 0; i < g.letters.size(); ++i) {
    const auto& l = g.letters[i];
    if (l.factor > 1) return false;
    if (l.value.is_identity() || !factors_[l.factor].is_valid(l.value)) return false;
    if (i > 0 && g.letters[i - 1].factor == l.factor) return false;
  }
  return true;
}

void FreeProduct::check(const NormalForm& g) const {
  if (!is_valid(g)) throw InvalidInput("not a normal form of this free product");
}

NormalForm FreeProduct::letter(std::size_t factor, const FactorElement& x) const {
  if (factor > 1) throw InvalidInput("factor index must be 0 or 1");
  factors_[factor].check(x);
  if (x.is_identity()) return {};
  return NormalForm{{Letter{static_cast<std::uint8_t>(factor), x}}};
}

NormalForm FreeProduct::multiply(const NormalForm& g, const NormalForm& h) const {
  std::vector<Letter> out = g.letters;
  std::size_t i = 0;
  // Cancel inverse boundary pairs; stop after the first consolidation.
  while (i < h.letters.size() && !out.empty() && out.back().factor == h.letters[i].factor) {
    const auto f = h.letters[i].factor;
    auto p = factors_[f].multiply(out.back().value, h.letters[i].value);
    out.pop_back();
    ++i;
    if (!p.is_identity()) {
      out.push_back(Letter{f, std::move(p)});
      break;
    }
  }
  out.insert(out.end(), h.letters.begin() + static_cast<std::ptrdiff_t>(i), h.letters.end());
  return NormalForm{std::move(out)};
}

Letter FreeProduct::invert_letter(const Letter& l) const {
  return Letter{l.factor, factors_[l.factor].inverse(l.value)};
}

NormalForm FreeProduct::invert(const NormalForm& g) const {
  NormalForm out;
  out.letters.reserve(g.size());
  for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
    out.letters.push_back(invert_letter(*it));
  }
  return out;
}

NormalForm FreeProduct::conjugate(const NormalForm& g, const NormalForm& h) const {
  return multiply(multiply(h, g), invert(h));
}

bool FreeProduct::is_cyclically_reduced(const NormalForm& g) const {
  return g.size() <= 1 || g.letters.front().factor != g.letters.back().factor;
}

bool FreeProduct::is_weakly_reduced(const NormalForm& g) const {
  return g.size() <= 1 || g.letters.front() != invert_letter(g.letters.back());
}

Conjugation FreeProduct::cyclically_reduce(const NormalForm& g) const {
  const auto& w = g.letters;
  std::size_t lo = 0;
  std::size_t hi = w.size();
  // Conjugating by g_1^-1 strips a pair with g_r g_1 = 1.
  while (hi - lo >= 2 && w[lo].factor == w[hi - 1].factor &&
         factors_[w[lo].factor].multiply(w[hi - 1].value, w[lo].value).is_identity()) {
    ++lo;
    --hi;
  }

  NormalForm result;
  std::size_t consumed = lo;
  if (hi - lo >= 2 && w[lo].factor == w[hi - 1].factor) {
    // Weakly reduced with equal end factors: conjugate by g_{s+1} and
    // consolidate the tail into a = g_{r-s} g_{s+1}.
    result.letters.assign(w.begin() + static_cast<std::ptrdiff_t>(lo + 1),
                          w.begin() + static_cast<std::ptrdiff_t>(hi - 1));
    const auto f = w[lo].factor;
    result.letters.push_back(Letter{f, factors_[f].multiply(w[hi - 1].value, w[lo].value)});
    consumed = lo + 1;
  } else {
    result.letters.assign(w.begin() + static_cast<std::ptrdiff_t>(lo),
                          w.begin() + static_cast<std::ptrdiff_t>(hi));
  }

  NormalForm prefix{{w.begin(), w.begin() + static_cast<std::ptrdiff_t>(consumed)}};
  return Conjugation{invert(prefix), std::move(result)};
}

bool FreeProduct::are_conjugate(const NormalForm& g, const NormalForm& h) const {
  auto x = cyclically_reduce(g).result;
  auto y = cyclically_reduce(h).result;
  if (x.size() != y.size()) return false;
  if (x.empty()) return true;
  if (x.size() == 1) {
    const auto& a = x.letters.front();
    const auto& b = y.letters.front();
    return a.factor == b.factor && factors_[a.factor].are_conjugate(a.value, b.value);
  }
  auto rotated = x.letters;
  for (std::size_t i = 0; i < rotated.size(); ++i) {
    if (rotated == y.letters) return true;
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  }
  return false;
}

bool FreeProduct::letter_less(const Letter& x, const Letter& y) const {
  if (x.factor != y.factor) return x.factor < y.factor;
  return factors_[x.factor].less(x.value, y.value);
}

bool FreeProduct::sequence_less(const std::vector<Letter>& x, const std::vector<Letter>& y) const {
  return std::lexicographical_compare(
      x.begin(), x.end(), y.begin(), y.end(),
      [this](const Letter& a, const Letter& b) { return letter_less(a, b); });
}

std::vector<Letter> FreeProduct::least_rotation(const std::vector<Letter>& w) const {
  std::size_t best = 0;
  const auto n = w.size();
  for (std::size_t start = 1; start < n; ++start) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = w[(start + k) % n];
      const auto& b = w[(best + k) % n];
      if (letter_less(a, b)) {
        best = start;
        break;
      }
      if (letter_less(b, a)) break;
    }
  }
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(w[(best + k) % n]);
  return out;
}

ConjugacyClassKey FreeProduct::canonical_class_key(const NormalForm& g) const {
  auto reduced = cyclically_reduce(g).result;
  if (reduced.size() >= 2) return ConjugacyClassKey{NormalForm{least_rotation(reduced.letters)}};
  if (reduced.size() == 1) {
    auto& l = reduced.letters.front();
    l.value = factors_[l.factor].conjugacy_representative(l.value);
  }
  return ConjugacyClassKey{std::move(reduced)};
}

std::int64_t FreeProduct::word_length(const NormalForm& g) const {
  std::int64_t total = 0;
  for (const auto& l : g.letters) total += factors_[l.factor].word_length(l.value);
  return total;
}

std::vector<NormalForm> FreeProduct::symmetric_generators() const {
  std::vector<NormalForm> out;
  for (std::uint8_t f = 0; f < 2; ++f) {
    for (const auto& e : factors_[f].symmetric_generators()) out.push_back(letter(f, e));
  }
  return out;
}

std::string FreeProduct::format(const NormalForm& g) const {
  if (g.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) os << ' ';
    const auto& l = g.letters[i];
    os << factors_[l.factor].format(l.value);
  }
  return os.str();
}

}  // namespace freeprod
