#include "freeprod/factor_group.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

#include "freeprod/error.hpp"

namespace freeprod {

namespace {

constexpr std::int64_t kMaxFiniteOrder = 10'000'000;
constexpr std::int64_t kExhaustiveAssociativityLimit = 64;
constexpr int kSampledAssociativityTriples = 10'000;

// Order key for free-group letters: x1 < x1^-1 < x2 < x2^-1 < ...
std::int64_t free_letter_key(std::int32_t l) {
  return 2 * (static_cast<std::int64_t>(std::abs(l)) - 1) + (l < 0 ? 1 : 0);
}

bool free_word_less(const std::vector<std::int32_t>& x, const std::vector<std::int32_t>& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return std::lexicographical_compare(
      x.begin(), x.end(), y.begin(), y.end(),
      [](std::int32_t a, std::int32_t b) { return free_letter_key(a) < free_letter_key(b); });
}

std::vector<std::int32_t> free_inverse(const std::vector<std::int32_t>& w) {
  std::vector<std::int32_t> out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

// Strips inverse pairs from both ends of a freely reduced word.
std::vector<std::int32_t> free_cyclic_core(std::vector<std::int32_t> w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return {w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi)};
}

std::vector<std::int32_t> least_rotation(const std::vector<std::int32_t>& w) {
  std::vector<std::int32_t> best = w;
  std::vector<std::int32_t> cur = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (free_word_less(cur, best)) best = cur;
  }
  return best;
}

std::string power_token(const std::string& name, std::int64_t k) {
  if (k == 1) return name;
  return name + "^" + std::to_string(k);
}

}  // namespace

std::string to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::FiniteTable: return "finite_table";
    case FactorKind::FiniteCyclic: return "finite_cyclic";
    case FactorKind::InfiniteCyclic: return "infinite_cyclic";
    case FactorKind::Free: return "free";
  }
  return "unknown";
}

std::size_t hash_value(const FactorElement& x) {
  std::size_t h = std::hash<std::int64_t>{}(x.value);
  for (auto l : x.word) h = h * 1000003u ^ std::hash<std::int32_t>{}(l);
  return h;
}

std::vector<std::int32_t> free_reduce(std::vector<std::int32_t> w) {
  std::vector<std::int32_t> out;
  out.reserve(w.size());
  for (auto l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

FactorGroup::FactorGroup(FactorGroupSpec spec) : spec_(std::move(spec)) {
  switch (spec_.kind) {
    case FactorKind::FiniteCyclic: {
      if (spec_.order < 2) throw InvalidInput("finite_cyclic order must be at least 2");
      if (spec_.order > kMaxFiniteOrder) throw InvalidInput("finite_cyclic order too large");
      break;
    }
    case FactorKind::FiniteTable:
      validate_table();
      break;
    case FactorKind::InfiniteCyclic: {
      if (spec_.generators.size() != 1) {
        throw InvalidInput("infinite_cyclic takes exactly one generator");
      }
      auto& g = spec_.generators.front();
      if (g.element.is_identity()) g.element = FactorElement::id(1);
      if (g.element != FactorElement::id(1)) {
        throw InvalidInput("infinite_cyclic generator is fixed to t^1");
      }
      break;
    }
    case FactorKind::Free: {
      if (spec_.rank < 1) throw InvalidInput("free rank must be positive");
      if (spec_.generators.size() != static_cast<std::size_t>(spec_.rank)) {
        throw InvalidInput("free group needs one generator name per rank");
      }
      for (int i = 0; i < spec_.rank; ++i) {
        auto& g = spec_.generators[static_cast<std::size_t>(i)];
        FactorElement standard = FactorElement::free_word({i + 1});
        if (g.element.is_identity()) g.element = standard;
        if (g.element != standard) throw InvalidInput("free generators are fixed to x1..x_rank");
      }
      break;
    }
  }

  if (spec_.generators.empty()) throw InvalidInput("generator list must be nonempty");
  for (const auto& g : spec_.generators) {
    if (g.name.empty()) throw InvalidInput("generator names must be nonempty");
    check(g.element);
    if (g.element.is_identity()) throw InvalidInput("generator '" + g.name + "' is the identity");
  }
  for (std::size_t i = 0; i < spec_.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < spec_.generators.size(); ++j) {
      if (spec_.generators[i].name == spec_.generators[j].name) {
        throw InvalidInput("duplicate generator name '" + spec_.generators[i].name + "'");
      }
    }
  }

  for (const auto& g : spec_.generators) {
    for (const auto& e : {g.element, inverse(g.element)}) {
      if (std::find(sym_generators_.begin(), sym_generators_.end(), e) == sym_generators_.end()) {
        sym_generators_.push_back(e);
      }
    }
  }

  if (is_finite()) build_finite_tables();
}

void FactorGroup::validate_table() {
  const auto n = static_cast<std::int64_t>(spec_.table.size());
  if (n < 2) throw InvalidInput("finite_table must have at least 2 elements");
  if (n > 4096) throw InvalidInput("finite_table larger than 4096 elements");
  if (!spec_.element_names.empty() && static_cast<std::int64_t>(spec_.element_names.size()) != n) {
    throw InvalidInput("finite_table element list does not match table size");
  }
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& row = spec_.table[static_cast<std::size_t>(i)];
    if (static_cast<std::int64_t>(row.size()) != n) throw InvalidInput("finite_table is not square");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::int64_t j = 0; j < n; ++j) {
      auto v = row[static_cast<std::size_t>(j)];
      if (v < 0 || v >= n) throw InvalidInput("finite_table entry out of range");
      if (seen[static_cast<std::size_t>(v)]) {
        throw InvalidInput("finite_table row " + std::to_string(i) + " is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (table_product(0, i) != i || table_product(i, 0) != i) {
      throw InvalidInput("element 0 is not a two-sided identity");
    }
  }
  // Latin rows plus identity give right inverses; check they are two-sided.
  for (std::int64_t i = 0; i < n; ++i) {
    bool ok = false;
    for (std::int64_t j = 0; j < n && !ok; ++j) {
      ok = table_product(i, j) == 0 && table_product(j, i) == 0;
    }
    if (!ok) throw InvalidInput("element " + std::to_string(i) + " has no two-sided inverse");
  }
  auto assoc = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    if (table_product(table_product(x, y), z) != table_product(x, table_product(y, z))) {
      throw InvalidInput("finite_table is not associative at (" + std::to_string(x) + ", " +
                         std::to_string(y) + ", " + std::to_string(z) + ")");
    }
  };
  if (n <= kExhaustiveAssociativityLimit) {
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y)
        for (std::int64_t z = 0; z < n; ++z) assoc(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
    for (int i = 0; i < kSampledAssociativityTriples; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
}

void FactorGroup::build_finite_tables() {
  const auto n = finite_order();
  inverse_.assign(static_cast<std::size_t>(n), 0);
  for (std::int64_t x = 0; x < n; ++x) {
    if (spec_.kind == FactorKind::FiniteCyclic) {
      inverse_[static_cast<std::size_t>(x)] = (n - x) % n;
    } else {
      for (std::int64_t y = 0; y < n; ++y) {
        if (table_product(x, y) == 0) {
          inverse_[static_cast<std::size_t>(x)] = y;
          break;
        }
      }
    }
  }

  // Cayley-graph BFS from the identity gives word lengths and checks generation.
  length_.assign(static_cast<std::size_t>(n), -1);
  length_[0] = 0;
  std::deque<std::int64_t> queue{0};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto& g : sym_generators_) {
      auto y = table_product(x, g.value);
      if (length_[static_cast<std::size_t>(y)] < 0) {
        length_[static_cast<std::size_t>(y)] = length_[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  if (std::any_of(length_.begin(), length_.end(), [](auto l) { return l < 0; })) {
    throw InvalidInput("generators do not generate the " + to_string(spec_.kind) + " group");
  }

  class_rep_.assign(static_cast<std::size_t>(n), 0);
  for (std::int64_t x = 0; x < n; ++x) {
    if (spec_.kind == FactorKind::FiniteCyclic) {
      class_rep_[static_cast<std::size_t>(x)] = x;
      continue;
    }
    std::int64_t best = x;
    for (std::int64_t h = 0; h < n; ++h) {
      auto c = table_product(table_product(h, x), inverse_[static_cast<std::size_t>(h)]);
      best = std::min(best, c);
    }
    class_rep_[static_cast<std::size_t>(x)] = best;
  }
}

std::int64_t FactorGroup::finite_order() const {
  return spec_.kind == FactorKind::FiniteCyclic ? spec_.order
                                                : static_cast<std::int64_t>(spec_.table.size());
}

std::int64_t FactorGroup::table_product(std::int64_t x, std::int64_t y) const {
  if (spec_.kind == FactorKind::FiniteCyclic) return (x + y) % spec_.order;
  return spec_.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
}

std::optional<std::int64_t> FactorGroup::order() const {
  if (!is_finite()) return std::nullopt;
  return finite_order();
}

bool FactorGroup::is_valid(const FactorElement& x) const {
  switch (spec_.kind) {
    case FactorKind::FiniteTable:
    case FactorKind::FiniteCyclic:
      return x.word.empty() && x.value >= 0 && x.value < finite_order();
    case FactorKind::InfiniteCyclic:
      return x.word.empty();
    case FactorKind::Free: {
      if (x.value != 0) return false;
      for (std::size_t i = 0; i < x.word.size(); ++i) {
        auto l = x.word[i];
        if (l == 0 || std::abs(l) > spec_.rank) return false;
        if (i > 0 && x.word[i - 1] == -l) return false;
      }
      return true;
    }
  }
  return false;
}

void FactorGroup::check(const FactorElement& x) const {
  if (!is_valid(x)) {
    throw InvalidInput("element " + format(x) + " is not valid for " + to_string(spec_.kind) +
                       " factor");
  }
}

FactorElement FactorGroup::multiply(const FactorElement& x, const FactorElement& y) const {
  check(x);
  check(y);
  switch (spec_.kind) {
    case FactorKind::FiniteTable:
    case FactorKind::FiniteCyclic:
      return FactorElement::id(table_product(x.value, y.value));
    case FactorKind::InfiniteCyclic:
      return FactorElement::id(x.value + y.value);
    case FactorKind::Free: {
      std::vector<std::int32_t> w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      return FactorElement::free_word(free_reduce(std::move(w)));
    }
  }
  return {};
}

FactorElement FactorGroup::inverse(const FactorElement& x) const {
  switch (spec_.kind) {
    case FactorKind::FiniteCyclic:
      return FactorElement::id((spec_.order - x.value) % spec_.order);
    case FactorKind::FiniteTable:
      if (!inverse_.empty()) return FactorElement::id(inverse_[static_cast<std::size_t>(x.value)]);
      for (std::int64_t y = 0; y < finite_order(); ++y) {
        if (table_product(x.value, y) == 0) return FactorElement::id(y);
      }
      throw InvalidInput("element has no inverse");
    case FactorKind::InfiniteCyclic:
      return FactorElement::id(-x.value);
    case FactorKind::Free:
      return FactorElement::free_word(free_inverse(x.word));
  }
  return {};
}

FactorElement FactorGroup::power(const FactorElement& x, std::int64_t k) const {
  check(x);
  if (spec_.kind == FactorKind::InfiniteCyclic) return FactorElement::id(x.value * k);
  FactorElement base = k < 0 ? inverse(x) : x;
  auto e = k < 0 ? -k : k;
  if (auto n = order()) e %= *n;  // x^|G| = 1
  FactorElement out;
  while (e > 0) {
    if (e & 1) out = multiply(out, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return out;
}

std::int64_t FactorGroup::word_length(const FactorElement& x) const {
  check(x);
  switch (spec_.kind) {
    case FactorKind::FiniteTable:
    case FactorKind::FiniteCyclic:
      return length_[static_cast<std::size_t>(x.value)];
    case FactorKind::InfiniteCyclic:
      return x.value < 0 ? -x.value : x.value;
    case FactorKind::Free:
      return static_cast<std::int64_t>(x.word.size());
  }
  return 0;
}

bool FactorGroup::are_conjugate(const FactorElement& x, const FactorElement& y) const {
  return conjugacy_representative(x) == conjugacy_representative(y);
}

FactorElement FactorGroup::conjugacy_representative(const FactorElement& x) const {
  check(x);
  switch (spec_.kind) {
    case FactorKind::FiniteTable:
    case FactorKind::FiniteCyclic:
      return FactorElement::id(class_rep_[static_cast<std::size_t>(x.value)]);
    case FactorKind::InfiniteCyclic:
      return x;
    case FactorKind::Free:
      return FactorElement::free_word(least_rotation(free_cyclic_core(x.word)));
  }
  return x;
}

bool FactorGroup::less(const FactorElement& x, const FactorElement& y) const {
  switch (spec_.kind) {
    case FactorKind::FiniteTable:
    case FactorKind::FiniteCyclic:
      return x.value < y.value;
    case FactorKind::InfiniteCyclic: {
      auto ax = x.value < 0 ? -x.value : x.value;
      auto ay = y.value < 0 ? -y.value : y.value;
      if (ax != ay) return ax < ay;
      return x.value > y.value;  // t^n before t^-n
    }
    case FactorKind::Free:
      return free_word_less(x.word, y.word);
  }
  return false;
}

std::vector<FactorElement> FactorGroup::elements() const {
  if (!is_finite()) throw InvalidInput("cannot list elements of an infinite factor");
  std::vector<FactorElement> out;
  for (std::int64_t x = 0; x < finite_order(); ++x) out.push_back(FactorElement::id(x));
  return out;
}

std::string FactorGroup::format(const FactorElement& x) const {
  if (x.is_identity()) return "1";
  switch (spec_.kind) {
    case FactorKind::FiniteCyclic:
      for (const auto& g : spec_.generators) {
        if (g.element.value == 1) return power_token(g.name, x.value);
      }
      break;
    case FactorKind::FiniteTable:
      if (x.value >= 0 && static_cast<std::size_t>(x.value) < spec_.element_names.size()) {
        return spec_.element_names[static_cast<std::size_t>(x.value)];
      }
      break;
    case FactorKind::InfiniteCyclic:
      if (!spec_.generators.empty()) return power_token(spec_.generators.front().name, x.value);
      break;
    case FactorKind::Free: {
      std::ostringstream os;
      for (std::size_t i = 0; i < x.word.size(); ++i) {
        auto l = x.word[i];
        auto idx = static_cast<std::size_t>(std::abs(l) - 1);
        std::string name =
            idx < spec_.generators.size() ? spec_.generators[idx].name : "x" + std::to_string(idx + 1);
        if (i) os << ' ';
        os << power_token(name, l < 0 ? -1 : 1);
      }
      return os.str();
    }
  }
  // Finite factor without a direct name: spell a geodesic word by descending
  // the length table, so the text parses back to the same element.
  std::vector<std::pair<const std::string*, std::int64_t>> tokens;
  FactorElement cur = x;
  while (!cur.is_identity()) {
    const auto len = word_length(cur);
    bool stepped = false;
    for (const auto& g : spec_.generators) {
      for (std::int64_t sign : {1, -1}) {
        const auto step = sign > 0 ? g.element : inverse(g.element);
        const auto prev = multiply(cur, inverse(step));
        if (word_length(prev) != len - 1) continue;
        if (!tokens.empty() && tokens.back().first == &g.name && (tokens.back().second > 0) == (sign > 0)) {
          tokens.back().second += sign;
        } else {
          tokens.emplace_back(&g.name, sign);
        }
        cur = prev;
        stepped = true;
        break;
      }
      if (stepped) break;
    }
    if (!stepped) throw std::logic_error("FactorGroup::format: length table is inconsistent");
  }
  std::string out;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += power_token(*it->first, it->second);
  }
  return out;
}

FactorGroupSpec cyclic_spec(std::int64_t n, std::string gen) {
  FactorGroupSpec s;
  s.kind = FactorKind::FiniteCyclic;
  s.order = n;
  s.generators.push_back({std::move(gen), FactorElement::id(1)});
  return s;
}

FactorGroupSpec infinite_cyclic_spec(std::string gen) {
  FactorGroupSpec s;
  s.kind = FactorKind::InfiniteCyclic;
  s.generators.push_back({std::move(gen), FactorElement::id(1)});
  return s;
}

FactorGroupSpec free_spec(std::vector<std::string> gens) {
  FactorGroupSpec s;
  s.kind = FactorKind::Free;
  s.rank = static_cast<int>(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    s.generators.push_back({std::move(gens[i]), FactorElement::free_word({static_cast<std::int32_t>(i + 1)})});
  }
  return s;
}

FactorGroupSpec symmetric3_spec(std::string s, std::string r) {
  // Permutations of {0,1,2} in one-line notation; composition (p*q)(i) = p(q(i)).
  const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
  FactorGroupSpec spec;
  spec.kind = FactorKind::FiniteTable;
  spec.element_names = {"e", "r1", "r2", "t01", "t02", "t12"};
  spec.table.assign(6, std::vector<std::int64_t>(6, 0));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)] = perms[i][static_cast<std::size_t>(perms[j][static_cast<std::size_t>(k)])];
      auto it = std::find(perms.begin(), perms.end(), c);
      spec.table[i][j] = it - perms.begin();
    }
  }
  spec.generators.push_back({std::move(s), FactorElement::id(3)});
  spec.generators.push_back({std::move(r), FactorElement::id(1)});
  return spec;
}

}  // namespace freeprod
