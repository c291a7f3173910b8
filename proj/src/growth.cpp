#include "freeprod/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "freeprod/error.hpp"

namespace freeprod {

namespace {

std::size_t approx_bytes(const NormalForm& g) {
  std::size_t bytes = sizeof(NormalForm) + g.letters.capacity() * sizeof(Letter);
  for (const auto& l : g.letters) bytes += l.value.word.capacity() * sizeof(std::int32_t);
  // One copy in the sphere, one in the hash set plus its node and bucket.
  return 2 * bytes + 48;
}

// Products g * s for every g in frontier[begin, end) and generator s, in order.
std::vector<NormalForm> expand(const FreeProduct& group, const std::vector<NormalForm>& frontier,
                               std::size_t begin, std::size_t end,
                               const std::vector<NormalForm>& gens) {
  std::vector<NormalForm> out;
  out.reserve((end - begin) * gens.size());
  for (std::size_t i = begin; i < end; ++i) {
    for (const auto& s : gens) out.push_back(group.multiply(frontier[i], s));
  }
  return out;
}

double fit_log_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                     double& rms_residual) {
  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    ss += e * e;
  }
  rms_residual = std::sqrt(ss / n);
  return slope;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

NormalForm family_word(const FreeProduct& group, const FamilyGenerators& gens,
                       const std::vector<int>& tuple) {
  const auto a = group.letter(0, gens.a);
  const auto b1 = group.letter(1, gens.b1);
  const auto b2 = group.letter(1, gens.b2);
  NormalForm g;
  for (int m : tuple) g = group.multiply(group.multiply(g, a), m == 1 ? b1 : b2);
  return g;
}

}  // namespace

Ball enumerate_elements(const FreeProduct& group, const EnumerationOptions& options) {
  if (options.max_k < 0) throw InvalidInput("max_k must be nonnegative");
  if (options.max_k > options.depth_cap) {
    throw BudgetExceeded("max_k " + std::to_string(options.max_k) + " exceeds the depth cap " +
                         std::to_string(options.depth_cap));
  }
  const auto gens = group.symmetric_generators();
  const unsigned threads = std::max(1u, options.threads);

  Ball ball;
  std::unordered_set<NormalForm> seen{NormalForm{}};
  ball.spheres.push_back({NormalForm{}});
  std::size_t used = approx_bytes(NormalForm{});

  for (int depth = 1; depth <= options.max_k; ++depth) {
    const auto& frontier = ball.spheres.back();
    std::vector<std::vector<NormalForm>> chunks(threads);
    const std::size_t per = (frontier.size() + threads - 1) / threads;
    if (threads == 1 || frontier.size() < 1024) {
      chunks.assign(1, expand(group, frontier, 0, frontier.size(), gens));
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(frontier.size(), t * per);
        const std::size_t end = std::min(frontier.size(), begin + per);
        pool.emplace_back([&, t, begin, end] { chunks[t] = expand(group, frontier, begin, end, gens); });
      }
      for (auto& th : pool) th.join();
    }

    // Serial merge in chunk order keeps the output independent of scheduling.
    std::vector<NormalForm> sphere;
    std::size_t added = 0;
    for (auto& chunk : chunks) {
      for (auto& g : chunk) {
        if (seen.count(g)) continue;
        added += approx_bytes(g);
        if (used + added > options.memory_budget_bytes) {
          for (const auto& h : sphere) seen.erase(h);
          ball.truncated = true;
          ball.truncation_reason = "memory budget exhausted while building depth " +
                                   std::to_string(depth) + "; complete through depth " +
                                   std::to_string(depth - 1);
          return ball;
        }
        seen.insert(g);
        sphere.push_back(std::move(g));
      }
    }
    used += added;
    ball.spheres.push_back(std::move(sphere));
  }
  return ball;
}

GrowthTable count_conjugacy_classes(const FreeProduct& group, const Ball& ball) {
  GrowthTable table;
  table.truncated = ball.truncated;
  table.truncation_reason = ball.truncation_reason;
  std::unordered_set<ConjugacyClassKey> classes;
  std::uint64_t elements = 0;
  for (std::size_t k = 0; k < ball.spheres.size(); ++k) {
    for (const auto& g : ball.spheres[k]) classes.insert(group.canonical_class_key(g));
    elements += ball.spheres[k].size();
    table.rows.push_back({static_cast<int>(k), elements, classes.size()});
  }
  return table;
}

GrowthTable count_conjugacy_classes(const FreeProduct& group, const EnumerationOptions& options) {
  return count_conjugacy_classes(group, enumerate_elements(group, options));
}

GrowthRateEstimate growth_rate_estimate(const GrowthTable& table) {
  if (table.rows.size() < 4) throw InvalidInput("growth rate estimate needs at least 4 rows");
  std::vector<double> ks;
  std::vector<double> log_g;
  std::vector<double> log_f;
  for (std::size_t i = table.rows.size() / 2; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    ks.push_back(row.k);
    log_g.push_back(std::log(static_cast<double>(row.elements)));
    log_f.push_back(std::log(static_cast<double>(row.classes)));
  }
  GrowthRateEstimate est;
  est.lambda_elements = std::exp(fit_log_slope(ks, log_g, est.residual_elements));
  est.lambda_classes = std::exp(fit_log_slope(ks, log_f, est.residual_classes));
  est.first_k = static_cast<int>(ks.front());
  est.last_k = static_cast<int>(ks.back());
  return est;
}

FamilyGenerators choose_family_generators(const FreeProduct& group,
                                          const std::optional<FactorElement>& b2_override) {
  const auto& g1 = group.factor(0);
  const auto& g2 = group.factor(1);
  FamilyGenerators out;
  out.a = g1.generators().front().element;
  out.b1 = g2.generators().front().element;

  if (b2_override) {
    g2.check(*b2_override);
    if (b2_override->is_identity() || *b2_override == out.b1) {
      throw InvalidInput("b2 override must be a non-identity element different from b1");
    }
    out.b2 = *b2_override;
    out.b2_rule = "override";
    return out;
  }

  auto square = g2.multiply(out.b1, out.b1);
  if (!square.is_identity()) {
    out.b2 = std::move(square);
    out.b2_rule = "square";
    return out;
  }
  for (const auto& gen : g2.generators()) {
    if (gen.element != out.b1) {
      out.b2 = gen.element;
      out.b2_rule = "other_generator";
      return out;
    }
  }
  if (g1.order() == 2 && g2.order() == 2) {
    throw NotApplicable(
        "both factors have order 2 (infinite dihedral group): b1^2 = 1 and E2 - {b1} is empty");
  }
  throw NotApplicable("b1^2 = 1 and E2 - {b1} is empty; list a factor with at least three "
                      "elements second");
}

WordFamily gm_family(const FreeProduct& group, int r, const std::optional<FactorElement>& b2_override) {
  if (r < 1 || r > kMaxFamilyLength) {
    throw InvalidInput("family length r must be in [1, " + std::to_string(kMaxFamilyLength) + "]");
  }
  WordFamily family;
  family.r = r;
  family.generators = choose_family_generators(group, b2_override);
  std::unordered_set<ConjugacyClassKey> keys;
  for (auto& tuple : necklace_representatives(r)) {
    auto word = family_word(group, family.generators, tuple);
    keys.insert(group.canonical_class_key(word));
    family.representatives.push_back({std::move(tuple), std::move(word)});
  }
  family.pairwise_nonconjugate = keys.size() == family.representatives.size();
  return family;
}

std::uint64_t necklace_count(int r) {
  if (r < 1 || r > 60) throw InvalidInput("necklace length must be in [1, 60]");
  const auto n = static_cast<std::uint64_t>(r);
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) sum += euler_phi(d) * (std::uint64_t{1} << (n / d));
  }
  return sum / n;
}

std::vector<std::vector<int>> necklace_representatives(int r) {
  if (r < 1 || r > kMaxFamilyLength) {
    throw InvalidInput("necklace enumeration length must be in [1, " +
                       std::to_string(kMaxFamilyLength) + "]");
  }
  std::vector<std::vector<int>> out;
  const std::uint32_t total = 1u << r;
  std::vector<int> tuple(static_cast<std::size_t>(r));
  for (std::uint32_t bits = 0; bits < total; ++bits) {
    for (int j = 0; j < r; ++j) tuple[static_cast<std::size_t>(j)] = (bits >> (r - 1 - j)) & 1u ? 2 : 1;
    bool minimal = true;
    auto rotated = tuple;
    for (int s = 1; s < r && minimal; ++s) {
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
      if (rotated < tuple) minimal = false;
    }
    if (minimal) out.push_back(tuple);
  }
  return out;
}

FreeSubgroupCheck verify_free_subgroup(const FreeProduct& group, int depth,
                                       const std::optional<FactorElement>& b2_override) {
  if (depth < 1 || depth > kMaxFreeSubgroupDepth) {
    throw InvalidInput("free subgroup depth must be in [1, " +
                       std::to_string(kMaxFreeSubgroupDepth) + "]");
  }
  const auto gens = choose_family_generators(group, b2_override);
  const auto a = group.letter(0, gens.a);
  const auto x = group.multiply(a, group.letter(1, gens.b1));
  const auto y = group.multiply(a, group.letter(1, gens.b2));
  const std::vector<std::pair<int, NormalForm>> alphabet = {
      {1, x}, {-1, group.invert(x)}, {2, y}, {-2, group.invert(y)}};

  FreeSubgroupCheck check;
  check.depth = depth;
  std::unordered_map<NormalForm, std::vector<int>> images{{NormalForm{}, {}}};
  std::vector<std::pair<std::vector<int>, NormalForm>> level{{{}, NormalForm{}}};
  check.words_checked = 1;
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::pair<std::vector<int>, NormalForm>> next;
    for (const auto& [word, image] : level) {
      for (const auto& [sym, gen] : alphabet) {
        if (!word.empty() && word.back() == -sym) continue;
        auto w = word;
        w.push_back(sym);
        auto img = group.multiply(image, gen);
        ++check.words_checked;
        auto [it, inserted] = images.emplace(img, w);
        if (!inserted) {
          check.free = false;
          check.witness = w;
          check.collides_with = it->second;
          return check;
        }
        next.emplace_back(std::move(w), std::move(img));
      }
    }
    level = std::move(next);
  }
  return check;
}

FreeProduct cyclic_free_product(std::int64_t n, std::int64_t m) {
  return FreeProduct(cyclic_spec(n, "a"), cyclic_spec(m, "b"));
}

DihedralCheck verify_dihedral_relation() {
  const auto group = cyclic_free_product(2, 2);
  const auto a = group.letter(0, FactorElement::id(1));
  const auto b = group.letter(1, FactorElement::id(1));
  const auto t = group.multiply(a, b);
  const auto t2 = group.multiply(t, t);
  const auto a_inv = group.invert(a);
  auto conj = [&](const NormalForm& g) { return group.multiply(group.multiply(a, g), a_inv); };

  DihedralCheck check;
  check.inverts_t = conj(t) == group.invert(t);
  check.inverts_t_squared = conj(t2) == group.invert(t2);
  check.fixes_identity = conj(NormalForm{}).empty();
  return check;
}

}  // namespace freeprod
