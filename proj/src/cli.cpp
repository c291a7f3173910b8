#include "freeprod/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "freeprod/error.hpp"
#include "freeprod/geodesic_bounds.hpp"
#include "freeprod/group_ring.hpp"
#include "freeprod/growth.hpp"
#include "freeprod/spec_io.hpp"

namespace freeprod::cli {

using nlohmann::json;

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

struct Options {
  std::string spec_file;
  std::string descriptor_file;
  std::string word;
  std::string word2;
  std::string emit = "json";
  std::string b2;
  std::string terms;
  std::string L, L1, t, lambda;
  int max_k = 0;
  int r = 0;
  int depth = 0;
  int k = 0;
  std::int64_t cover_order = 0;
  std::int64_t modulus = 0;
  std::int64_t curve = 0;
  std::int64_t random = 0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t memory_mb = 0;
  bool list = false;
  bool timing = false;
};

struct Result {
  json inputs = json::object();
  json outputs = json::object();
  json rules;
  std::string csv;  // replaces the JSON report when set
  bool budget_exceeded = false;
};

std::size_t memory_budget_bytes(const Options& o) {
  std::size_t mb = o.memory_mb;
  if (mb == 0) {
    if (const char* env = std::getenv("FREEPROD_MAX_MEMORY_MB")) {
      char* end = nullptr;
      const auto v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0' || v == 0) {
        throw InvalidInput("FREEPROD_MAX_MEMORY_MB must be a positive integer");
      }
      mb = static_cast<std::size_t>(v);
    } else {
      mb = kDefaultMemoryBudgetMb;
    }
  }
  return mb << 20;
}

std::optional<FactorElement> b2_override(const FreeProduct& group, const Options& o) {
  if (o.b2.empty()) return std::nullopt;
  return parse_factor_element(group, 1, o.b2);
}

Result cmd_reduce(const Options& o) {
  const auto group = load_group_spec(o.spec_file);
  const auto g = parse_word(group, o.word);
  const auto red = group.cyclically_reduce(g);
  Result res;
  res.inputs = {{"spec", o.spec_file}, {"word", o.word}};
  res.outputs = {{"normal_form", normal_form_json(group, g)},
                 {"cyclically_reduced", normal_form_json(group, red.result)},
                 {"conjugator", normal_form_json(group, red.conjugator)},
                 {"word_length", group.word_length(g)},
                 {"length", g.size()},
                 {"is_cyclically_reduced", group.is_cyclically_reduced(g)},
                 {"is_weakly_reduced", group.is_weakly_reduced(g)}};
  return res;
}

Result cmd_conjugate_test(const Options& o) {
  const auto group = load_group_spec(o.spec_file);
  const auto g = parse_word(group, o.word);
  const auto h = parse_word(group, o.word2);
  Result res;
  res.inputs = {{"spec", o.spec_file}, {"word1", o.word}, {"word2", o.word2}};
  res.outputs = {{"conjugate", group.are_conjugate(g, h)},
                 {"class_key1", normal_form_json(group, group.canonical_class_key(g).form)},
                 {"class_key2", normal_form_json(group, group.canonical_class_key(h).form)}};
  return res;
}

Result cmd_growth(const Options& o) {
  const auto group = load_group_spec(o.spec_file);
  EnumerationOptions opts;
  opts.max_k = o.max_k;
  opts.threads = o.threads;
  opts.memory_budget_bytes = memory_budget_bytes(o);
  const auto table = count_conjugacy_classes(group, opts);

  Result res;
  res.budget_exceeded = table.truncated;
  res.inputs = {{"spec", o.spec_file}, {"max_k", o.max_k}};
  json rows = json::array();
  json checks = json::array();
  std::string csv = "k,G,F,family_bound\n";
  for (const auto& row : table.rows) {
    rows.push_back({{"k", row.k}, {"G", row.elements}, {"F", row.classes}});
    std::string bound_text;
    if (row.k > 0 && row.k % 3 == 0) {
      const int r = row.k / 3;
      const Rational bound = Rational(std::uint64_t{1} << r) / r;
      bound_text = to_string(bound);
      checks.push_back({{"r", r},
                        {"k", row.k},
                        {"F", row.classes},
                        {"bound", bound_text},
                        {"holds", Rational(row.classes) >= bound}});
    }
    csv += std::to_string(row.k) + "," + std::to_string(row.elements) + "," +
           std::to_string(row.classes) + "," + bound_text + "\n";
  }
  res.outputs = {{"rows", rows}, {"family_bound_checks", checks}, {"truncated", table.truncated}};
  if (table.truncated) res.outputs["truncation_reason"] = table.truncation_reason;
  if (table.rows.size() >= 4) {
    const auto est = growth_rate_estimate(table);
    res.outputs["growth_rate"] = {{"lambda_elements", round12(est.lambda_elements)},
                                  {"lambda_classes", round12(est.lambda_classes)},
                                  {"residual_elements", round12(est.residual_elements)},
                                  {"residual_classes", round12(est.residual_classes)},
                                  {"fit_k", {est.first_k, est.last_k}}};
  }
  if (o.emit == "csv") res.csv = std::move(csv);
  return res;
}

Result cmd_necklaces(const Options& o) {
  Result res;
  res.inputs = {{"r", o.r}};
  res.outputs = {{"count", necklace_count(o.r)},
                 {"lower_bound", to_string(Rational(std::uint64_t{1} << std::min(o.r, 62)) / o.r)}};
  if (o.list) res.outputs["representatives"] = necklace_representatives(o.r);
  return res;
}

Result cmd_gm_family(const Options& o) {
  const auto group = load_group_spec(o.spec_file);
  const auto family = gm_family(group, o.r, b2_override(group, o));
  Result res;
  res.inputs = {{"spec", o.spec_file}, {"r", o.r}};
  if (!o.b2.empty()) res.inputs["b2"] = o.b2;
  json reps = json::array();
  for (const auto& m : family.representatives) {
    reps.push_back({{"tuple", m.tuple},
                    {"word", normal_form_json(group, m.word)},
                    {"word_length", group.word_length(m.word)},
                    {"cyclically_reduced", group.is_cyclically_reduced(m.word)}});
  }
  const auto& gens = family.generators;
  res.outputs = {{"a", group.factor(0).format(gens.a)},
                 {"b1", group.factor(1).format(gens.b1)},
                 {"b2", group.factor(1).format(gens.b2)},
                 {"b2_rule", gens.b2_rule},
                 {"count", family.representatives.size()},
                 {"necklace_count", necklace_count(o.r)},
                 {"pairwise_nonconjugate", family.pairwise_nonconjugate},
                 {"representatives", reps}};
  return res;
}

// Words in x = a b1 (symbol 1) and y = a b2 (symbol 2); negatives are inverses.
std::string xy_word(const std::vector<int>& w) {
  std::string out;
  for (int s : w) {
    if (!out.empty()) out += ' ';
    out += std::abs(s) == 1 ? 'x' : 'y';
    if (s < 0) out += "^-1";
  }
  return out.empty() ? "1" : out;
}

Result cmd_free_subgroup(const Options& o) {
  const auto group = load_group_spec(o.spec_file);
  const auto check = verify_free_subgroup(group, o.depth, b2_override(group, o));
  Result res;
  res.inputs = {{"spec", o.spec_file}, {"depth", o.depth}};
  res.outputs = {{"free", check.free}, {"words_checked", check.words_checked}};
  if (!check.free) {
    res.outputs["witness"] = check.witness;
    res.outputs["collides_with"] = check.collides_with;
    res.outputs["relation"] = xy_word(check.witness) + " = " + xy_word(check.collides_with);
  }
  return res;
}

Result cmd_dihedral(const Options&) {
  const auto check = verify_dihedral_relation();
  Result res;
  res.outputs = {{"holds", check.holds()},
                 {"a_t_ainv_eq_tinv", check.inverts_t},
                 {"a_t2_ainv_eq_t-2", check.inverts_t_squared},
                 {"a_t0_ainv_eq_1", check.fixes_identity}};
  return res;
}

json certificate_json(const NonUnitCertificate& c) {
  return {{"product", c.product.to_string()},
          {"low_term", {{"coefficient", c.low_coeff.str()}, {"exponent", c.low_exponent}}},
          {"high_term", {{"coefficient", c.high_coeff.str()}, {"exponent", c.high_exponent}}},
          {"is_one", c.product.is_one()}};
}

Result cmd_laurent(const Options& o) {
  const auto ring = o.modulus == 0 ? CoefficientRing::integers() : CoefficientRing::mod(o.modulus);
  Result res;
  res.inputs = {{"modulus", o.modulus}};
  if (o.random > 0) {
    res.inputs["random"] = o.random;
    res.inputs["seed"] = o.seed;
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> span(0, 8);
    std::uniform_int_distribution<int> shift(-8, 8);
    std::int64_t failures = 0;
    for (std::int64_t i = 0; i < o.random; ++i) {
      LaurentPoly q(ring);
      while (q.is_zero()) {
        const int lo = shift(rng);
        const int width = span(rng);
        for (int e = lo; e <= lo + width; ++e) q.add_term(coeff(rng), e);
      }
      try {
        (void)check_u_minus_1_times_q_not_one(q);
      } catch (const std::logic_error&) {
        ++failures;
      }
    }
    res.outputs = {{"samples", o.random}, {"failures", failures}};
    return res;
  }
  res.inputs["terms"] = o.terms;
  const auto q = parse_laurent_terms(ring, o.terms);
  res.outputs = {{"q", q.to_string()}, {"certificate", certificate_json(check_u_minus_1_times_q_not_one(q))}};
  return res;
}

Result cmd_classify(const Options& o) {
  const auto doc = load_descriptor(o.descriptor_file);
  const auto c = doc.is_connected_sum ? classify_connected_sum(doc.connected_sum)
                                      : classify_three_manifold(doc.manifold);
  Result res;
  res.inputs = {{"descriptor", o.descriptor_file}};
  res.outputs = classification_json(c);
  res.rules = json::array();
  for (const auto& step : c.trace) res.rules.push_back(step.rule);
  return res;
}

Result cmd_bound(const Options& o) {
  Result res;
  const bool polynomial = o.k != 0 || o.cover_order != 0 || !o.lambda.empty();
  const bool exponential = !o.L.empty() || !o.L1.empty();
  if (polynomial == exponential) {
    throw InvalidInput("bound needs either --L --L1 (--t | --curve) or --k --r --lambda --t");
  }
  if (polynomial) {
    if (o.t.empty() || o.lambda.empty()) throw InvalidInput("--t and --lambda are required");
    const auto value =
        polynomial_lower_bound(o.k, o.cover_order, parse_rational(o.lambda), parse_rational(o.t));
    res.inputs = {{"k", o.k}, {"r", o.cover_order}, {"lambda", o.lambda}, {"t", o.t}};
    res.outputs = {{"kind", "polynomial"},
                   {"bound", to_string(value)},
                   {"bound_approx", round12(to_double(value))}};
    return res;
  }
  if (o.L.empty() || o.L1.empty()) throw InvalidInput("--L and --L1 are required");
  const MetricParams params{parse_rational(o.L), parse_rational(o.L1)};
  res.inputs = {{"L", o.L}, {"L1", o.L1}};
  if (o.curve > 0) {
    res.inputs["curve"] = o.curve;
    json points = json::array();
    std::string csv = "t,bound\n";
    char buf[64];
    for (const auto& p : exponential_bound_curve(params, o.curve)) {
      points.push_back({{"t", to_string(p.t)}, {"bound", to_string(p.bound)}});
      std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", to_double(p.t), to_double(p.bound));
      csv += buf;
    }
    res.outputs = {{"kind", "exponential_curve"}, {"points", points}};
    if (o.emit == "csv") res.csv = std::move(csv);
    return res;
  }
  if (o.t.empty()) throw InvalidInput("--t or --curve is required");
  res.inputs["t"] = o.t;
  const auto b = exponential_lower_bound(params, parse_rational(o.t));
  res.outputs = {{"kind", "exponential"},
                 {"r", b.r},
                 {"below_range", b.below_range},
                 {"bound", to_string(b.value)},
                 {"bound_approx", round12(to_double(b.value))}};
  return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in free products of two groups", "freeprod"};
  app.require_subcommand(1);
  Options o;
  std::function<Result(const Options&)> handler;
  std::string command;

  app.add_flag("--timing", o.timing, "Include elapsed time in the report");

  auto sub = [&](const char* name, const char* help, Result (*fn)(const Options&)) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&, name, fn] {
      command = name;
      handler = fn;
    });
    return s;
  };
  auto spec_opt = [&](CLI::App* s) {
    s->add_option("--spec", o.spec_file, "Group-spec JSON file")->required()->check(CLI::ExistingFile);
  };
  auto emit_opt = [&](CLI::App* s) {
    s->add_option("--emit", o.emit, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* reduce = sub("reduce", "Normal form and cyclic reduction of a word", cmd_reduce);
  spec_opt(reduce);
  reduce->add_option("--word", o.word, "Word, e.g. \"b a b^-1\"")->required();

  auto* conj = sub("conjugate-test", "Decide whether two words are conjugate", cmd_conjugate_test);
  spec_opt(conj);
  conj->add_option("--word1", o.word, "First word")->required();
  conj->add_option("--word2", o.word2, "Second word")->required();

  auto* growth = sub("growth", "Element and conjugacy-class counts by word length", cmd_growth);
  spec_opt(growth);
  growth->add_option("--max-k", o.max_k, "Largest word length")->required()->check(CLI::NonNegativeNumber);
  growth->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  growth->add_option("--memory-mb", o.memory_mb, "Memory budget (overrides FREEPROD_MAX_MEMORY_MB)");
  emit_opt(growth);

  auto* neck = sub("necklaces", "Binary necklace counts", cmd_necklaces);
  neck->add_option("--r", o.r, "Necklace length")->required();
  neck->add_flag("--list", o.list, "List rotation-minimal representatives");

  auto* family = sub("gm-family", "Pairwise non-conjugate words a b_m1 ... a b_mr", cmd_gm_family);
  spec_opt(family);
  family->add_option("--r", o.r, "Number of a b syllables")->required();
  family->add_option("--b2", o.b2, "Override for b2, as a word in the second factor");

  auto* fsub = sub("free-subgroup-check", "Search for a relation between x = a b1 and y = a b2", cmd_free_subgroup);
  spec_opt(fsub);
  fsub->add_option("--depth", o.depth, "Largest reduced word length")->required();
  fsub->add_option("--b2", o.b2, "Override for b2, as a word in the second factor");

  sub("dihedral-check", "Relations of Z2 * Z2 with t = ab", cmd_dihedral);

  auto* laurent = sub("laurent-check", "Certify (u - 1) q != 1 in Z[u, u^-1] or Z/N[u, u^-1]", cmd_laurent);
  laurent->add_option("--terms", o.terms, "Terms exp:coef,..., e.g. \"-2:1,1:5\"");
  laurent->add_option("--modulus", o.modulus, "Coefficient modulus N >= 2 (0 for integers)");
  laurent->add_option("--random", o.random, "Run this many random samples instead");
  laurent->add_option("--seed", o.seed, "Random seed");

  auto* classify = sub("classify", "Growth class of N(t) from a manifold descriptor", cmd_classify);
  classify->add_option("--descriptor", o.descriptor_file, "Descriptor JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* bound = sub("bound", "Lower bounds for the closed-geodesic count N(t)", cmd_bound);
  bound->add_option("--L", o.L, "Longest of the shortest generator loops");
  bound->add_option("--L1", o.L1, "Shortest non-contractible closed geodesic");
  bound->add_option("--t", o.t, "Length threshold");
  bound->add_option("--curve", o.curve, "Sample the bound at t = 3L, ..., 3 r L");
  bound->add_option("--k", o.k, "Polynomial degree");
  bound->add_option("--r", o.cover_order, "Order of the finite cover");
  bound->add_option("--lambda", o.lambda, "Constant of the cover bound");
  emit_opt(bound);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Result res;
  try {
    res = handler(o);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NotApplicable& e) {
    err << "not applicable: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  if (!res.csv.empty()) {
    out << res.csv;
  } else {
    json report{{"schema", kReportSchema},
                {"command", command},
                {"inputs", res.inputs},
                {"outputs", res.outputs}};
    if (!res.rules.is_null()) report["rules"] = res.rules;
    if (o.timing) report["timing_ms"] = round12(elapsed.count());
    out << report.dump(2) << '\n';
  }
  if (res.budget_exceeded) {
    err << "warning: enumeration stopped early (" << res.outputs.value("truncation_reason", "")
        << ")\n";
    return kBudgetExceeded;
  }
  return kOk;
}

}  // namespace freeprod::cli
