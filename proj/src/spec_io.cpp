#include "freeprod/spec_io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <optional>

#include "freeprod/error.hpp"

namespace freeprod {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InvalidInput(where + ": missing field '" + key + "'");
  }
  return doc.at(key);
}

std::int64_t require_int(const json& doc, const char* key, const std::string& where) {
  const auto& v = require(doc, key, where);
  if (!v.is_number_integer()) throw InvalidInput(where + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

void check_schema(const json& doc, const char* expected) {
  if (doc.contains("schema") && doc.at("schema") != expected) {
    throw InvalidInput(std::string("unsupported schema, expected ") + expected);
  }
}

FactorKind parse_kind(const std::string& s) {
  for (auto k : {FactorKind::FiniteTable, FactorKind::FiniteCyclic, FactorKind::InfiniteCyclic,
                 FactorKind::Free}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidInput("unknown factor kind '" + s + "'");
}

FactorElement parse_table_element(const json& v, const FactorGroupSpec& spec) {
  if (v.is_number_integer()) return FactorElement::id(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    for (std::size_t i = 0; i < spec.element_names.size(); ++i) {
      if (spec.element_names[i] == name) return FactorElement::id(static_cast<std::int64_t>(i));
    }
    throw InvalidInput("unknown element name '" + name + "'");
  }
  throw InvalidInput("element must be an id or an element name");
}

struct Token {
  std::string name;
  std::int64_t exponent = 1;
  std::size_t column = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto error = [&](std::size_t at, const std::string& what) {
    return InvalidInput("parse error at column " + std::to_string(at + 1) + ": " + what);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    Token tok;
    tok.column = i + 1;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '^') {
      const auto ch = static_cast<unsigned char>(text[i]);
      if (!std::isalnum(ch) && ch != '_' && ch != '\'') {
        throw error(i, std::string("unexpected character '") + text[i] + "'");
      }
      tok.name.push_back(text[i++]);
    }
    if (tok.name.empty()) throw error(i, "expected a generator name");
    if (i < text.size() && text[i] == '^') {
      const std::size_t start = ++i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      const auto digits = text.substr(start, i - start);
      if (digits.empty() || digits == "-" || digits == "+") throw error(start, "expected an exponent");
      if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        throw error(i, "unexpected character after exponent");
      }
      try {
        tok.exponent = std::stoll(digits);
      } catch (const std::out_of_range&) {
        throw error(start, "exponent out of range");
      }
    }
    out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace

FactorGroupSpec parse_factor_spec(const json& doc) {
  const std::string where = "factor";
  FactorGroupSpec spec;
  spec.kind = parse_kind(require(doc, "kind", where).get<std::string>());
  if (doc.contains("label")) spec.label = doc.at("label").get<std::string>();

  switch (spec.kind) {
    case FactorKind::FiniteCyclic:
      spec.order = require_int(doc, "n", where);
      break;
    case FactorKind::Free:
      spec.rank = static_cast<int>(require_int(doc, "rank", where));
      break;
    case FactorKind::FiniteTable: {
      const auto& table = require(doc, "table", where);
      if (!table.is_array()) throw InvalidInput("table must be an array of rows");
      for (const auto& row : table) {
        if (!row.is_array()) throw InvalidInput("table rows must be arrays");
        std::vector<std::int64_t> r;
        for (const auto& v : row) {
          if (!v.is_number_integer()) throw InvalidInput("table entries must be integer ids");
          r.push_back(v.get<std::int64_t>());
        }
        spec.table.push_back(std::move(r));
      }
      if (doc.contains("elements")) {
        for (const auto& v : doc.at("elements")) spec.element_names.push_back(v.get<std::string>());
      }
      break;
    }
    case FactorKind::InfiniteCyclic:
      break;
  }

  const auto& gens = require(doc, "generators", where);
  if (!gens.is_array() || gens.empty()) throw InvalidInput("generators must be a nonempty array");
  std::int32_t index = 0;
  for (const auto& g : gens) {
    GeneratorSpec gen;
    ++index;
    const bool shorthand = g.is_string();
    gen.name = shorthand ? g.get<std::string>() : require(g, "name", "generator").get<std::string>();
    if (shorthand || !g.contains("element")) {
      switch (spec.kind) {
        case FactorKind::FiniteCyclic:
        case FactorKind::InfiniteCyclic:
          gen.element = FactorElement::id(1);
          break;
        case FactorKind::Free:
          gen.element = FactorElement::free_word({index});
          break;
        case FactorKind::FiniteTable:
          throw InvalidInput("finite_table generators need an explicit element");
      }
    } else {
      gen.element = parse_table_element(g.at("element"), spec);
    }
    spec.generators.push_back(std::move(gen));
  }
  return spec;
}

FreeProduct parse_group_spec(const json& doc) {
  try {
    check_schema(doc, kGroupSchema);
    const auto& factors = require(doc, "factors", "group spec");
    if (!factors.is_array() || factors.size() != 2) {
      throw InvalidInput("group spec must list exactly two factors");
    }
    auto first = parse_factor_spec(factors[0]);
    auto second = parse_factor_spec(factors[1]);
    if (doc.contains("labels")) {
      const auto& labels = doc.at("labels");
      if (!labels.is_array() || labels.size() != 2) throw InvalidInput("labels must have two entries");
      first.label = labels[0].get<std::string>();
      second.label = labels[1].get<std::string>();
    }
    return FreeProduct(std::move(first), std::move(second));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("group spec: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

FreeProduct load_group_spec(const std::string& path) { return parse_group_spec(read_json_file(path)); }

NormalForm parse_word(const FreeProduct& group, const std::string& text) {
  NormalForm g;
  for (const auto& tok : tokenize(text)) {
    std::optional<std::pair<std::size_t, FactorElement>> base;
    for (std::size_t f = 0; f < 2 && !base; ++f) {
      const auto& factor = group.factor(f);
      for (const auto& gen : factor.generators()) {
        if (gen.name == tok.name) base.emplace(f, gen.element);
      }
      const auto& names = factor.spec().element_names;
      for (std::size_t i = 0; i < names.size() && !base; ++i) {
        if (names[i] == tok.name) base.emplace(f, FactorElement::id(static_cast<std::int64_t>(i)));
      }
    }
    if (!base) {
      throw InvalidInput("unknown generator '" + tok.name + "' at column " +
                         std::to_string(tok.column));
    }
    const auto& factor = group.factor(base->first);
    g = group.multiply(g, group.letter(base->first, factor.power(base->second, tok.exponent)));
  }
  return g;
}

FactorElement parse_factor_element(const FreeProduct& group, std::size_t factor,
                                   const std::string& text) {
  auto g = parse_word(group, text);
  if (g.empty()) return {};
  if (g.size() != 1 || g.letters.front().factor != factor) {
    throw InvalidInput("'" + text + "' is not an element of factor " + std::to_string(factor + 1));
  }
  return g.letters.front().value;
}

json normal_form_json(const FreeProduct& group, const NormalForm& g) {
  json letters = json::array();
  for (const auto& l : g.letters) {
    json entry{{"factor", l.factor + 1}, {"text", group.factor(l.factor).format(l.value)}};
    if (l.value.word.empty()) {
      entry["element"] = l.value.value;
    } else {
      entry["element"] = l.value.word;
    }
    letters.push_back(std::move(entry));
  }
  return json{{"text", group.format(g)}, {"length", g.size()}, {"letters", std::move(letters)}};
}

namespace {

Summand parse_summand(const json& doc, const std::string& where) {
  Summand s;
  s.pi1 = parse_pi1_class(require(doc, "pi1", where).get<std::string>());
  if (doc.contains("order")) s.order = require_int(doc, "order", where);
  if (s.pi1 == Pi1Class::Z2) s.order = 2;
  if (s.pi1 == Pi1Class::Trivial) s.order = 1;
  if (doc.contains("b1")) s.b1 = require_int(doc, "b1", where);
  return s;
}

}  // namespace

DescriptorDocument parse_descriptor(const json& doc) {
  try {
    check_schema(doc, kManifoldSchema);
    DescriptorDocument out;
    const auto kind = doc.value("kind", std::string("three_manifold"));
    if (kind == "three_manifold") {
      out.manifold.orientable = doc.value("orientable", true);
      const auto& summands = require(doc, "summands", "descriptor");
      if (!summands.is_array()) throw InvalidInput("summands must be an array");
      for (std::size_t i = 0; i < summands.size(); ++i) {
        out.manifold.summands.push_back(parse_summand(summands[i], "summand " + std::to_string(i)));
      }
    } else if (kind == "connected_sum") {
      out.is_connected_sum = true;
      out.connected_sum.m1 = parse_summand(require(doc, "m1", "descriptor"), "m1");
      out.connected_sum.m2 = parse_summand(require(doc, "m2", "descriptor"), "m2");
      out.connected_sum.m2_is_sphere = doc.value("m2_is_sphere", false);
    } else {
      throw InvalidInput("descriptor kind must be three_manifold or connected_sum");
    }
    return out;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("descriptor: ") + e.what());
  }
}

DescriptorDocument load_descriptor(const std::string& path) {
  return parse_descriptor(read_json_file(path));
}

json classification_json(const Classification& c) {
  json trace = json::array();
  for (const auto& step : c.trace) trace.push_back({{"rule", step.rule}, {"statement", step.statement}});
  json out{{"growth_class", to_string(c.growth.kind)}, {"rule", c.rule()}, {"trace", std::move(trace)}};
  if (c.growth.kind == GrowthKind::PolynomialAtLeast) out["degree"] = c.growth.degree;
  return out;
}

}  // namespace freeprod
