#pragma once

#include <string>

#include "json.hpp"

#include "freeprod/free_product.hpp"
#include "freeprod/geodesic_bounds.hpp"

namespace freeprod {

inline constexpr const char* kGroupSchema = "freeprod.group/1";
inline constexpr const char* kManifoldSchema = "freeprod.manifold/1";

/// Builds the free product described by a group-spec document:
///
///   {"schema": "freeprod.group/1",
///    "factors": [{"kind": "finite_cyclic", "n": 2, "generators": ["a"]},
///                {"kind": "finite_cyclic", "n": 3, "generators": ["b"]}]}
///
/// Throws InvalidInput on schema violations.
FreeProduct parse_group_spec(const nlohmann::json& doc);
FactorGroupSpec parse_factor_spec(const nlohmann::json& doc);
FreeProduct load_group_spec(const std::string& path);

/// Parses whitespace-separated tokens `name`, `name^k` into a normal form.
/// Names are generators of either factor or element names of table factors.
NormalForm parse_word(const FreeProduct& group, const std::string& text);

/// Parses a word that must evaluate to a single letter of `factor`.
FactorElement parse_factor_element(const FreeProduct& group, std::size_t factor,
                                   const std::string& text);

nlohmann::json normal_form_json(const FreeProduct& group, const NormalForm& g);

struct DescriptorDocument {
  bool is_connected_sum = false;
  ManifoldDescriptor manifold;
  ConnectedSumInput connected_sum;
};

DescriptorDocument parse_descriptor(const nlohmann::json& doc);
DescriptorDocument load_descriptor(const std::string& path);

nlohmann::json classification_json(const Classification& c);

/// Reads a JSON file; throws InvalidInput when missing or malformed.
nlohmann::json read_json_file(const std::string& path);

}  // namespace freeprod
