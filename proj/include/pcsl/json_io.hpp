#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pcsl/algebra.hpp"
#include "pcsl/morphism.hpp"

namespace pcsl {

using json = nlohmann::ordered_json;

/// Malformed or structurally wrong JSON input.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// {"n", "zero", "meet", "star", "labels"}; labels are omitted when absent.
json algebra_to_json(const FinPSL& p);
/// Parses and validates; throws FormatError or ValidationError.
FinPSL algebra_from_json(const json& j);

FinPSL load_algebra(const std::filesystem::path& path);
void save_algebra(const FinPSL& p, const std::filesystem::path& path);

/// {"map": [...], "kind": "..."}
json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const json& j);

std::string to_hex(const std::string& bytes);
std::string from_hex(const std::string& hex);

}  // namespace pcsl
