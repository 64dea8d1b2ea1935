#pragma once

#include "mmech/graph.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace mmech {

using json = nlohmann::ordered_json;

/// Rational as a JSON value: a number when integral, else a "p/q" string.
json rational_to_json(const Rational& value);
/// Accepts an integer number or a "p" / "p/q" string. `field` is used in errors.
Rational rational_from_json(const json& value, const std::string& field);

json instance_to_json(const Instance& inst);
/// Throws ParseError naming the offending field.
Instance instance_from_json(const json& doc);

/// Serialized form is deterministic for a given instance.
std::string write_instance(const Instance& inst);
Instance read_instance(std::string_view text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace mmech
