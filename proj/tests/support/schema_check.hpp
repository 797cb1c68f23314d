#pragma once

// Validator for the JSON Schema subset used by the committed response schema:
// type, enum, required, properties, additionalProperties (bool), items,
// minimum, maximum, pattern and local "#/definitions/..." references.

#include <json.hpp>
#include <regex>
#include <string>
#include <vector>

namespace attnflow::testing {

class SchemaCheck {
 public:
  explicit SchemaCheck(nlohmann::json schema) : root_(std::move(schema)) {}

  /// Empty when the instance validates; otherwise one message per violation.
  std::vector<std::string> validate(const nlohmann::json& instance) const {
    std::vector<std::string> errors;
    check(root_, instance, "$", errors);
    return errors;
  }

 private:
  static bool type_matches(const std::string& type, const nlohmann::json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") return v.is_number_integer();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    return false;
  }

  const nlohmann::json& resolve(const nlohmann::json& s) const {
    if (!s.contains("$ref")) return s;
    const std::string ref = s["$ref"];
    const std::string prefix = "#/definitions/";
    return root_.at("definitions").at(ref.substr(prefix.size()));
  }

  void check(const nlohmann::json& schema_in, const nlohmann::json& v, const std::string& path,
             std::vector<std::string>& errors) const {
    const auto& s = resolve(schema_in);
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || type_matches(t, v);
      } else {
        ok = type_matches(s["type"], v);
      }
      if (!ok) {
        errors.push_back(path + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) errors.push_back(path + ": value not in enum");
    }
    if (v.is_number()) {
      if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) errors.push_back(path + ": below minimum");
      if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>()) errors.push_back(path + ": above maximum");
    }
    if (v.is_string() && s.contains("pattern")) {
      if (!std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
        errors.push_back(path + ": does not match pattern");
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& r : s["required"]) {
          if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing '" + r.get<std::string>() + "'");
        }
      }
      const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
      for (const auto& [k, child] : v.items()) {
        if (s.contains("properties") && s["properties"].contains(k)) {
          check(s["properties"][k], child, path + "." + k, errors);
        } else if (closed) {
          errors.push_back(path + ": unexpected property '" + k + "'");
        }
      }
    }
    if (v.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
    }
  }

  nlohmann::json root_;
};

}  // namespace attnflow::testing
