#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/error.hpp"

namespace germlab::jsonu {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& msg) {
  fail(ErrorCode::Schema, (path.empty() ? std::string("$") : path) + ": " + msg);
}

inline std::string child(const std::string& path, const std::string& key) {
  return (path.empty() ? std::string("$") : path) + "." + key;
}

inline std::string index(const std::string& path, std::size_t i) {
  return (path.empty() ? std::string("$") : path) + "[" + std::to_string(i) + "]";
}

/// Requires an object whose keys all belong to `allowed`.
inline void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) schema_error(child(path, it.key()), "unknown field");
  }
}

inline const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(child(path, key), "missing required field");
  return *it;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

inline std::int64_t as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "expected a boolean");
  return j.get<bool>();
}

inline std::vector<double> as_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], index(path, i)));
  return out;
}

inline double number(const json& j, const std::string& path, const char* key) {
  return as_number(field(j, path, key), child(path, key));
}

inline double number_or(const json& j, const std::string& path, const char* key, double dflt) {
  return j.contains(key) ? as_number(j.at(key), child(path, key)) : dflt;
}

inline std::int64_t integer(const json& j, const std::string& path, const char* key) {
  return as_integer(field(j, path, key), child(path, key));
}

inline std::int64_t integer_or(const json& j, const std::string& path, const char* key, std::int64_t dflt) {
  return j.contains(key) ? as_integer(j.at(key), child(path, key)) : dflt;
}

inline std::string string(const json& j, const std::string& path, const char* key) {
  return as_string(field(j, path, key), child(path, key));
}

inline std::string string_or(const json& j, const std::string& path, const char* key, const std::string& dflt) {
  return j.contains(key) ? as_string(j.at(key), child(path, key)) : dflt;
}

inline bool boolean_or(const json& j, const std::string& path, const char* key, bool dflt) {
  return j.contains(key) ? as_bool(j.at(key), child(path, key)) : dflt;
}

}  // namespace germlab::jsonu
