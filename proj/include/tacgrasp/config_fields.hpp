#pragma once

// Typed access to JSON configuration objects. Every failure is reported as a
// ConfigError carrying the dotted path of the offending field.

#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>

#include "json.hpp"
#include "tacgrasp/errors.hpp"

namespace tacgrasp::config {

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

template <typename T>
T read(const nlohmann::json& obj, std::string_view key, T fallback, const std::string& path) {
  const std::string field = join(path, key);
  if (!obj.is_object()) throw ConfigError("expected an object", path);
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) return fallback;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) throw ConfigError("expected true or false", field);
  } else if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer()) throw ConfigError("expected an integer", field);
    if constexpr (std::is_unsigned_v<T>) {
      if (it->is_number_unsigned()) return it->template get<T>();
      if (it->template get<long long>() < 0) throw ConfigError("expected a non-negative integer", field);
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!it->is_number()) throw ConfigError("expected a number", field);
  } else {
    if (!it->is_string()) throw ConfigError("expected a string", field);
  }
  return it->template get<T>();
}

inline void require(bool ok, const std::string& message, const std::string& field) {
  if (!ok) throw ConfigError(message, field);
}

// Rejects keys outside `allowed` so that misspelt options do not pass silently.
inline void reject_unknown(const nlohmann::json& obj, std::initializer_list<std::string_view> allowed,
                           const std::string& path) {
  if (!obj.is_object()) throw ConfigError("expected an object", path);
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || item.key() == a;
    if (!known) throw ConfigError("unknown option", join(path, item.key()));
  }
}

inline const nlohmann::json& section(const nlohmann::json& obj, std::string_view key,
                                     const std::string& path) {
  static const nlohmann::json kEmpty = nlohmann::json::object();
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) return kEmpty;
  if (!it->is_object()) throw ConfigError("expected an object", join(path, key));
  return *it;
}

}  // namespace tacgrasp::config
