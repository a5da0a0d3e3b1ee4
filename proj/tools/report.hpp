#pragma once

// Ordered key/value report rendered as "key: value" lines or as one JSON object per line.

#include <cstdio>
#include <string>
#include <utility>

#include "json.hpp"

namespace mfib::cli {

class Report {
 public:
  template <class T>
  void set(const std::string& key, const T& value) {
    data_[key] = value;
  }

  /// Records a named verdict; any failed check makes ok() false.
  void check(const std::string& name, bool pass) {
    data_["check." + name] = pass ? "PASS" : "FAIL";
    if (!pass) ok_ = false;
  }

  bool ok() const { return ok_; }
  const nlohmann::ordered_json& data() const { return data_; }

  std::string text() const {
    std::string out;
    for (const auto& [k, v] : data_.items()) out += k + ": " + render(v) + "\n";
    return out;
  }

  std::string json() const { return data_.dump() + "\n"; }

  static std::string render(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) return sci(v.get<double>());
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + render(v[i]);
      return s;
    }
    return v.dump();
  }

  static std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
  }

 private:
  nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
  bool ok_ = true;
};

}  // namespace mfib::cli
