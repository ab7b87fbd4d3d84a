#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace entfluc {

/// Flat key-value configuration in a TOML subset:
///
///   # comment
///   experiment = "aklt_D_sweep"
///   L = 10
///   grid = [0.0, 0.5, 1.0]
///   large = false
///
/// Values are numbers, quoted strings, booleans or arrays of numbers.
/// Section headers and nested tables are not supported.
class KeyValueConfig {
 public:
  using Value = std::variant<double, std::string, bool, std::vector<double>>;

  static KeyValueConfig parse(std::istream& in, const std::string& source = "<input>");
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, Value>& values() const { return values_; }
  void set(const std::string& key, Value v) { values_[key] = std::move(v); }

  double number(const std::string& key, double fallback) const;
  double number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  std::string string(const std::string& key) const;
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;

  /// Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  /// Renders one value back in the input syntax.
  static std::string format(const Value& v);

 private:
  std::map<std::string, Value> values_;
};

}  // namespace entfluc
