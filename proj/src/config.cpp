#include "entfluc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "entfluc/error.hpp"

namespace entfluc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::optional<double> parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') fail(source, lineno, "section headers are not supported");
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(source, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(source, lineno, "empty key");
    if (cfg.has(key)) fail(source, lineno, "duplicate key '" + key + "'");

    if (val.size() >= 2 && val.front() == '"' && val.back() == '"') {
      cfg.values_[key] = val.substr(1, val.size() - 2);
    } else if (val == "true" || val == "false") {
      cfg.values_[key] = (val == "true");
    } else if (!val.empty() && val.front() == '[') {
      if (val.back() != ']') fail(source, lineno, "unterminated array for '" + key + "'");
      std::vector<double> items;
      std::stringstream body(val.substr(1, val.size() - 2));
      std::string item;
      while (std::getline(body, item, ',')) {
        if (trim(item).empty()) continue;
        auto num = parse_number(item);
        if (!num) fail(source, lineno, "array '" + key + "' holds a non-number: " + trim(item));
        items.push_back(*num);
      }
      cfg.values_[key] = std::move(items);
    } else if (auto num = parse_number(val)) {
      cfg.values_[key] = *num;
    } else {
      fail(source, lineno, "cannot parse value for '" + key + "': " + val);
    }
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in, "<string>");
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

double KeyValueConfig::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double KeyValueConfig::number(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  throw ConfigError("key '" + key + "' must be a number");
}

int KeyValueConfig::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

bool KeyValueConfig::boolean(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (const auto* b = std::get_if<bool>(&it->second)) return *b;
  throw ConfigError("key '" + key + "' must be true or false");
}

std::string KeyValueConfig::string(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

std::string KeyValueConfig::string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw ConfigError("key '" + key + "' must be a quoted string");
}

std::vector<double> KeyValueConfig::list(const std::string& key,
                                         const std::vector<double>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (const auto* l = std::get_if<std::vector<double>>(&it->second)) return *l;
  if (const auto* d = std::get_if<double>(&it->second)) return {*d};
  throw ConfigError("key '" + key + "' must be an array of numbers");
}

void KeyValueConfig::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (!allowed.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
}

std::string KeyValueConfig::format(const Value& v) {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          out << x;
        } else if constexpr (std::is_same_v<T, std::string>) {
          out << '"' << x << '"';
        } else if constexpr (std::is_same_v<T, bool>) {
          out << (x ? "true" : "false");
        } else {
          out << '[';
          for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
          out << ']';
        }
      },
      v);
  return out.str();
}

}  // namespace entfluc
