#include "ricci/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ricci {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
          c == '.'))
      return false;
  return true;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw config_error("config line " + std::to_string(line) + ": " + what);
}

}  // namespace

ConfigMap ConfigMap::parse_string(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!valid_key(key)) fail(line, "malformed key '" + key + "'");
    if (value.empty()) fail(line, "empty value for '" + key + "'");
    if (out.kv_.count(key)) fail(line, "duplicate key '" + key + "'");
    out.kv_[key] = value;
  }
  return out;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_string(buf.str());
}

bool ConfigMap::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': not a number: " + it->second);
  }
  if (used != it->second.size())
    throw config_error("key '" + key + "': not a number: " + it->second);
  return v;
}

long ConfigMap::get_long(const std::string& key, long fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &used);
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': not an integer: " + it->second);
  }
  if (used != it->second.size())
    throw config_error("key '" + key + "': not an integer: " + it->second);
  return v;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw config_error("key '" + key + "': not a boolean: " + it->second);
}

std::vector<std::string> ConfigMap::get_list(const std::string& key) const {
  std::vector<std::string> out;
  const auto it = kv_.find(key);
  if (it == kv_.end()) return out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw config_error("key '" + key + "': empty list element");
    out.push_back(item);
  }
  return out;
}

std::vector<double> ConfigMap::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : get_list(key)) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw config_error("key '" + key + "': not a number: " + item);
    }
  }
  return out;
}

std::map<std::string, std::string> ConfigMap::section(
    const std::string& prefix) const {
  std::map<std::string, std::string> out;
  const std::string full = prefix + ".";
  for (const auto& [k, v] : kv_)
    if (k.rfind(full, 0) == 0) out[k.substr(full.size())] = v;
  return out;
}

}  // namespace ricci
