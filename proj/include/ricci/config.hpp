#ifndef RICCI_CONFIG_HPP
#define RICCI_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricci {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration with dotted section prefixes:
///
///   # comment
///   scenario.kind = round_sphere
///   scenario.radius = 1.0
///   audits = noninflate, hypothesis
///
/// Keys are dotted identifiers; values are free text up to a comment or end
/// of line.  Duplicate keys and malformed lines are errors (reported with
/// their line number).
class ConfigMap {
 public:
  static ConfigMap parse_string(const std::string& text);
  static ConfigMap parse_file(const std::string& path);

  bool has(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Comma-separated value lists; empty when the key is absent.
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  /// Keys beginning with "prefix." with the prefix stripped.
  std::map<std::string, std::string> section(const std::string& prefix) const;

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace ricci

#endif
