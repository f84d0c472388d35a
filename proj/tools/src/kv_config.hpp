#pragma once

#include <map>
#include <string>
#include <vector>

namespace lsvc::cli {

/// Flat `key=value` text with `#` comments. Later keys override earlier ones.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  std::string get(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  /// Throws DataError naming the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

}  // namespace lsvc::cli
