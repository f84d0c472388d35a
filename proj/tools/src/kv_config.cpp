#include "kv_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lsvc/error.hpp"

namespace lsvc::cli {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("expected key=value: " + line);
    cfg.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(values_.at(key), &used);
    if (used != values_.at(key).size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw DataError("bad integer for '" + key + "': " + values_.at(key));
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  try {
    return std::stod(values_.at(key));
  } catch (const std::logic_error&) {
    throw DataError("bad number for '" + key + "': " + values_.at(key));
  }
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
  if (!has(key)) return {};
  return split(values_.at(key), ',');
}

void KeyValueConfig::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : values_) {
    if (std::find(known.begin(), known.end(), k) == known.end()) throw DataError("unknown config key '" + k + "'");
  }
}

}  // namespace lsvc::cli
