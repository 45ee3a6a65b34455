#ifndef BLOWUP_CONFIG_HPP
#define BLOWUP_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace blowup {

// Flat key = value configuration with '#' comments. Every key must be
// consumed by the reader; leftovers are reported as unknown-key errors so
// typos never pass silently.
class KeyValueConfig {
 public:
  static KeyValueConfig load(const std::string& path);
  static KeyValueConfig from_string(const std::string& text);

  bool has(const std::string& key) const;

  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, std::string fallback) const;
  std::string require_string(const std::string& key) const;
  // Comma-separated list of reals.
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;

  // Throws UsageError naming any key never requested.
  void require_all_consumed() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace blowup

#endif
