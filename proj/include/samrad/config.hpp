#ifndef SAMRAD_CONFIG_HPP
#define SAMRAD_CONFIG_HPP

#include <map>
#include <string>

namespace samrad {

// Flat key = value text config. Keys carry dotted section prefixes
// (controller.eps_t, grid.base_resolution, ...). '#' starts a comment,
// blank lines are ignored. Unknown keys are kept so round-trips are lossless.
struct ConfigMap {
  std::map<std::string, std::string> kv;

  static ConfigMap load(const std::string& path);
  static ConfigMap parse(const std::string& text);
  void save(const std::string& path) const;
  std::string dump() const;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get_str(const std::string& key, const std::string& dflt) const;
  double get_real(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  void set_str(const std::string& key, const std::string& v) { kv[key] = v; }
  void set_real(const std::string& key, double v);
  void set_int(const std::string& key, long long v);
  void set_bool(const std::string& key, bool v);
};

}  // namespace samrad

#endif
