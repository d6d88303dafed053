#include "samrad/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "samrad/hierarchy.hpp"

namespace samrad {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap ConfigMap::parse(const std::string& text) {
  ConfigMap c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail("config line " + std::to_string(lineno) + ": empty key");
    c.kv[key] = val;
  }
  return c;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ConfigMap::dump() const {
  std::ostringstream out;
  std::string section;
  for (const auto& [k, v] : kv) {
    const std::string sec = k.substr(0, k.find('.'));
    if (sec != section) {
      if (!section.empty()) out << "\n";
      section = sec;
    }
    out << k << " = " << v << "\n";
  }
  return out.str();
}

void ConfigMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail("cannot write config file: " + path);
  out << dump();
}

std::string ConfigMap::get_str(const std::string& key,
                               const std::string& dflt) const {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

double ConfigMap::get_real(const std::string& key, double dflt) const {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    fail("config key " + key + ": not a number: " + it->second);
  }
}

int ConfigMap::get_int(const std::string& key, int dflt) const {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  try {
    std::size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return int(v);
  } catch (const std::exception&) {
    fail("config key " + key + ": not an integer: " + it->second);
  }
}

bool ConfigMap::get_bool(const std::string& key, bool dflt) const {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail("config key " + key + ": not a boolean: " + v);
}

void ConfigMap::set_real(const std::string& key, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  kv[key] = buf;
}

void ConfigMap::set_int(const std::string& key, long long v) {
  kv[key] = std::to_string(v);
}

void ConfigMap::set_bool(const std::string& key, bool v) {
  kv[key] = v ? "true" : "false";
}

}  // namespace samrad
