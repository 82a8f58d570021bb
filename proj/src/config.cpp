#include "critpoint/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace critpoint {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw config_error("empty number");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw config_error("malformed number '" + t + "'");
  return v;
}

std::vector<double> parse_num_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw config_error("empty list '" + s + "'");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    const auto dots = t.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<std::uint64_t>(parse_double(t)));
      continue;
    }
    const auto lo = static_cast<std::uint64_t>(parse_double(t.substr(0, dots)));
    const auto hi = static_cast<std::uint64_t>(parse_double(t.substr(dots + 2)));
    if (hi < lo || hi - lo > 1000000)
      throw config_error("bad seed range '" + t + "'");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw config_error("empty seed list '" + s + "'");
  return out;
}

IniFile IniFile::parse(std::istream& in) {
  IniFile f;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cut = line.find_first_of(";#");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      f.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw config_error("line " + std::to_string(lineno) + ": empty key");
    f.sections_[section][key] = trim(line.substr(eq + 1));
  }
  return f;
}

IniFile IniFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  return parse(in);
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

std::string IniFile::require(const std::string& section, const std::string& key) const {
  if (!has(section, key))
    throw config_error("missing required key '" + key + "' in section [" + section + "]");
  return get(section, key, "");
}

double IniFile::get_num(const std::string& section, const std::string& key,
                        double fallback) const {
  if (!has(section, key)) return fallback;
  return parse_double(get(section, key, ""));
}

}  // namespace critpoint
