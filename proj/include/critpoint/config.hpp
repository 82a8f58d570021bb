#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "critpoint/types.hpp"

namespace critpoint {

// Minimal INI reader: [section] headers, key = value lines, '#' or ';'
// comments, surrounding whitespace ignored.  Keys outside any section land in
// the section with the empty name.
class IniFile {
 public:
  static IniFile parse(std::istream& in);
  static IniFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  std::string require(const std::string& section, const std::string& key) const;
  double get_num(const std::string& section, const std::string& key,
                 double fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

std::string trim(const std::string& s);
double parse_double(const std::string& s);

// Comma-separated doubles: "1e-2, 1e-3".
std::vector<double> parse_num_list(const std::string& s);

// Comma-separated integers where an element may be a range "a..b".
std::vector<std::uint64_t> parse_seed_list(const std::string& s);

}  // namespace critpoint
