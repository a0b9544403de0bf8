#pragma once

// Internal helper: the line-based "key = value tokens" document format used
// by base-system and permutation configs.

#include "haltonx/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace hx::detail {

inline std::map<std::string, std::vector<std::string>> parse_key_value_doc(
    const std::string& text) {
  std::map<std::string, std::vector<std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (entries.count(key)) throw ConfigError("duplicate key '" + key + "'");

    std::vector<std::string> tokens;
    std::string tok;
    for (char c : val) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        if (!tok.empty()) tokens.push_back(std::move(tok));
        tok.clear();
      } else {
        tok.push_back(c);
      }
    }
    if (!tok.empty()) tokens.push_back(std::move(tok));
    entries.emplace(std::move(key), std::move(tokens));
  }
  return entries;
}

inline long parse_long_token(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from '" + tok + "'");
  }
}

inline std::vector<std::uint32_t> parse_u32_list(const std::vector<std::string>& tokens,
                                                 const std::string& what) {
  std::vector<std::uint32_t> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) {
    const long v = parse_long_token(t, what);
    if (v < 0 || v > 0x7fffffffL) throw ConfigError(what + ": value out of range: " + t);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace hx::detail
