#include "haltonx/permutation.hpp"

#include "haltonx/errors.hpp"
#include "kv_doc.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hx {

namespace {

void validate_table(const std::vector<std::uint32_t>& table, std::uint32_t radix,
                    const std::string& where) {
  if (table.size() != radix) {
    throw ConfigError(where + ": table has " + std::to_string(table.size()) +
                      " entries, radix is " + std::to_string(radix));
  }
  std::vector<bool> seen(radix, false);
  for (std::uint32_t v : table) {
    if (v >= radix || seen[v]) {
      throw ConfigError(where + ": not a permutation of {0.." + std::to_string(radix - 1) + "}");
    }
    seen[v] = true;
  }
}

bool is_identity_table(const std::vector<std::uint32_t>& table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] != i) return false;
  }
  return true;
}

std::string join_values(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

PermutationFamily::PermutationFamily(std::shared_ptr<const BaseSystem> sys,
                                     const PermutationConfig& config, bool invert)
    : sys_(std::move(sys)) {
  if (!sys_) throw std::invalid_argument("PermutationFamily: null base system");

  for (const auto& [radix, table] : config.per_radix) {
    validate_table(table, radix, "radix." + std::to_string(radix));
  }
  for (const auto& [key, table] : config.per_position) {
    const auto [dim, pos] = key;
    if (dim < 1 || dim > sys_->dimensions()) {
      throw ConfigError("permutation override for unknown dimension " + std::to_string(dim));
    }
    if (pos < 1 || pos > sys_->depth()) {
      throw ConfigError("permutation override position " + std::to_string(pos) +
                        " outside working depth");
    }
    validate_table(table, sys_->radix(dim - 1, pos),
                   "dim." + std::to_string(dim) + ".pos." + std::to_string(pos));
  }

  const int s = sys_->dimensions();
  const int depth = sys_->depth();
  fwd_.assign(static_cast<std::size_t>(s), {});
  inv_.assign(static_cast<std::size_t>(s), {});
  identity_ = true;
  for (int i = 0; i < s; ++i) {
    fwd_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(depth));
    inv_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(depth));
    for (int pos = 1; pos <= depth; ++pos) {
      const std::vector<std::uint32_t>* table = nullptr;
      if (const auto it = config.per_position.find({i + 1, pos});
          it != config.per_position.end()) {
        table = &it->second;
      } else if (const auto rt = config.per_radix.find(sys_->radix(i, pos));
                 rt != config.per_radix.end()) {
        table = &rt->second;
      }
      if (table == nullptr || is_identity_table(*table)) continue;

      std::vector<std::uint32_t> fwd = *table;
      std::vector<std::uint32_t> inv(fwd.size());
      for (std::size_t d = 0; d < fwd.size(); ++d) inv[fwd[d]] = static_cast<std::uint32_t>(d);
      if (invert) std::swap(fwd, inv);
      fwd_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos - 1)] = std::move(fwd);
      inv_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos - 1)] = std::move(inv);
      identity_ = false;
    }
  }

  std::ostringstream os;
  if (identity_) {
    os << "family = identity\n";
  } else {
    os << "family = tables\n";
    if (invert) os << "# inverse tables of the configured family\n";
    for (const auto& [radix, table] : config.per_radix) {
      os << "radix." << radix << " = " << join_values(table) << "\n";
    }
    for (const auto& [key, table] : config.per_position) {
      os << "dim." << key.first << ".pos." << key.second << " = " << join_values(table) << "\n";
    }
    if (invert) os << "inverted = true\n";
  }
  canonical_ = os.str();
  digest_ = fnv1a64(canonical_);
}

std::shared_ptr<const PermutationFamily> PermutationFamily::identity(
    std::shared_ptr<const BaseSystem> sys) {
  return std::shared_ptr<const PermutationFamily>(
      new PermutationFamily(std::move(sys), PermutationConfig{}, false));
}

std::shared_ptr<const PermutationFamily> PermutationFamily::create(
    std::shared_ptr<const BaseSystem> sys, const PermutationConfig& config) {
  return std::shared_ptr<const PermutationFamily>(
      new PermutationFamily(std::move(sys), config, false));
}

std::uint32_t PermutationFamily::forward(int dim, int pos, std::uint32_t digit) const {
  const auto& row = fwd_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(pos - 1));
  if (row.empty()) return digit;
  return row.at(digit);
}

std::uint32_t PermutationFamily::inverse(int dim, int pos, std::uint32_t digit) const {
  const auto& row = inv_.at(static_cast<std::size_t>(dim)).at(static_cast<std::size_t>(pos - 1));
  if (row.empty()) return digit;
  return row.at(digit);
}

std::uint32_t PermutationFamily::diff_residue(int dim, int pos) const {
  const std::uint32_t q = sys_->radix(dim, pos);
  const std::uint32_t i0 = inverse(dim, pos, 0);
  const std::uint32_t i1 = inverse(dim, pos, 1);
  return (i0 + q - i1) % q;  // never 0: a permutation has i0 != i1
}

std::shared_ptr<const PermutationFamily> PermutationFamily::inverted() const {
  PermutationConfig config;
  // Re-express the resolved tables as explicit per-position entries.
  for (int i = 0; i < sys_->dimensions(); ++i) {
    for (int pos = 1; pos <= sys_->depth(); ++pos) {
      const auto& row = fwd_[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos - 1)];
      if (!row.empty()) config.per_position[{i + 1, pos}] = row;
    }
  }
  return std::shared_ptr<const PermutationFamily>(new PermutationFamily(sys_, config, true));
}

std::shared_ptr<const PermutationFamily> parse_permutations(
    std::shared_ptr<const BaseSystem> sys, const std::string& text) {
  using detail::parse_long_token;
  using detail::parse_u32_list;
  const auto entries = detail::parse_key_value_doc(text);

  const auto fam = entries.find("family");
  if (fam == entries.end() || fam->second.size() != 1) {
    throw ConfigError("permutation config: missing 'family'");
  }
  const std::string& family = fam->second[0];
  if (family == "identity") {
    if (entries.size() != 1) {
      throw ConfigError("permutation config: identity family takes no tables");
    }
    return PermutationFamily::identity(std::move(sys));
  }
  if (family != "tables") {
    throw ConfigError("permutation config: unknown family '" + family + "'");
  }

  PermutationConfig config;
  for (const auto& [key, tokens] : entries) {
    if (key == "family") continue;
    if (key.rfind("radix.", 0) == 0) {
      const long q = parse_long_token(key.substr(6), "radix key");
      if (q < 2) throw ConfigError("radix key must be >= 2");
      config.per_radix[static_cast<std::uint32_t>(q)] = parse_u32_list(tokens, key);
      continue;
    }
    if (key.rfind("dim.", 0) == 0) {
      const auto mid = key.find(".pos.");
      if (mid != std::string::npos) {
        const long dim = parse_long_token(key.substr(4, mid - 4), "dimension key");
        const long pos = parse_long_token(key.substr(mid + 5), "position key");
        config.per_position[{static_cast<int>(dim), static_cast<int>(pos)}] =
            parse_u32_list(tokens, key);
        continue;
      }
    }
    throw ConfigError("unknown key '" + key + "' in permutation config");
  }
  return PermutationFamily::create(std::move(sys), config);
}

std::shared_ptr<const PermutationFamily> parse_permutations_file(
    std::shared_ptr<const BaseSystem> sys, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open permutation config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_permutations(std::move(sys), ss.str());
}

}  // namespace hx
