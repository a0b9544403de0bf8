#include "haltonx/base_system.hpp"

#include "haltonx/errors.hpp"
#include "kv_doc.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hx {

namespace {

constexpr int kMaxDepth = 1 << 16;

std::string join_values(const std::vector<std::uint32_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

BaseSystem::BaseSystem(std::vector<DimensionSpec> dims, int depth)
    : dims_(std::move(dims)), depth_(depth) {
  if (dims_.empty()) throw ConfigError("base system needs at least one dimension");
  if (depth_ < 1 || depth_ > kMaxDepth) {
    throw ConfigError("working depth must be in [1, " + std::to_string(kMaxDepth) + "]");
  }

  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const DimensionSpec& d = dims_[i];
    const std::string where = "dimension " + std::to_string(i + 1);
    if (d.alphabet.empty()) throw ConfigError(where + ": empty alphabet");
    std::set<std::uint32_t> seen;
    for (std::uint32_t q : d.alphabet) {
      if (q < 2) throw ConfigError(where + ": radix " + std::to_string(q) + " < 2");
      if (!seen.insert(q).second) {
        throw ConfigError(where + ": duplicate alphabet member " + std::to_string(q));
      }
    }
    if (d.cycle.empty()) throw ConfigError(where + ": empty assignment cycle");
    for (std::uint32_t q : d.prefix) {
      if (!seen.count(q)) {
        throw ConfigError(where + ": prefix radix " + std::to_string(q) + " not in alphabet");
      }
    }
    for (std::uint32_t q : d.cycle) {
      if (!seen.count(q)) {
        throw ConfigError(where + ": cycle radix " + std::to_string(q) + " not in alphabet");
      }
    }
  }

  // Pairwise coprimality across dimensions, over whole alphabets.
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    for (std::size_t j = i + 1; j < dims_.size(); ++j) {
      for (std::uint32_t a : dims_[i].alphabet) {
        for (std::uint32_t b : dims_[j].alphabet) {
          if (std::gcd(a, b) != 1) {
            throw ConfigError("radices " + std::to_string(a) + " (dimension " +
                              std::to_string(i + 1) + ") and " + std::to_string(b) +
                              " (dimension " + std::to_string(j + 1) + ") are not coprime");
          }
        }
      }
    }
  }

  radix_.resize(dims_.size());
  cumulative_.resize(dims_.size());
  max_alphabet_ = 0;
  max_radix_ = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const DimensionSpec& d = dims_[i];
    max_alphabet_ = std::max<int>(max_alphabet_, static_cast<int>(d.alphabet.size()));
    max_radix_ = std::max(max_radix_, *std::max_element(d.alphabet.begin(), d.alphabet.end()));

    radix_[i].resize(static_cast<std::size_t>(depth_));
    cumulative_[i].resize(static_cast<std::size_t>(depth_) + 1);
    cumulative_[i][0] = 1;
    for (int pos = 1; pos <= depth_; ++pos) {
      const std::size_t j = static_cast<std::size_t>(pos - 1);
      std::uint32_t q;
      if (j < d.prefix.size()) {
        q = d.prefix[j];
      } else {
        q = d.cycle[(j - d.prefix.size()) % d.cycle.size()];
      }
      radix_[i][j] = q;
      cumulative_[i][static_cast<std::size_t>(pos)] =
          cumulative_[i][static_cast<std::size_t>(pos - 1)] * q;
    }
  }

  std::ostringstream os;
  os << "dimensions = " << dims_.size() << "\n";
  os << "depth = " << depth_ << "\n";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    os << "alphabet." << (i + 1) << " = " << join_values(dims_[i].alphabet) << "\n";
    os << "prefix." << (i + 1) << " = " << join_values(dims_[i].prefix) << "\n";
    os << "cycle." << (i + 1) << " = " << join_values(dims_[i].cycle) << "\n";
  }
  canonical_ = os.str();
  digest_ = fnv1a64(canonical_);
}

std::shared_ptr<const BaseSystem> BaseSystem::create(std::vector<DimensionSpec> dims, int depth) {
  return std::shared_ptr<const BaseSystem>(new BaseSystem(std::move(dims), depth));
}

std::shared_ptr<const BaseSystem> BaseSystem::constant(const std::vector<std::uint32_t>& bases,
                                                       int depth) {
  std::vector<DimensionSpec> dims;
  dims.reserve(bases.size());
  for (std::uint32_t q : bases) {
    dims.push_back(DimensionSpec{{q}, {}, {q}});
  }
  return create(std::move(dims), depth);
}

std::uint32_t BaseSystem::radix(int dim, int pos) const {
  if (dim < 0 || dim >= dimensions()) throw std::invalid_argument("radix: bad dimension");
  if (pos < 1 || pos > depth_) {
    throw HorizonError("digit position " + std::to_string(pos) + " outside working depth " +
                       std::to_string(depth_));
  }
  return radix_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(pos - 1)];
}

const BigInt& BaseSystem::cumulative(int dim, int pos) const {
  if (dim < 0 || dim >= dimensions()) throw std::invalid_argument("cumulative: bad dimension");
  if (pos < 0 || pos > depth_) {
    throw HorizonError("digit position " + std::to_string(pos) + " outside working depth " +
                       std::to_string(depth_));
  }
  return cumulative_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(pos)];
}

std::shared_ptr<const BaseSystem> parse_base_system(const std::string& text) {
  using detail::parse_long_token;
  using detail::parse_u32_list;
  const auto entries = detail::parse_key_value_doc(text);

  auto get = [&](const std::string& key) -> const std::vector<std::string>* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  const auto* dims_tokens = get("dimensions");
  if (!dims_tokens || dims_tokens->size() != 1) {
    throw ConfigError("base system config: missing 'dimensions'");
  }
  const long s = parse_long_token((*dims_tokens)[0], "dimensions");
  if (s < 1 || s > 64) throw ConfigError("dimensions must be in [1, 64]");

  const auto* depth_tokens = get("depth");
  if (!depth_tokens || depth_tokens->size() != 1) {
    throw ConfigError("base system config: missing 'depth'");
  }
  const long depth = parse_long_token((*depth_tokens)[0], "depth");

  std::set<std::string> known = {"dimensions", "depth"};
  std::vector<DimensionSpec> dims;
  for (long i = 1; i <= s; ++i) {
    const std::string suffix = "." + std::to_string(i);
    known.insert("alphabet" + suffix);
    known.insert("prefix" + suffix);
    known.insert("cycle" + suffix);

    const auto* alpha = get("alphabet" + suffix);
    if (!alpha) throw ConfigError("missing 'alphabet" + suffix + "'");
    DimensionSpec spec;
    spec.alphabet = parse_u32_list(*alpha, "alphabet" + suffix);
    if (const auto* prefix = get("prefix" + suffix)) {
      spec.prefix = parse_u32_list(*prefix, "prefix" + suffix);
    }
    if (const auto* cycle = get("cycle" + suffix)) {
      spec.cycle = parse_u32_list(*cycle, "cycle" + suffix);
    } else {
      spec.cycle = spec.alphabet;
    }
    dims.push_back(std::move(spec));
  }

  for (const auto& [key, value] : entries) {
    (void)value;
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in base system config");
  }

  return BaseSystem::create(std::move(dims), static_cast<int>(depth));
}

std::shared_ptr<const BaseSystem> parse_base_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open base system config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_base_system(ss.str());
}

}  // namespace hx
