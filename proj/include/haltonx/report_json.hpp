#pragma once

#include "haltonx/witness.hpp"

#include <nlohmann/json.hpp>

namespace hx {

// JSON renderings of the witness structures for reports and regression
// snapshots. Rationals appear as "num/den" strings with a decimal companion;
// big integers as decimal strings. Key order is fixed.
nlohmann::ordered_json rational_json(const Rational& r, unsigned precision = 15);
nlohmann::ordered_json plan_json(const WitnessPlan& plan);
nlohmann::ordered_json boxes_json(const WitnessBoxes& boxes);
nlohmann::ordered_json lemma2_json(const Lemma2Report& report);
nlohmann::ordered_json chain_json(const TheoremChainReport& report);

}  // namespace hx
