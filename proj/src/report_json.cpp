#include "haltonx/report_json.hpp"

namespace hx {

using nlohmann::ordered_json;

ordered_json rational_json(const Rational& r, unsigned precision) {
  ordered_json j;
  j["exact"] = to_fraction_string(r);
  j["decimal"] = to_decimal_string(r, precision);
  return j;
}

namespace {

ordered_json weighted_json(const WeightedDstar& w) {
  ordered_json j;
  j["length"] = w.length.str();
  j["dstar"] = rational_json(w.dstar);
  j["weighted"] = rational_json(w.weighted);
  return j;
}

}  // namespace

ordered_json plan_json(const WitnessPlan& plan) {
  ordered_json j;
  j["horizon"] = plan.horizon();
  j["m"] = plan.m();
  j["base_product"] = plan.base_product().str();
  j["full_modulus"] = plan.full_modulus().str();
  j["shift_fraction"] = rational_json(plan.shift_fraction());

  ordered_json dims = ordered_json::array();
  for (int i = 0; i < plan.dimensions(); ++i) {
    const WitnessDimension& d = plan.dim(i);
    ordered_json dj;
    dj["alphabet_index"] = d.alphabet_index;
    dj["base"] = d.base;
    dj["diff_residue"] = d.diff_residue;
    dj["uniform_positions"] = d.uniform_positions;
    dj["complement"] = d.complement.str();
    dj["inverse_class"] = d.inverse_class.str();
    dj["witness_positions"] = d.witness_positions;
    dj["cross_residue"] = d.cross_residue;
    dj["base_gcd"] = d.base_gcd;
    dj["base_reduced"] = d.base_reduced;
    dj["diff_reduced"] = d.diff_reduced;
    dj["shift_numerator"] = d.shift_numerator;
    ordered_json cumulative = ordered_json::array();
    for (int k = 1; k <= static_cast<int>(d.witness_positions.size()); ++k) {
      cumulative.push_back(plan.cumulative_at_witness(i, k).str());
    }
    dj["cumulative_at_witness"] = std::move(cumulative);
    dims.push_back(std::move(dj));
  }
  j["dimensions"] = std::move(dims);
  return j;
}

ordered_json boxes_json(const WitnessBoxes& boxes) {
  ordered_json j;
  ordered_json boundary = ordered_json::array();
  for (const Rational& y : boxes.boundary()) boundary.push_back(rational_json(y));
  j["boundary"] = std::move(boundary);

  ordered_json partial = ordered_json::array();
  for (const auto& row : boxes.boundary_partial()) {
    ordered_json r = ordered_json::array();
    for (const Rational& y : row) r.push_back(to_fraction_string(y));
    partial.push_back(std::move(r));
  }
  j["boundary_partial"] = std::move(partial);
  j["preimage_digits"] = boxes.preimage_digits();
  j["zero_preimage_digits"] = boxes.zero_preimage_digits();

  auto str_array = [](const std::vector<BigInt>& values) {
    ordered_json arr = ordered_json::array();
    for (const BigInt& v : values) arr.push_back(v.str());
    return arr;
  };
  j["box_moduli"] = str_array(boxes.box_moduli());
  j["shifts"] = str_array(boxes.shifts());
  j["box_residues"] = str_array(boxes.box_residues());
  j["box_residues_zero"] = str_array(boxes.box_residues_zero());
  j["start_offset"] = boxes.start_offset().str();
  j["boundary_residue"] = boxes.boundary_residue().str();
  j["start_index"] = boxes.start_index().str();
  return j;
}

ordered_json lemma2_json(const Lemma2Report& report) {
  ordered_json j;
  j["shift_fraction"] = rational_json(report.shift_fraction);
  j["fraction_is_half"] = report.fraction_is_half;
  j["distance_to_half"] = rational_json(report.distance_to_half);
  j["half_distance_bound"] = rational_json(report.half_distance_bound);
  j["half_distance_ok"] = report.half_distance_ok;
  j["hypothesis_met"] = report.hypothesis_met;
  j["averaged_value"] = rational_json(report.averaged_value);
  j["lower_bound"] = rational_json(report.lower_bound);
  j["bound_ok"] = report.bound_ok;
  return j;
}

ordered_json chain_json(const TheoremChainReport& report) {
  ordered_json j;
  j["horizon"] = report.horizon;
  j["m"] = report.m;
  j["base_product"] = report.base_product.str();
  j["full_modulus"] = report.full_modulus.str();
  j["start_index"] = report.start_index.str();
  j["start_offset"] = report.start_offset.str();
  j["n_effective"] = report.n_effective.str();
  j["n_given"] = report.n_given;

  j["averaged_closed"] = rational_json(report.averaged_closed);
  if (report.averaged_brute) {
    j["averaged_brute"] = rational_json(*report.averaged_brute);
  } else {
    j["averaged_brute"] = "skipped (above enumeration cap)";
  }
  j["lemma2"] = lemma2_json(report.lemma2);

  j["window_max"] = rational_json(report.window_max);
  j["window_argmax"] = report.window_argmax.str();
  if (report.window_max_brute) {
    j["window_max_brute"] = rational_json(*report.window_max_brute);
  } else {
    j["window_max_brute"] = "skipped (above enumeration cap)";
  }

  if (report.window_weighted) {
    j["window_weighted_dstar"] = weighted_json(*report.window_weighted);
  } else {
    j["window_weighted_dstar"] = "skipped (above star cap)";
  }
  ordered_json prefixes = ordered_json::array();
  for (const WeightedDstar& w : report.prefix_weighted) prefixes.push_back(weighted_json(w));
  j["prefix_weighted_dstar"] = std::move(prefixes);
  if (report.prefix_weighted_best) {
    j["prefix_weighted_best"] = rational_json(*report.prefix_weighted_best);
  }

  auto tri_state = [](const std::optional<bool>& v) -> ordered_json {
    if (!v) return "not evaluated";
    return *v;
  };
  j["averaging_ok"] = report.averaging_ok;
  j["window_vs_dstar_ok"] = tri_state(report.window_vs_dstar_ok);
  j["chain_ok"] = tri_state(report.chain_ok);
  j["size_ok"] = tri_state(report.size_ok);
  j["log_hypothesis_ok"] = tri_state(report.log_hypothesis_ok);

  j["c1"] = to_decimal_string(report.constants.c1, 17);
  j["c_closed_form"] = to_decimal_string(report.constants.c_closed, 17);
  j["c_instance"] = to_decimal_string(report.instance_c, 17);
  if (report.bound_closed) j["bound_closed"] = to_decimal_string(*report.bound_closed, 17);
  if (report.bound_instance) j["bound_instance"] = to_decimal_string(*report.bound_instance, 17);

  j["identities_ok"] = report.identities_ok;
  return j;
}

}  // namespace hx
