#include "haltonx/io.hpp"

#include "haltonx/errors.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace hx {

namespace {

std::string render_cell(const Rational& value, const RenderOptions& render) {
  return render.exact ? to_fraction_string(value, true)
                      : to_decimal_string(value, render.precision);
}

}  // namespace

void write_points_csv(std::ostream& out, const BaseSystem& sys, const PermutationFamily& perms,
                      const BigInt& start, const std::vector<ExactPoint>& points,
                      const RenderOptions& render) {
  out << "# haltonx points\n";
  out << "# base_system_digest=" << digest_string(sys.digest()) << "\n";
  out << "# permutations_digest=" << digest_string(perms.digest()) << "\n";
  out << "# start=" << start.str() << " count=" << points.size() << " render="
      << (render.exact ? "exact" : "decimal") << "\n";
  out << "n";
  for (int i = 1; i <= sys.dimensions(); ++i) out << ",x" << i;
  out << "\n";
  BigInt n = start;
  for (const ExactPoint& p : points) {
    out << n.str();
    for (int i = 0; i < sys.dimensions(); ++i) out << "," << render_cell(p.value(i), render);
    out << "\n";
    ++n;
  }
}

void write_points_json(std::ostream& out, const BaseSystem& sys, const PermutationFamily& perms,
                       const BigInt& start, const std::vector<ExactPoint>& points,
                       const RenderOptions& render) {
  nlohmann::ordered_json doc;
  doc["format"] = "haltonx-points";
  doc["base_system"] = {{"digest", digest_string(sys.digest())},
                        {"config", sys.canonical_text()}};
  doc["permutations"] = {{"digest", digest_string(perms.digest())},
                         {"config", perms.canonical_text()}};
  doc["start"] = start.str();
  doc["count"] = points.size();
  doc["render"] = render.exact ? "exact" : "decimal";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  BigInt n = start;
  for (const ExactPoint& p : points) {
    nlohmann::ordered_json row;
    row["n"] = n.str();
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (int i = 0; i < sys.dimensions(); ++i) coords.push_back(render_cell(p.value(i), render));
    row["x"] = std::move(coords);
    rows.push_back(std::move(row));
    ++n;
  }
  doc["points"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

std::vector<std::vector<Rational>> read_points_csv(std::istream& in) {
  std::vector<std::vector<Rational>> points;
  std::string line;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n,", 0) == 0) continue;  // column header

    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.empty()) continue;

    // Leading index column: integer without '/' or '.'; drop it when the
    // remaining cells form the coordinates.
    std::size_t first = 0;
    if (cells.size() >= 2 && cells[0].find('/') == std::string::npos &&
        cells[0].find('.') == std::string::npos) {
      first = 1;
    }
    std::vector<Rational> coords;
    coords.reserve(cells.size() - first);
    for (std::size_t i = first; i < cells.size(); ++i) {
      coords.push_back(parse_rational(cells[i]));
    }
    if (width == 0) width = coords.size();
    if (coords.size() != width) throw ConfigError("CSV rows have inconsistent widths");
    points.push_back(std::move(coords));
  }
  return points;
}

}  // namespace hx
