#include "tda/ingest.hpp"

#include "tda/io_util.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tda {

std::string canonical_jurisdiction(const std::string& name) {
  std::string key = to_lower(trim(name));
  static const std::unordered_map<std::string, std::string> aliases = {
      {"district of columbia", "washington d.c."},
      {"washington dc", "washington d.c."},
      {"washington, d.c.", "washington d.c."},
  };
  auto it = aliases.find(key);
  return it != aliases.end() ? it->second : key;
}

SchemaConfig SchemaConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open schema config: " + path.string());
  }
  SchemaConfig cfg;
  cfg.cause_columns.clear();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("schema config line " + std::to_string(line_no) +
                               ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "year") {
      cfg.year_column = value;
    } else if (key == "week") {
      cfg.week_column = value;
    } else if (key == "jurisdiction") {
      cfg.jurisdiction_column = value;
    } else if (key == "cause") {
      cfg.cause_columns.push_back(value);
    } else if (key == "start_year") {
      cfg.start_year = std::stoi(value);
    } else if (key == "start_week") {
      cfg.start_week = std::stoi(value);
    } else if (key == "end_year") {
      cfg.end_year = std::stoi(value);
    } else if (key == "end_week") {
      cfg.end_week = std::stoi(value);
    } else {
      throw std::runtime_error("schema config line " + std::to_string(line_no) +
                               ": unknown key '" + key + "'");
    }
  }
  if (cfg.cause_columns.empty()) {
    throw std::runtime_error("schema config declares no cause columns");
  }
  return cfg;
}

RegionSpec RegionSpec::builtin() {
  RegionSpec spec;
  spec.regions = {
      {"West",
       {"California", "Arizona", "New Mexico", "Nevada", "Utah", "Colorado", "Wyoming", "Oregon",
        "Idaho", "Washington", "Montana"}},
      {"Midwest",
       {"Missouri", "Kansas", "Illinois", "Indiana", "Ohio", "Nebraska", "Iowa", "Michigan",
        "South Dakota", "Wisconsin", "Minnesota", "North Dakota"}},
      {"Northeast",
       {"Washington D.C.", "Maryland", "Delaware", "New Jersey", "Pennsylvania", "New York City",
        "New York", "Connecticut", "Rhode Island", "Massachusetts", "Vermont", "New Hampshire",
        "Maine"}},
      {"South",
       {"Texas", "Florida", "Louisiana", "Mississippi", "Alabama", "Georgia", "South Carolina",
        "Arkansas", "Oklahoma", "Tennessee", "North Carolina", "Kentucky", "Virginia",
        "West Virginia"}},
      {"Non-Contiguous US", {"Alaska", "Hawaii", "Puerto Rico"}},
  };
  return spec;
}

RegionSpec RegionSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open region spec: " + path.string());
  }
  RegionSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t colon = stripped.find(':');
    if (colon == std::string::npos) {
      throw std::runtime_error("region spec line " + std::to_string(line_no) +
                               ": expected 'Region: State, State, ...'");
    }
    std::vector<std::string> states;
    std::stringstream rest(stripped.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const std::string state = trim(item);
      if (!state.empty()) states.push_back(state);
    }
    spec.regions.emplace_back(trim(stripped.substr(0, colon)), std::move(states));
  }
  // Disjointness across regions.
  std::set<std::string> seen;
  for (const auto& [region, states] : spec.regions) {
    for (const std::string& s : states) {
      if (!seen.insert(canonical_jurisdiction(s)).second) {
        throw std::runtime_error("region spec: jurisdiction '" + s +
                                 "' appears in more than one region");
      }
    }
  }
  return spec;
}

const std::vector<std::string>* RegionSpec::find(const std::string& region_name) const {
  const std::string key = to_lower(trim(region_name));
  for (const auto& [region, states] : regions) {
    if (to_lower(region) == key) return &states;
  }
  return nullptr;
}

std::vector<std::string> RegionSpec::region_names() const {
  std::vector<std::string> names;
  names.reserve(regions.size());
  for (const auto& [region, states] : regions) names.push_back(region);
  return names;
}

namespace {

long long parse_count(const std::string& cell, int row_no, const std::string& column) {
  const std::string v = trim(cell);
  size_t pos = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("row " + std::to_string(row_no) + ": cannot parse '" + v +
                             "' in column '" + column + "' as a count");
  }
  if (pos != v.size() || parsed < 0) {
    throw std::runtime_error("row " + std::to_string(row_no) + ": cannot parse '" + v +
                             "' in column '" + column + "' as a non-negative count");
  }
  return parsed;
}

}  // namespace

MortalityTable load_cdc_csv(const std::filesystem::path& path, const SchemaConfig& schema,
                            LoadStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open input: " + path.string());
  }
  const auto cells = parse_csv(in);
  if (cells.empty()) {
    throw std::runtime_error("input is empty: " + path.string());
  }
  const std::vector<std::string>& header = cells.front();
  auto column_of = [&](const std::string& name) {
    for (size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return static_cast<int>(i);
    }
    throw std::runtime_error("missing required column '" + name + "' in " + path.string());
  };

  const int year_col = column_of(schema.year_column);
  const int week_col = column_of(schema.week_column);
  const int jur_col = column_of(schema.jurisdiction_column);
  std::vector<int> cause_cols;
  for (const std::string& c : schema.cause_columns) cause_cols.push_back(column_of(c));

  const long long range_lo = static_cast<long long>(schema.start_year) * 100 + schema.start_week;
  const long long range_hi = static_cast<long long>(schema.end_year) * 100 + schema.end_week;

  MortalityTable table;
  table.cause_names = schema.cause_columns;
  std::set<std::tuple<int, int, std::string>> keys;
  for (size_t r = 1; r < cells.size(); ++r) {
    const auto& row = cells[r];
    const int row_no = static_cast<int>(r) + 1;  // 1-based, header included
    auto cell = [&](int col) -> const std::string& {
      static const std::string empty;
      return col < static_cast<int>(row.size()) ? row[static_cast<size_t>(col)] : empty;
    };
    MortalityRow rec;
    rec.year = static_cast<int>(parse_count(cell(year_col), row_no, schema.year_column));
    rec.week = static_cast<int>(parse_count(cell(week_col), row_no, schema.week_column));
    if (rec.week < 1 || rec.week > 53) {
      throw std::runtime_error("row " + std::to_string(row_no) + ": week " +
                               std::to_string(rec.week) + " outside 1..53");
    }
    rec.jurisdiction = trim(cell(jur_col));
    if (rec.jurisdiction.empty()) {
      throw std::runtime_error("row " + std::to_string(row_no) + ": empty jurisdiction");
    }
    const long long key = static_cast<long long>(rec.year) * 100 + rec.week;
    if (key < range_lo || key > range_hi) {
      if (stats != nullptr) ++stats->dropped_out_of_range;
      continue;
    }
    if (!keys.emplace(rec.year, rec.week, canonical_jurisdiction(rec.jurisdiction)).second) {
      throw std::runtime_error("row " + std::to_string(row_no) + ": duplicate (year, week, "
                               "jurisdiction) = (" + std::to_string(rec.year) + ", " +
                               std::to_string(rec.week) + ", " + rec.jurisdiction + ")");
    }
    rec.cause_counts.reserve(cause_cols.size());
    for (size_t c = 0; c < cause_cols.size(); ++c) {
      const std::string& raw = cell(cause_cols[c]);
      if (trim(raw).empty()) {
        rec.cause_counts.push_back(0.0);  // suppressed cell
        if (stats != nullptr) ++stats->imputed_by_column[schema.cause_columns[c]];
      } else {
        rec.cause_counts.push_back(
            static_cast<double>(parse_count(raw, row_no, schema.cause_columns[c])));
      }
    }
    table.rows.push_back(std::move(rec));
  }
  return table;
}

std::map<std::string, MortalityTable> partition_by_region(const MortalityTable& table,
                                                          const RegionSpec& spec,
                                                          const std::vector<std::string>& ignore) {
  std::set<std::string> ignored;
  for (const std::string& j : ignore) ignored.insert(canonical_jurisdiction(j));

  // jurisdiction key -> (region, position in the region's jurisdiction order)
  std::unordered_map<std::string, std::pair<std::string, int>> where;
  for (const auto& [region, states] : spec.regions) {
    for (size_t i = 0; i < states.size(); ++i) {
      where[canonical_jurisdiction(states[i])] = {region, static_cast<int>(i)};
    }
  }

  std::map<std::string, MortalityTable> out;
  for (const auto& [region, states] : spec.regions) {
    out[region].cause_names = table.cause_names;
  }

  std::vector<std::string> unknown;
  std::map<std::string, std::vector<std::pair<std::tuple<int, int, int>, const MortalityRow*>>>
      staged;
  for (const MortalityRow& row : table.rows) {
    const std::string key = canonical_jurisdiction(row.jurisdiction);
    if (ignored.count(key)) continue;
    auto it = where.find(key);
    if (it == where.end()) {
      if (std::find(unknown.begin(), unknown.end(), row.jurisdiction) == unknown.end()) {
        unknown.push_back(row.jurisdiction);
      }
      continue;
    }
    staged[it->second.first].push_back({{it->second.second, row.year, row.week}, &row});
  }
  if (!unknown.empty()) {
    std::string msg = "unknown jurisdictions (not in region spec or ignore list):";
    for (const std::string& j : unknown) msg += " '" + j + "'";
    throw std::runtime_error(msg);
  }
  for (auto& [region, rows] : staged) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [order_key, row] : rows) out[region].rows.push_back(*row);
  }
  return out;
}

MortalityTable aggregate_whole_us(const MortalityTable& table) {
  MortalityTable out;
  out.cause_names = table.cause_names;
  std::map<std::pair<int, int>, std::vector<double>> sums;
  for (const MortalityRow& row : table.rows) {
    auto& acc = sums[{row.year, row.week}];
    if (acc.empty()) acc.assign(row.cause_counts.size(), 0.0);
    for (size_t c = 0; c < row.cause_counts.size(); ++c) acc[c] += row.cause_counts[c];
  }
  for (const auto& [yw, counts] : sums) {
    MortalityRow rec;
    rec.year = yw.first;
    rec.week = yw.second;
    rec.jurisdiction = "US";
    rec.cause_counts = counts;
    out.rows.push_back(std::move(rec));
  }
  return out;
}

PointCloud to_point_cloud(const MortalityTable& table, DatasetVariant variant) {
  if (table.empty()) {
    throw std::invalid_argument("cannot build a point cloud from an empty table");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
  const Eigen::Index m = static_cast<Eigen::Index>(table.cause_names.size());
  const bool with_dates = variant == DatasetVariant::WithDates;
  const Eigen::Index d = with_dates ? m + 2 : m;

  Eigen::MatrixXd values(n, d);
  std::vector<std::string> row_labels;
  row_labels.reserve(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const MortalityRow& row = table.rows[static_cast<size_t>(i)];
    Eigen::Index j = 0;
    if (with_dates) {
      values(i, j++) = static_cast<double>(row.year);
      values(i, j++) = static_cast<double>(row.week);
    }
    for (double c : row.cause_counts) values(i, j++) = c;
    char label[64];
    std::snprintf(label, sizeof(label), " %04d-W%02d", row.year, row.week);
    row_labels.push_back(row.jurisdiction + label);
  }
  std::vector<std::string> column_labels;
  if (with_dates) {
    column_labels.push_back("year");
    column_labels.push_back("week");
  }
  for (const std::string& c : table.cause_names) column_labels.push_back(c);
  return PointCloud(std::move(values), std::move(row_labels), std::move(column_labels));
}

}  // namespace tda
