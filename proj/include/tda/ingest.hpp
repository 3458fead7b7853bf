// Weekly mortality table ingestion: schema-configured CSV loading, the
// five-region partition, Whole-US aggregation, and the with/without-dates
// point-cloud materialization.
#pragma once

#include "tda/point_cloud.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tda {

struct MortalityRow {
  int year = 0;
  int week = 0;  // 1..53
  std::string jurisdiction;
  std::vector<double> cause_counts;  // non-negative integers, schema order
};

struct MortalityTable {
  std::vector<std::string> cause_names;
  std::vector<MortalityRow> rows;

  bool empty() const { return rows.empty(); }
};

// Maps logical columns to CSV header names, fixes the cause-column order, and
// carries the (year, week) ingestion window. Text format: one `key = value`
// per line, `#` comments; the `cause` key repeats, once per cause column in
// order.
struct SchemaConfig {
  std::string year_column = "MMWR Year";
  std::string week_column = "MMWR Week";
  std::string jurisdiction_column = "Jurisdiction of Occurrence";
  std::vector<std::string> cause_columns;
  int start_year = 2020;
  int start_week = 1;
  int end_year = 2023;
  int end_week = 39;

  static SchemaConfig from_file(const std::filesystem::path& path);
};

// Region name -> jurisdiction list, in a fixed order. The built-in spec is the
// five-group partition of the contiguous-plus-territories jurisdictions, with
// New York City kept distinct from New York.
struct RegionSpec {
  std::vector<std::pair<std::string, std::vector<std::string>>> regions;

  static RegionSpec builtin();
  // One `Region: Jurisdiction, Jurisdiction, ...` per line.
  static RegionSpec from_file(const std::filesystem::path& path);

  const std::vector<std::string>* find(const std::string& region_name) const;
  std::vector<std::string> region_names() const;
};

enum class DatasetVariant { WithDates, WithoutDates };

struct LoadStats {
  std::map<std::string, int> imputed_by_column;  // blank/suppressed cells -> 0
  int dropped_out_of_range = 0;
};

// Loads and types the CSV. Blank count cells impute to 0 (tallied per column
// in stats); rows outside the schema's date window are dropped. Throws on a
// missing required column (naming it), an unparsable numeric cell (with the
// row number), or a duplicate (year, week, jurisdiction) key.
MortalityTable load_cdc_csv(const std::filesystem::path& path, const SchemaConfig& schema,
                            LoadStats* stats = nullptr);

// Row-preserving partition keyed by region name; within each region rows are
// ordered by the spec's jurisdiction order, then (year, week). Jurisdictions
// in `ignore` are dropped; any other jurisdiction missing from the spec is an
// error listing the offenders.
std::map<std::string, MortalityTable> partition_by_region(
    const MortalityTable& table, const RegionSpec& spec,
    const std::vector<std::string>& ignore = {});

// One row per (year, week) with every cause summed over jurisdictions;
// jurisdiction becomes "US".
MortalityTable aggregate_whole_us(const MortalityTable& table);

// WithDates: columns [year, week, cause...]; WithoutDates: [cause...].
// Row labels are "Jurisdiction YYYY-Www".
PointCloud to_point_cloud(const MortalityTable& table, DatasetVariant variant);

// Canonical jurisdiction key: trimmed, lower-cased, aliases folded
// (e.g. "District of Columbia" and "Washington D.C." agree).
std::string canonical_jurisdiction(const std::string& name);

}  // namespace tda
