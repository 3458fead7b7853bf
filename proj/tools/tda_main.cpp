// tda: barcode / mapper / diagnose pipelines over CDC-schema weekly mortality
// tables or raw coordinate CSVs.
#include "tda/barcode_svg.hpp"
#include "tda/cover.hpp"
#include "tda/dbscan.hpp"
#include "tda/ingest.hpp"
#include "tda/io_util.hpp"
#include "tda/mapper.hpp"
#include "tda/pca.hpp"
#include "tda/persistence.hpp"
#include "tda/point_cloud.hpp"
#include "tda/simplex_tree.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using namespace tda;

struct RunConfig {
  std::string input_path;
  std::string schema_path;
  bool raw_points = false;
  std::string region = "whole-us";
  std::string variant = "with-dates";
  bool no_dates_flag = false;
  double max_edge_length = 2.0;
  int max_dimension = 2;
  std::vector<int> homology_dims = {0, 1};
  int lens_dim = 2;
  int cover_dim = 0;  // 0: same as lens_dim
  int n_intervals = 20;
  double overlap = 0.3;
  double eps = 30.0;
  int min_samples = 10;
  std::string normalization = "auto";  // zscore | minmax | none
  std::string output_dir;
  double axis_max = 0.0;
  bool dump_filtration = false;
  bool emit_html = false;
  std::vector<std::string> ignore_jurisdictions = {"United States"};
  std::string region_file;
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

fs::path resolve_output_dir(const RunConfig& cfg) {
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("TDA_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

bool parse_full_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

PointCloud load_raw_points(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input: " + path.string());
  auto cells = parse_csv(in);
  if (cells.empty()) throw std::runtime_error("input is empty: " + path.string());

  std::vector<std::string> column_labels;
  size_t first_row = 0;
  {
    double tmp;
    bool numeric = true;
    for (const std::string& c : cells[0]) {
      if (!parse_full_double(c, tmp)) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      column_labels = cells[0];
      first_row = 1;
    }
  }
  if (first_row >= cells.size()) {
    throw std::runtime_error("no data rows in: " + path.string());
  }
  const size_t d = cells[first_row].size();
  const size_t n = cells.size() - first_row;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (size_t r = 0; r < n; ++r) {
    const auto& row = cells[first_row + r];
    if (row.size() != d) {
      throw std::runtime_error("row " + std::to_string(first_row + r + 1) + " has " +
                               std::to_string(row.size()) + " fields, expected " +
                               std::to_string(d));
    }
    for (size_t c = 0; c < d; ++c) {
      double v;
      if (!parse_full_double(row[c], v)) {
        throw std::runtime_error("row " + std::to_string(first_row + r + 1) +
                                 ": cannot parse '" + row[c] + "' as a number");
      }
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  if (!column_labels.empty()) {
    std::vector<std::string> row_labels;
    for (size_t i = 0; i < n; ++i) row_labels.push_back("p" + std::to_string(i));
    return PointCloud(std::move(values), std::move(row_labels), std::move(column_labels));
  }
  return PointCloud(std::move(values));
}

std::string region_token(const std::string& region_name) {
  if (region_name == "Non-Contiguous US") return "non-contiguous";
  std::string token;
  for (char c : to_lower(region_name)) {
    token += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '-';
  }
  return token;
}

DatasetVariant variant_of(const RunConfig& cfg) {
  const std::string v = cfg.no_dates_flag ? "no-dates" : cfg.variant;
  if (v == "with-dates") return DatasetVariant::WithDates;
  if (v == "no-dates") return DatasetVariant::WithoutDates;
  throw std::runtime_error("unknown variant '" + v + "' (expected with-dates or no-dates)");
}

std::string variant_token(DatasetVariant v) {
  return v == DatasetVariant::WithDates ? "dates" : "nodates";
}

NormalizationMode normalization_mode(const std::string& name) {
  if (name == "zscore") return NormalizationMode::ZScore;
  if (name == "minmax") return NormalizationMode::MinMax;
  throw std::runtime_error("unknown normalization '" + name + "'");
}

// Applies the configured normalization; raw-point runs default to none so
// geometric fixtures keep their coordinates.
PointCloud prepare_cloud(const RunConfig& cfg, const PointCloud& cloud) {
  std::string mode = cfg.normalization;
  if (mode == "auto") mode = cfg.raw_points ? "none" : "zscore";
  if (mode == "none") return cloud;
  std::vector<std::string> warnings;
  PointCloud out = normalize_columns(cloud, normalization_mode(mode), &warnings);
  print_warnings(warnings);
  return out;
}

// (artifact name prefix, point cloud) pairs for the requested selection.
std::vector<std::pair<std::string, PointCloud>> load_clouds(const RunConfig& cfg) {
  std::vector<std::pair<std::string, PointCloud>> out;
  if (cfg.raw_points) {
    out.emplace_back("raw", load_raw_points(cfg.input_path));
    return out;
  }
  if (cfg.schema_path.empty()) {
    throw std::runtime_error("--schema is required unless --raw-points is given");
  }
  const SchemaConfig schema = SchemaConfig::from_file(cfg.schema_path);
  LoadStats stats;
  const MortalityTable table = load_cdc_csv(cfg.input_path, schema, &stats);
  for (const auto& [column, count] : stats.imputed_by_column) {
    std::cerr << "warning: column '" << column << "': " << count
              << " blank cell(s) imputed as 0\n";
  }
  const RegionSpec spec =
      cfg.region_file.empty() ? RegionSpec::builtin() : RegionSpec::from_file(cfg.region_file);
  const DatasetVariant variant = variant_of(cfg);
  auto parts = partition_by_region(table, spec, cfg.ignore_jurisdictions);

  auto whole_us = [&]() {
    MortalityTable combined;
    combined.cause_names = table.cause_names;
    for (const auto& [region, states] : spec.regions) {
      const MortalityTable& part = parts.at(region);
      combined.rows.insert(combined.rows.end(), part.rows.begin(), part.rows.end());
    }
    return aggregate_whole_us(combined);
  };

  const std::string selector = to_lower(trim(cfg.region));
  if (selector == "all") {
    for (const auto& [region, states] : spec.regions) {
      const MortalityTable& part = parts.at(region);
      if (part.empty()) {
        std::cerr << "warning: region '" << region << "' has no rows; skipped\n";
        continue;
      }
      out.emplace_back(region_token(region) + "_" + variant_token(variant),
                       to_point_cloud(part, variant));
    }
    out.emplace_back("whole-us_" + variant_token(variant), to_point_cloud(whole_us(), variant));
    return out;
  }
  if (selector == "whole-us") {
    out.emplace_back("whole-us_" + variant_token(variant), to_point_cloud(whole_us(), variant));
    return out;
  }
  for (const auto& [region, states] : spec.regions) {
    if (to_lower(region) == selector || region_token(region) == selector) {
      out.emplace_back(region_token(region) + "_" + variant_token(variant),
                       to_point_cloud(parts.at(region), variant));
      return out;
    }
  }
  std::string known = "whole-us, all";
  for (const auto& [region, states] : spec.regions) known += ", " + region_token(region);
  throw std::runtime_error("unknown region '" + cfg.region + "' (known: " + known + ")");
}

PersistenceDiagram filter_dims(const PersistenceDiagram& diagram, const std::vector<int>& dims) {
  PersistenceDiagram out;
  out.max_homology_dimension = diagram.max_homology_dimension;
  for (const PersistencePair& p : diagram.pairs) {
    if (std::find(dims.begin(), dims.end(), p.dimension) != dims.end()) out.pairs.push_back(p);
  }
  return out;
}

int validated_max_homology_dim(const RunConfig& cfg) {
  if (cfg.homology_dims.empty()) {
    throw std::runtime_error("--homology-dims must name at least one dimension");
  }
  for (int d : cfg.homology_dims) {
    if (d < 0) throw std::runtime_error("homology dimensions must be >= 0");
  }
  return *std::max_element(cfg.homology_dims.begin(), cfg.homology_dims.end());
}

int cmd_barcode(const RunConfig& cfg) {
  const fs::path out_dir = resolve_output_dir(cfg);
  const int max_h = validated_max_homology_dim(cfg);
  for (const auto& [token, cloud] : load_clouds(cfg)) {
    const PointCloud prepared = prepare_cloud(cfg, cloud);
    const DistanceMatrix dm = pairwise_distances(prepared);
    const SimplexTree tree = build_rips(dm, cfg.max_edge_length, cfg.max_dimension);
    const PersistenceDiagram full = compute_persistence(tree, max_h);
    const PersistenceDiagram diagram = filter_dims(full, cfg.homology_dims);
    const std::vector<MergeEvent> merges = compute_merge_events(tree);

    write_diagram_csv(diagram, out_dir / (token + "_diagram.csv"));
    write_merge_csv(merges, out_dir / (token + "_merges.csv"));
    BarcodeRenderOptions render;
    render.axis_max = cfg.axis_max;
    write_barcode_svg(diagram, cfg.homology_dims, out_dir / (token + "_barcode.svg"), render);
    if (cfg.dump_filtration) {
      std::ostringstream dump;
      write_filtration_dump(tree, dump);
      atomic_write_file(out_dir / (token + "_filtration.txt"), dump.str());
    }

    std::cout << token << ": " << prepared.rows() << " points, " << tree.simplex_count()
              << " simplices";
    for (int d : cfg.homology_dims) {
      int bars = 0;
      for (const PersistencePair& p : diagram.pairs) {
        if (p.dimension == d) ++bars;
      }
      std::cout << ", dim" << d << " bars: " << bars;
    }
    std::cout << ", " << merges.size() << " merge events\n";
  }
  return 0;
}

int cmd_mapper(const RunConfig& cfg) {
  const fs::path out_dir = resolve_output_dir(cfg);
  if (cfg.lens_dim < 1 || cfg.lens_dim > 3) {
    throw std::runtime_error("--lens-dim must be 1, 2, or 3");
  }
  const int cover_dim = cfg.cover_dim == 0 ? cfg.lens_dim : cfg.cover_dim;
  if (cover_dim < 1 || cover_dim > cfg.lens_dim) {
    throw std::runtime_error("--cover-dim must be between 1 and the lens dimension");
  }
  for (const auto& [token, cloud] : load_clouds(cfg)) {
    const PointCloud prepared = prepare_cloud(cfg, cloud);
    const ProjectedData projected = pca_fit_transform(prepared, cfg.lens_dim);
    std::vector<std::string> warnings;
    const std::vector<CoverElement> cover = build_cover(
        projected.coords.leftCols(cover_dim), cfg.n_intervals, cfg.overlap, &warnings);
    const MapperGraph graph =
        build_mapper_graph(projected, cover, cfg.eps, cfg.min_samples, &warnings);
    print_warnings(warnings);

    write_graph_json(graph, out_dir / (token + "_graph.json"));
    write_graph_dot(graph, out_dir / (token + "_graph.dot"));
    if (cfg.emit_html) write_graph_html(graph, out_dir / (token + "_graph.html"));
    atomic_write_file(out_dir / (token + "_pca.txt"),
                      pca_report_text(projected, prepared.column_labels));

    std::cout << token << ": " << graph.nodes.size() << " nodes, " << graph.edges.size()
              << " edges, cycle rank " << graph_cycle_rank(graph) << "\n";
  }
  return 0;
}

int cmd_diagnose(const RunConfig& cfg) {
  if (cfg.lens_dim < 1 || cfg.lens_dim > 3) {
    throw std::runtime_error("--lens-dim must be 1, 2, or 3");
  }
  for (const auto& [token, cloud] : load_clouds(cfg)) {
    const PointCloud prepared = prepare_cloud(cfg, cloud);
    const DistanceMatrix original = pairwise_distances(prepared);
    const ProjectedData projected = pca_fit_transform(prepared, cfg.lens_dim);
    const DistanceMatrix reduced = pairwise_distances(projected.coords);
    const DistortionStats stats = distance_distortion_report(original, reduced);
    std::cout << token << ": " << prepared.rows() << " points, " << prepared.cols()
              << " columns, lens dimension " << cfg.lens_dim << "\n"
              << distortion_report_text(stats);
  }
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-i,--input,--input-path", cfg.input_path, "Input CSV path")->required();
  cmd->add_option("--schema", cfg.schema_path,
                  "Schema config mapping logical columns to CSV headers");
  cmd->add_flag("--raw-points", cfg.raw_points,
                "Treat the input as a plain numeric coordinate CSV (bypasses ingestion)");
  cmd->add_option("--region", cfg.region,
                  "west | midwest | northeast | south | non-contiguous | whole-us | all");
  cmd->add_option("--variant", cfg.variant, "with-dates | no-dates")
      ->check(CLI::IsMember({"with-dates", "no-dates"}));
  cmd->add_flag("--no-dates", cfg.no_dates_flag, "Shorthand for --variant no-dates");
  cmd->add_option("--normalization", cfg.normalization,
                  "zscore | minmax | none (default: zscore, none for --raw-points)")
      ->check(CLI::IsMember({"auto", "zscore", "minmax", "none"}));
  cmd->add_option("--output-dir", cfg.output_dir,
                  "Output directory (falls back to $TDA_OUTPUT_DIR, then '.')");
  cmd->add_option("--ignore-jurisdiction", cfg.ignore_jurisdictions,
                  "Jurisdictions to drop on load (default: 'United States')");
  cmd->add_option("--region-file", cfg.region_file,
                  "Override the built-in region spec ('Region: State, State, ...' per line)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vietoris-Rips persistence barcodes and mapper graphs over weekly mortality tables"};
  app.require_subcommand(1);

  RunConfig cfg;

  CLI::App* barcode = app.add_subcommand(
      "barcode", "Rips filtration, persistence diagram, merge events, barcode SVG");
  add_common_options(barcode, cfg);
  barcode->add_option("--max-edge-length", cfg.max_edge_length, "Rips edge threshold")
      ->check(CLI::PositiveNumber);
  barcode->add_option("--max-dimension", cfg.max_dimension, "Largest simplex dimension");
  barcode->add_option("--homology-dims", cfg.homology_dims, "Homology dimensions to report")
      ->delimiter(',');
  barcode->add_option("--axis-max", cfg.axis_max, "Fixed right edge for the barcode axis");
  barcode->add_flag("--dump-filtration", cfg.dump_filtration,
                    "Also write the filtration as '<v0 v1 ...><TAB>value' lines");

  CLI::App* mapper = app.add_subcommand(
      "mapper", "PCA lens, overlapping cover, DBSCAN clustering, nerve graph exports");
  add_common_options(mapper, cfg);
  mapper->add_option("--lens-dim", cfg.lens_dim, "PCA components for the lens (1-3)");
  mapper->add_option("--cover-dim", cfg.cover_dim,
                     "Lens axes covered by intervals (default: all lens axes)");
  mapper->add_option("--n-intervals", cfg.n_intervals, "Intervals per covered axis");
  mapper->add_option("--overlap", cfg.overlap, "Consecutive-interval overlap fraction");
  mapper->add_option("--eps", cfg.eps, "DBSCAN radius");
  mapper->add_option("--min-samples", cfg.min_samples, "DBSCAN core-point threshold");
  mapper->add_flag("--html", cfg.emit_html, "Also write a self-contained HTML view");

  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "Pairwise-distance distortion between original and PCA-reduced space");
  add_common_options(diagnose, cfg);
  diagnose->add_option("--lens-dim", cfg.lens_dim, "PCA components (1-3)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (barcode->parsed()) return cmd_barcode(cfg);
    if (mapper->parsed()) return cmd_mapper(cfg);
    if (diagnose->parsed()) return cmd_diagnose(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
