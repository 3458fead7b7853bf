// Acceptance suite: one criterion per function, one [PASS]/[FAIL]/[SKIP] line
// per criterion, nonzero exit if anything fails. The real-data smoke run
// activates only when TDA_CDC_CSV points at the CDC export.
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

#include "oracles.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace tda;
using Clock = std::chrono::steady_clock;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Skip : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Failure(message);
}

Eigen::MatrixXd distances_of(const Eigen::MatrixXd& pts) {
  return pairwise_distances(pts);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) { return format_double(v, 6); }

// --- 1. Circle homology ----------------------------------------------------

std::string criterion_circle_homology() {
  const auto start = Clock::now();
  const Eigen::MatrixXd pts = testsupport::circle_points(100);
  const Eigen::MatrixXd dm = distances_of(pts);
  const SimplexTree tree = build_rips(dm, 2.0, 2);
  const PersistenceDiagram diagram = compute_persistence(tree, 1);
  const double elapsed = seconds_since(start);

  std::vector<PersistencePair> dim1;
  for (const auto& p : diagram.pairs) {
    if (p.dimension == 1) dim1.push_back(p);
  }
  require(dim1.size() == 1,
          "expected exactly one dim-1 bar, got " + std::to_string(dim1.size()));
  const double persistence = dim1[0].death - dim1[0].birth;
  require(persistence > 1.0, "persistence " + fmt(persistence) + " not > 1.0");
  require(elapsed < 5.0, "runtime " + fmt(elapsed) + "s exceeds 5s");

  const auto ordered = tree.simplices_in_filtration_order();
  const ReductionResult fast = reduce_boundary_matrix(ordered);
  const ReductionResult naive = oracles::naive_reduce(ordered);
  require(fast.pairs == naive.pairs && fast.unpaired == naive.unpaired,
          "naive reduction disagrees with the clearing reduction");
  // the oracle's own dim-1 bar
  bool oracle_bar_found = false;
  for (const auto& [b, d] : naive.pairs) {
    const auto& birth = ordered[static_cast<size_t>(b)];
    const auto& death = ordered[static_cast<size_t>(d)];
    if (birth.dimension() == 1 && death.filtration > birth.filtration) {
      require(!oracle_bar_found, "oracle found more than one dim-1 bar");
      oracle_bar_found = true;
      require(birth.filtration == dim1[0].birth && death.filtration == dim1[0].death,
              "oracle bar differs from pipeline bar");
    }
  }
  require(oracle_bar_found, "oracle found no dim-1 bar");
  return "one dim-1 bar (" + fmt(dim1[0].birth) + ", " + fmt(dim1[0].death) +
         "), persistence " + fmt(persistence) + ", oracle identical, " + fmt(elapsed) + "s";
}

// --- 2. Square fixture ------------------------------------------------------

std::string criterion_square() {
  const SimplexTree tree = build_rips(distances_of(testsupport::unit_square_points()), 2.0, 2);
  const PersistenceDiagram diagram = compute_persistence(tree, 1);
  std::vector<PersistencePair> dim1;
  for (const auto& p : diagram.pairs) {
    if (p.dimension == 1) dim1.push_back(p);
  }
  require(dim1.size() == 1, "expected one dim-1 bar, got " + std::to_string(dim1.size()));
  require(std::abs(dim1[0].birth - 1.0) <= 1e-9, "birth " + fmt(dim1[0].birth) + " != 1");
  require(std::abs(dim1[0].death - std::sqrt(2.0)) <= 1e-9,
          "death " + fmt(dim1[0].death) + " != sqrt(2)");
  const auto ordered = tree.simplices_in_filtration_order();
  const ReductionResult naive = oracles::naive_reduce(ordered);
  require(naive.pairs == reduce_boundary_matrix(ordered).pairs,
          "exhaustive reduction disagrees");
  return "bar (" + fmt(dim1[0].birth) + ", " + fmt(dim1[0].death) + ") within 1e-9";
}

// --- 3. H0 cross-check -------------------------------------------------------

std::string criterion_h0_crosscheck() {
  const auto start = Clock::now();
  std::mt19937 rng(20200101);
  std::uniform_real_distribution<double> pick_t(0.0, 1.0);
  int checks = 0;
  for (int cloud = 0; cloud < 50; ++cloud) {
    const Eigen::MatrixXd pts = testsupport::random_points(rng, 20, 3);
    const Eigen::MatrixXd dm = distances_of(pts);
    const double max_edge = 0.8;
    const SimplexTree tree = build_rips(dm, max_edge, 1);
    const PersistenceDiagram diagram = compute_persistence(tree, 0);
    for (int s = 0; s < 20; ++s) {
      const double t = pick_t(rng);
      const int via_reduction = betti_at(diagram, t, 0);
      const int via_union_find = oracles::components_at(dm, max_edge, t);
      require(via_reduction == via_union_find,
              "betti mismatch at t=" + fmt(t) + ": " + std::to_string(via_reduction) + " vs " +
                  std::to_string(via_union_find));
      ++checks;
    }
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s exceeds 30s");
  return std::to_string(checks) + " betti/union-find checks, 0 mismatches, " + fmt(elapsed) +
         "s";
}

// --- 4. Oracle equivalence ---------------------------------------------------

std::string criterion_oracle_equivalence() {
  std::mt19937 rng(20200102);
  std::uniform_real_distribution<double> edge_scale(0.4, 1.2);
  int complexes = 0;
  size_t total_pairs = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 4 + static_cast<int>(rng() % 9);  // 4..12
    const int dim = 2 + static_cast<int>(rng() % 2);
    const Eigen::MatrixXd dm = distances_of(testsupport::random_points(rng, n, dim));
    const SimplexTree tree = build_rips(dm, edge_scale(rng), 3);
    const auto ordered = tree.simplices_in_filtration_order();
    const ReductionResult fast = reduce_boundary_matrix(ordered);
    const ReductionResult naive = oracles::naive_reduce(ordered);
    require(fast.pairs == naive.pairs,
            "pair multiset mismatch on complex " + std::to_string(rep));
    require(fast.unpaired == naive.unpaired,
            "unpaired set mismatch on complex " + std::to_string(rep));
    ++complexes;
    total_pairs += fast.pairs.size();
  }
  return std::to_string(complexes) + " complexes, " + std::to_string(total_pairs) +
         " pairs compared, 0 mismatches";
}

// --- 5. Euler consistency ----------------------------------------------------

std::string criterion_euler() {
  std::mt19937 rng(20200103);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int checks = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5 + static_cast<int>(rng() % 3);  // 5..7: full flag complex is cheap
    const Eigen::MatrixXd dm = distances_of(testsupport::random_points(rng, n, 3));
    const double diameter = dm.maxCoeff();
    const double max_edge = diameter * (0.4 + 0.8 * uni(rng));
    const int max_dim = n - 1;  // no dimension cap can bind
    const SimplexTree tree = build_rips(dm, max_edge, max_dim);
    const PersistenceDiagram diagram = compute_persistence(tree, n - 2);
    const auto ordered = tree.simplices_in_filtration_order();
    for (int s = 0; s < 10; ++s) {
      const double t = diameter * uni(rng);
      long long chi_simplices = 0;
      for (const auto& fs : ordered) {
        if (fs.filtration <= t) chi_simplices += (fs.dimension() % 2 == 0) ? 1 : -1;
      }
      long long chi_betti = 0;
      for (int k = 0; k <= n - 2; ++k) {
        const long long b = betti_at(diagram, t, k);
        chi_betti += (k % 2 == 0) ? b : -b;
      }
      require(chi_simplices == chi_betti,
              "chi mismatch at t=" + fmt(t) + ": simplices " + std::to_string(chi_simplices) +
                  " vs betti " + std::to_string(chi_betti));
      ++checks;
    }
  }
  return std::to_string(checks) + " Euler checks, exact equality";
}

// --- 6. Cover contract --------------------------------------------------------

std::string criterion_cover_contract() {
  std::mt19937 rng(20200104);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int coverage_checks = 0, overlap_checks = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const double lo = -10.0 + 20.0 * uni(rng);
    const double range = 0.01 + 20.0 * uni(rng);
    const int n_intervals = 1 + static_cast<int>(rng() % 40);
    const double overlap = 0.95 * uni(rng);

    Eigen::MatrixXd coords(30, 1);
    coords(0, 0) = lo;
    coords(1, 0) = lo + range;  // pin the exact range endpoints
    for (int i = 2; i < 30; ++i) coords(i, 0) = lo + range * uni(rng);

    const auto cover = build_cover(coords, n_intervals, overlap);
    require(static_cast<int>(cover.size()) == n_intervals, "unexpected element count");
    for (int i = 0; i < 30; ++i) {
      bool covered = false;
      for (const auto& e : cover) {
        if (e.contains(coords.row(i))) {
          covered = true;
          break;
        }
      }
      require(covered, "uncovered point in rep " + std::to_string(rep));
      ++coverage_checks;
    }
    const double length = range / (n_intervals * (1.0 - overlap) + overlap);
    for (size_t i = 0; i + 1 < cover.size(); ++i) {
      const double shared = cover[i].box[0][1] - cover[i + 1].box[0][0];
      require(std::abs(shared - overlap * length) <= 1e-9,
              "shared length " + fmt(shared) + " != overlap*L " + fmt(overlap * length));
      ++overlap_checks;
    }
  }
  return std::to_string(coverage_checks) + " coverage and " + std::to_string(overlap_checks) +
         " overlap checks within 1e-9";
}

// --- 7. DBSCAN parity -----------------------------------------------------------

std::string criterion_dbscan_parity() {
  const auto start = Clock::now();
  std::mt19937 rng(20200105);
  std::uniform_real_distribution<double> pick_eps(0.03, 0.35);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 50 + static_cast<int>(rng() % 151);  // 50..200
    const Eigen::MatrixXd coords = testsupport::random_points(rng, n, 2);
    const double eps = pick_eps(rng);
    const int min_samples = 1 + static_cast<int>(rng() % 8);
    const auto impl = dbscan(coords, eps, min_samples);
    const auto expect = oracles::dbscan_by_reachability(coords, eps, min_samples);
    require(oracles::labels_equivalent(impl, expect),
            "label mismatch in rep " + std::to_string(rep));
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 10.0, "runtime " + fmt(elapsed) + "s exceeds 10s");
  return "100 point sets, 0 mismatches, " + fmt(elapsed) + "s";
}

// --- 8. Mapper circle ------------------------------------------------------------

std::string criterion_mapper_circle() {
  // Documented parameters: 60-point wobbled circle, 2-d PCA reduction,
  // 1-d cover over component 0, 6 intervals, 0.4 overlap, eps 0.25,
  // min_samples 2.
  auto build = [] {
    const Eigen::MatrixXd pts = testsupport::circle_points(60, 0.05);
    const ProjectedData projected = pca_fit_transform(pts, 2);
    const auto cover = build_cover(projected.coords.leftCols(1), 6, 0.4);
    return build_mapper_graph(projected, cover, 0.25, 2);
  };
  const MapperGraph graph = build();
  require(graph_cycle_rank(graph) == 1,
          "cycle rank " + std::to_string(graph_cycle_rank(graph)) + " != 1");
  require(graph.nodes.size() >= 6,
          "only " + std::to_string(graph.nodes.size()) + " nodes, expected >= 6");
  const MapperGraph again = build();
  require(graph_to_json(graph) == graph_to_json(again), "graph not deterministic across runs");
  return std::to_string(graph.nodes.size()) + " nodes, " + std::to_string(graph.edges.size()) +
         " edges, cycle rank 1, deterministic";
}

// --- 9. Dates spike ---------------------------------------------------------------

std::string criterion_dates_spike() {
  testsupport::TempDir tmp;
  testsupport::write_file(tmp.file("cdc.csv"), testsupport::synthetic_cdc_csv());
  testsupport::write_file(tmp.file("schema.cfg"), testsupport::synthetic_cdc_schema());
  const MortalityTable table =
      load_cdc_csv(tmp.file("cdc.csv"), SchemaConfig::from_file(tmp.file("schema.cfg")));
  const MortalityTable region =
      partition_by_region(table, RegionSpec::builtin()).at("Non-Contiguous US");
  require(region.rows.size() == 312, "fixture should partition into 312 rows");

  auto spike_of = [&](DatasetVariant variant) {
    const PointCloud cloud = to_point_cloud(region, variant);
    const PointCloud normalized = normalize_columns(cloud, NormalizationMode::MinMax);
    const SimplexTree tree = build_rips(pairwise_distances(normalized), 2.0, 2);
    const PersistenceDiagram diagram = compute_persistence(tree, 1);
    return dim1_spike_count(diagram, 0.9, 1.1);
  };
  const int with_dates = spike_of(DatasetVariant::WithDates);
  const int without_dates = spike_of(DatasetVariant::WithoutDates);
  require(with_dates >= 3 * without_dates,
          "with-dates spike " + std::to_string(with_dates) + " < 3x without-dates " +
              std::to_string(without_dates));
  require(with_dates >= 3, "with-dates spike " + std::to_string(with_dates) + " < 3");
  return "spike counts: with dates " + std::to_string(with_dates) + ", without " +
         std::to_string(without_dates);
}

// --- 10. PCA correctness -------------------------------------------------------------

std::string criterion_pca() {
  std::mt19937 rng(20200106);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 8);  // 3..10
    const int d = 2 + static_cast<int>(rng() % 5);  // 2..6
    const int k_max = std::min(n - 1, d);
    const int k = 1 + static_cast<int>(rng() % k_max);
    const Eigen::MatrixXd v = testsupport::random_points(rng, n, d, 3.0);
    const ProjectedData impl = pca_fit_transform(v, k);
    const oracles::PcaOracleResult expect = oracles::pca_by_jacobi(v, k);
    const double ratio_err =
        (impl.explained_variance_ratio - expect.ratios).cwiseAbs().maxCoeff();
    const double coord_err = (impl.coords - expect.coords).cwiseAbs().maxCoeff();
    require(ratio_err <= 1e-9, "ratio error " + fmt(ratio_err) + " in rep " +
                                   std::to_string(rep));
    require(coord_err <= 1e-9, "coord error " + fmt(coord_err) + " in rep " +
                                   std::to_string(rep));
  }
  // rank-deficient inputs: trailing ratios vanish
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5 + static_cast<int>(rng() % 6);
    const int d = 3 + static_cast<int>(rng() % 4);
    const int k = std::min(n - 1, d);
    const int rank = 1 + static_cast<int>(rng() % (k - 1));
    const Eigen::MatrixXd v =
        testsupport::random_points(rng, n, rank) * testsupport::random_points(rng, rank, d);
    const ProjectedData impl = pca_fit_transform(v, k);
    for (int i = rank; i < k; ++i) {
      require(impl.explained_variance_ratio(i) <= 1e-12,
              "trailing ratio " + fmt(impl.explained_variance_ratio(i)) + " above 1e-12");
    }
  }
  return "100 oracle comparisons within 1e-9, 20 rank-deficient tails within 1e-12";
}

// --- 11. Determinism -------------------------------------------------------------------

std::string criterion_determinism() {
  testsupport::TempDir in_dir;
  testsupport::write_file(in_dir.file("cdc.csv"), testsupport::synthetic_cdc_csv());
  testsupport::write_file(in_dir.file("schema.cfg"), testsupport::synthetic_cdc_schema());
  testsupport::TempDir out1, out2;

  auto run = [&](const std::string& out_dir) {
    const std::string base = std::string(TDA_CLI_PATH) + " ";
    const std::string common = " -i " + in_dir.file("cdc.csv").string() + " --schema " +
                               in_dir.file("schema.cfg").string() +
                               " --region non-contiguous --normalization minmax --output-dir " +
                               out_dir + " >/dev/null 2>&1";
    if (std::system((base + "barcode" + common).c_str()) != 0) {
      throw Failure("barcode run failed");
    }
    if (std::system((base + "mapper --eps 0.2 --min-samples 3" + common).c_str()) != 0) {
      throw Failure("mapper run failed");
    }
  };
  run(out1.path().string());
  run(out2.path().string());

  int compared = 0;
  for (const char* name :
       {"non-contiguous_dates_diagram.csv", "non-contiguous_dates_merges.csv",
        "non-contiguous_dates_graph.json", "non-contiguous_dates_graph.dot",
        "non-contiguous_dates_barcode.svg", "non-contiguous_dates_pca.txt"}) {
    const std::string a = testsupport::read_file(out1.file(name));
    const std::string b = testsupport::read_file(out2.file(name));
    require(!a.empty(), std::string(name) + " is empty");
    require(a == b, std::string(name) + " differs between runs");
    ++compared;
  }
  return std::to_string(compared) + " artifacts byte-identical across runs";
}

// --- 12. Optional real-data smoke --------------------------------------------------------

std::string criterion_real_data() {
  const char* csv_env = std::getenv("TDA_CDC_CSV");
  if (csv_env == nullptr || *csv_env == '\0') {
    throw Skip("TDA_CDC_CSV not set");
  }
  const auto start = Clock::now();
  const char* schema_env = std::getenv("TDA_CDC_SCHEMA");
  const SchemaConfig schema = schema_env != nullptr && *schema_env != '\0'
                                  ? SchemaConfig::from_file(schema_env)
                                  : SchemaConfig::from_file(TDA_DEFAULT_SCHEMA);
  LoadStats stats;
  const MortalityTable table = load_cdc_csv(csv_env, schema, &stats);
  const auto parts = partition_by_region(table, RegionSpec::builtin(), {"United States"});
  const MortalityTable non_contiguous = parts.at("Non-Contiguous US");

  MortalityTable combined;
  combined.cause_names = table.cause_names;
  for (const auto& [region, part] : parts) {
    combined.rows.insert(combined.rows.end(), part.rows.begin(), part.rows.end());
  }
  const MortalityTable us = aggregate_whole_us(combined);
  require(std::abs(static_cast<int>(us.rows.size()) - 195) <= 10,
          "whole-US rows " + std::to_string(us.rows.size()) + " outside 195 +- 10");
  require(std::abs(static_cast<int>(non_contiguous.rows.size()) - 580) <= 10,
          "non-contiguous rows " + std::to_string(non_contiguous.rows.size()) +
              " outside 580 +- 10");

  int pipelines = 0;
  auto run_pipelines = [&](const MortalityTable& part) {
    const PointCloud cloud = to_point_cloud(part, DatasetVariant::WithDates);
    const PointCloud normalized = normalize_columns(cloud, NormalizationMode::ZScore);
    const DistanceMatrix dm = pairwise_distances(normalized);
    const SimplexTree tree = build_rips(dm, 2.0, 2);
    const PersistenceDiagram diagram = compute_persistence(tree, 1);
    (void)compute_merge_events(tree);
    (void)diagram;
    const ProjectedData projected = pca_fit_transform(normalized, 2);
    const auto cover = build_cover(projected.coords, 20, 0.3);
    (void)build_mapper_graph(projected, cover, 30.0, 10);
    ++pipelines;
  };
  for (const auto& [region, part] : parts) {
    run_pipelines(part);
  }
  run_pipelines(us);
  const double elapsed = seconds_since(start);
  require(elapsed < 600.0, "runtime " + fmt(elapsed) + "s exceeds 10 minutes");
  return std::to_string(pipelines) + " region pipelines, whole-US " +
         std::to_string(us.rows.size()) + " rows, non-contiguous " +
         std::to_string(non_contiguous.rows.size()) + " rows, " + fmt(elapsed) + "s";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const Criterion criteria[] = {
      {"circle-homology", criterion_circle_homology},
      {"square-fixture", criterion_square},
      {"h0-crosscheck", criterion_h0_crosscheck},
      {"oracle-equivalence", criterion_oracle_equivalence},
      {"euler-consistency", criterion_euler},
      {"cover-contract", criterion_cover_contract},
      {"dbscan-parity", criterion_dbscan_parity},
      {"mapper-circle", criterion_mapper_circle},
      {"dates-spike", criterion_dates_spike},
      {"pca-correctness", criterion_pca},
      {"determinism", criterion_determinism},
      {"real-data-smoke", criterion_real_data},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    try {
      const std::string detail = c.run();
      std::cout << "[PASS] " << index << ". " << c.name << ": " << detail << "\n";
    } catch (const Skip& s) {
      std::cout << "[SKIP] " << index << ". " << c.name << ": " << s.what() << "\n";
    } catch (const std::exception& e) {
      std::cout << "[FAIL] " << index << ". " << c.name << ": " << e.what() << "\n";
      ++failures;
    }
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
