// ectmol: SMILES -> molecular graph -> ECT descriptors -> ridge CV pipeline.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ectmol/dataset.hpp"
#include "ectmol/ect.hpp"
#include "ectmol/errors.hpp"
#include "ectmol/features.hpp"
#include "ectmol/manifest.hpp"
#include "ectmol/molecule.hpp"
#include "ectmol/regression.hpp"
#include "ectmol/smiles.hpp"
#include "ectmol/svg.hpp"
#include "ectmol/table_io.hpp"
#include "ectmol/version.hpp"

namespace {

using namespace ectmol;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitContract = 3;
constexpr int kExitUsage = 64;

int exit_code_for(errc code) {
  switch (code) {
    case errc::empty_input:
    case errc::unknown_token:
    case errc::unbalanced_parenthesis:
    case errc::unmatched_ring_closure:
    case errc::valence_exceeded:
    case errc::io_failure:
    case errc::malformed_file:
    case errc::missing_column:
    case errc::empty_after_filtering:
      return kExitInput;
    default:
      return kExitContract;
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ECTMOL_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 42;
}

struct OutputGuard {
  std::vector<std::string> paths;
  bool committed = false;

  void track(const std::string& p) { paths.push_back(p); }
  void commit() { committed = true; }
  ~OutputGuard() {
    if (committed) return;
    for (const std::string& p : paths) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(errc::io_failure, "cannot write " + path);
  out << text;
}

struct ParsedDataset {
  Dataset dataset;
  IngestReport report;
  std::vector<FeatureMatrix> features;  // normalized
  std::vector<std::vector<std::pair<int, int>>> edges;
  NormalizationStats stats;
};

// Shared front half of ect/sweep: ingest, parse, hydrogenate, featurize,
// normalize.  Parse errors carry the source line number.
ParsedDataset prepare_dataset(const std::string& input, const std::string& smiles_column,
                              const std::string& target_column, bool only_largest) {
  ParsedDataset out;
  std::tie(out.dataset, out.report) = load_csv(input, smiles_column, target_column);

  std::vector<FeatureMatrix> raw;
  for (const MoleculeRecord& rec : out.dataset.records) {
    try {
      MolecularGraph g = parse_smiles(rec.smiles);
      if (only_largest) g = largest_component(g);
      g = add_implicit_hydrogens(g);
      FeatureMatrix f = featurize(g);
      f.molecule_id = rec.mol_id;
      raw.push_back(std::move(f));
      out.edges.push_back(edge_list(g));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(rec.row_origin) + ": " + e.message());
    }
  }
  std::tie(out.features, out.stats) = normalize_dataset(raw);
  return out;
}

int cmd_parse(const std::string& input, bool only_largest, const std::string& manifest_path) {
  auto summarize = [&](const std::string& smiles) {
    MolecularGraph g = parse_smiles(smiles);
    if (only_largest) g = largest_component(g);
    g = add_implicit_hydrogens(g);
    char line[128];
    std::snprintf(line, sizeof(line), "atoms=%zu bonds=%zu chi=%d components=%d",
                  g.atom_count(), g.bond_count(), euler_characteristic(g),
                  connected_components(g));
    return std::string(line);
  };

  if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "error: cannot open " << input << "\n";
      return kExitInput;
    }
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      std::string smiles = detail::trim(line);
      if (smiles.empty()) continue;
      try {
        std::cout << "line=" << line_number << " " << summarize(smiles) << "\n";
      } catch (const Error& e) {
        std::cerr << "line " << line_number << ": error: " << e.what() << "\n";
        return kExitInput;
      }
    }
  } else {
    try {
      std::cout << summarize(input) << "\n";
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_code_for(e.code());
    }
  }

  if (!manifest_path.empty()) {
    RunManifest manifest;
    manifest.command = "parse";
    manifest.flags["input"] = input;
    manifest.flags["largest-component"] = only_largest ? "true" : "false";
    if (std::filesystem::is_regular_file(input)) {
      manifest.input_digests[input] = file_digest(input);
    }
    manifest.write(manifest_path);
  }
  return kExitOk;
}

int cmd_ect(const std::string& input, const std::string& out_path, std::size_t dirs,
            std::size_t thresholds, std::uint64_t seed, const std::string& format,
            const std::string& smiles_column, const std::string& target_column,
            bool only_largest, unsigned jobs, std::string stats_path) {
  OutputGuard guard;
  ParsedDataset data = prepare_dataset(input, smiles_column, target_column, only_largest);

  DirectionSet directions = sample_directions(kAtomFeatureWidth, dirs, seed);
  ThresholdGrid grid = ThresholdGrid::uniform(thresholds);
  EctTable table = ect_batch(data.features, data.edges, directions, grid, jobs);

  guard.track(out_path);
  if (format == "bin") {
    table_io::write_ect_binary(out_path, table);
  } else {
    table_io::write_ect_csv(out_path, table);
  }

  if (stats_path.empty()) stats_path = out_path + ".stats.json";
  guard.track(stats_path);
  write_text(stats_path, data.stats.to_json() + "\n");

  std::string ingest_path = out_path + ".ingest.json";
  guard.track(ingest_path);
  write_text(ingest_path, data.report.to_json() + "\n");

  RunManifest manifest;
  manifest.command = "ect";
  manifest.seed = seed;
  manifest.flags["input"] = input;
  manifest.flags["out"] = out_path;
  manifest.flags["dirs"] = std::to_string(dirs);
  manifest.flags["thresholds"] = std::to_string(thresholds);
  manifest.flags["format"] = format;
  manifest.flags["smiles-column"] = smiles_column;
  manifest.flags["target-column"] = target_column;
  manifest.flags["largest-component"] = only_largest ? "true" : "false";
  manifest.flags["jobs"] = std::to_string(jobs);
  manifest.input_digests[input] = file_digest(input);
  manifest.output_digests[out_path] = file_digest(out_path);
  manifest.output_digests[stats_path] = file_digest(stats_path);
  manifest.output_digests[ingest_path] = file_digest(ingest_path);
  std::string manifest_path = out_path + ".manifest.json";
  guard.track(manifest_path);
  manifest.write(manifest_path);

  std::cout << "wrote " << out_path << " (" << table.rows << " x " << table.width() << "), "
            << "ingest kept=" << data.report.kept << " dropped=" << data.report.dropped
            << " deduplicated=" << data.report.deduplicated << "\n";
  guard.commit();
  return kExitOk;
}

int cmd_cv(const std::string& features_path, const std::string& fingerprint_path,
           const std::string& targets_path, std::size_t folds, std::uint64_t seed, double lambda,
           bool log10_target, const std::string& out_prefix, const std::string& smiles_column,
           const std::string& target_column, unsigned jobs) {
  OutputGuard guard;
  FeatureTable table = table_io::read_feature_table(features_path);

  auto [dataset, report] = load_csv(targets_path, smiles_column, target_column);
  dataset = apply_target_transform(
      std::move(dataset), log10_target ? TargetTransform::log10 : TargetTransform::identity);

  if (table.rows() != dataset.records.size()) {
    throw_error(errc::row_count_mismatch,
                "feature table has " + std::to_string(table.rows()) + " rows, dataset has " +
                    std::to_string(dataset.records.size()));
  }
  if (table.ids.empty()) {
    table.ids = dataset.ids();  // ECT1 binaries are positional
  } else if (table.ids != dataset.ids()) {
    throw_error(errc::unknown_mol_id, "feature table mol_ids do not match the targets file");
  }

  if (!fingerprint_path.empty()) {
    Matrix fp = load_fingerprint_matrix(fingerprint_path, table.ids);
    table = concat_features(table, fp);
  }

  CVConfig cfg;
  cfg.folds = folds;
  cfg.shuffle_seed = seed;
  cfg.lambda = lambda;
  CVReport result = cross_validate(table.to_matrix(), dataset.targets(), cfg, jobs);
  result.representation = table.block_label();
  result.dataset = dataset.name + "/" + transform_name(dataset.transform);

  std::string json_path = out_prefix + ".json";
  std::string table_path = out_prefix + ".txt";
  guard.track(json_path);
  guard.track(table_path);
  write_text(json_path, result.to_json() + "\n");
  write_text(table_path, result.to_table());

  RunManifest manifest;
  manifest.command = "cv";
  manifest.seed = seed;
  manifest.flags["features"] = features_path;
  manifest.flags["fingerprint"] = fingerprint_path;
  manifest.flags["targets"] = targets_path;
  manifest.flags["folds"] = std::to_string(folds);
  manifest.flags["lambda"] = std::to_string(lambda);
  manifest.flags["log10-target"] = log10_target ? "true" : "false";
  manifest.flags["out"] = out_prefix;
  manifest.flags["jobs"] = std::to_string(jobs);
  manifest.input_digests[features_path] = file_digest(features_path);
  manifest.input_digests[targets_path] = file_digest(targets_path);
  if (!fingerprint_path.empty()) {
    manifest.input_digests[fingerprint_path] = file_digest(fingerprint_path);
  }
  manifest.output_digests[json_path] = file_digest(json_path);
  manifest.output_digests[table_path] = file_digest(table_path);
  std::string manifest_path = out_prefix + ".manifest.json";
  guard.track(manifest_path);
  manifest.write(manifest_path);

  std::cout << result.to_table();
  guard.commit();
  return kExitOk;
}

int cmd_plot(const std::string& smiles, long direction_index, bool heatmap,
             const std::string& out_path, std::size_t dirs, std::size_t thresholds,
             std::uint64_t seed) {
  OutputGuard guard;
  MolecularGraph g = add_implicit_hydrogens(parse_smiles(smiles));
  FeatureMatrix raw = featurize(g);
  raw.molecule_id = "plot";
  auto [normalized, stats] = normalize_dataset({raw});
  auto edges = edge_list(g);

  DirectionSet directions = sample_directions(kAtomFeatureWidth, dirs, seed);
  ThresholdGrid grid = ThresholdGrid::uniform(thresholds);

  std::string svg;
  if (heatmap) {
    svg = ect_heatmap_svg(compute_ect(normalized[0], edges, directions, grid));
  } else {
    if (direction_index < 0 || static_cast<std::size_t>(direction_index) >= directions.count) {
      throw_error(errc::dimension_mismatch,
                  "direction index " + std::to_string(direction_index) + " out of range [0, " +
                      std::to_string(directions.count) + ")");
    }
    auto ecc = compute_ecc(normalized[0], edges,
                           {directions.row(static_cast<std::size_t>(direction_index)),
                            directions.dimension},
                           grid);
    svg = ecc_svg(grid, ecc);
  }
  guard.track(out_path);
  write_text(out_path, svg);

  RunManifest manifest;
  manifest.command = "plot";
  manifest.seed = seed;
  manifest.flags["input"] = smiles;
  manifest.flags["heatmap"] = heatmap ? "true" : "false";
  manifest.flags["direction-index"] = std::to_string(direction_index);
  manifest.flags["dirs"] = std::to_string(dirs);
  manifest.flags["thresholds"] = std::to_string(thresholds);
  manifest.flags["out"] = out_path;
  manifest.output_digests[out_path] = file_digest(out_path);
  std::string manifest_path = out_path + ".manifest.json";
  guard.track(manifest_path);
  manifest.write(manifest_path);

  std::cout << "wrote " << out_path << "\n";
  guard.commit();
  return kExitOk;
}

std::vector<std::size_t> parse_count_list(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  std::string token;
  std::stringstream stream(text);
  while (std::getline(stream, token, ',')) {
    token = detail::trim(token);
    char* end = nullptr;
    unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (token.empty() || !end || *end != '\0' || v == 0) {
      throw CLI::ValidationError(flag, "'" + token + "' is not a positive integer");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

int cmd_sweep(const std::string& input, const std::string& dirs_list,
              const std::string& thresholds_list, std::uint64_t seed, std::size_t folds,
              double lambda, bool log10_target, const std::string& out_path,
              const std::string& smiles_column, const std::string& target_column,
              bool only_largest, unsigned jobs) {
  OutputGuard guard;
  auto direction_counts = parse_count_list(dirs_list, "--dirs-list");
  auto threshold_counts = parse_count_list(thresholds_list, "--thresholds-list");

  ParsedDataset data = prepare_dataset(input, smiles_column, target_column, only_largest);
  Dataset ds = apply_target_transform(
      std::move(data.dataset), log10_target ? TargetTransform::log10 : TargetTransform::identity);

  CVConfig cfg;
  cfg.folds = folds;
  cfg.shuffle_seed = seed;
  cfg.lambda = lambda;
  auto rows = sensitivity_sweep(data.features, data.edges, ds.targets(), direction_counts,
                                threshold_counts, seed, cfg, jobs);

  std::string text = "directions,thresholds,rmse_mean,rmse_std,r2_mean,r2_std\n";
  for (const SweepRow& row : rows) {
    char line[192];
    std::snprintf(line, sizeof(line), "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", row.directions,
                  row.thresholds, row.rmse_mean, row.rmse_std, row.r2_mean, row.r2_std);
    text += line;
  }
  guard.track(out_path);
  write_text(out_path, text);

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.seed = seed;
  manifest.flags["input"] = input;
  manifest.flags["dirs-list"] = dirs_list;
  manifest.flags["thresholds-list"] = thresholds_list;
  manifest.flags["folds"] = std::to_string(folds);
  manifest.flags["lambda"] = std::to_string(lambda);
  manifest.flags["log10-target"] = log10_target ? "true" : "false";
  manifest.flags["out"] = out_path;
  manifest.flags["jobs"] = std::to_string(jobs);
  manifest.input_digests[input] = file_digest(input);
  manifest.output_digests[out_path] = file_digest(out_path);
  std::string manifest_path = out_path + ".manifest.json";
  guard.track(manifest_path);
  manifest.write(manifest_path);

  std::cout << text;
  guard.commit();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler characteristic transform descriptors for molecules"};
  app.set_version_flag("--version", std::string("ectmol ") + ectmol::kVersion);
  app.require_subcommand(1);

  std::string smiles_column = "smiles";
  std::string target_column = "target";
  std::uint64_t seed = default_seed();
  unsigned jobs = 1;

  // parse
  auto* parse = app.add_subcommand("parse", "Parse SMILES and report graph counts");
  std::string parse_input;
  bool parse_largest = false;
  std::string parse_manifest;
  parse->add_option("input", parse_input, "SMILES string or file with one SMILES per line")
      ->required();
  parse->add_flag("--largest-component", parse_largest, "Keep only the largest component");
  parse->add_option("--manifest", parse_manifest, "Write a run manifest to this path");

  // ect
  auto* ect = app.add_subcommand("ect", "Compute an ECT feature table for a dataset");
  std::string ect_input, ect_out, ect_format = "csv", ect_stats;
  std::size_t ect_dirs = 158, ect_thresholds = 16;
  bool ect_largest = false;
  ect->add_option("--input", ect_input, "Dataset CSV with SMILES and target columns")->required();
  ect->add_option("--out", ect_out, "Output feature table path")->required();
  ect->add_option("--dirs", ect_dirs, "Number of directions")->check(CLI::PositiveNumber);
  ect->add_option("--thresholds", ect_thresholds, "Number of filtration thresholds")
      ->check(CLI::PositiveNumber);
  ect->add_option("--seed", seed, "Direction-sampling seed (or ECTMOL_SEED)");
  ect->add_option("--format", ect_format, "Output format")
      ->check(CLI::IsMember({"csv", "bin"}));
  ect->add_option("--smiles-column", smiles_column, "SMILES column name");
  ect->add_option("--target-column", target_column, "Target column name");
  ect->add_flag("--largest-component", ect_largest, "Keep only each molecule's largest component");
  ect->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ect->add_option("--stats-out", ect_stats, "Normalization stats path (default OUT.stats.json)");

  // cv
  auto* cv = app.add_subcommand("cv", "Cross-validate ridge regression on a feature table");
  std::string cv_features, cv_fingerprint, cv_targets, cv_out = "cv_report";
  std::size_t cv_folds = 10;
  double cv_lambda = 1.0;
  bool cv_log10 = true;
  cv->add_option("--features", cv_features, "Feature table (CSV or ECT1 binary)")->required();
  cv->add_option("--fingerprint", cv_fingerprint, "Fingerprint matrix (CSV or FPM1 binary)");
  cv->add_option("--targets", cv_targets, "Dataset CSV with SMILES and target columns")
      ->required();
  cv->add_option("--folds", cv_folds, "Cross-validation folds")->check(CLI::Range(2, 1000000));
  cv->add_option("--seed", seed, "Shuffle seed (or ECTMOL_SEED)");
  cv->add_option("--lambda", cv_lambda, "Ridge penalty");
  cv->add_flag("--log10-target,!--no-log10-target", cv_log10,
               "Model log10 of the target (default on)");
  cv->add_option("--out", cv_out, "Output prefix for .json/.txt reports");
  cv->add_option("--smiles-column", smiles_column, "SMILES column name");
  cv->add_option("--target-column", target_column, "Target column name");
  cv->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  // plot
  auto* plot = app.add_subcommand("plot", "Render an ECC curve or ECT heatmap as SVG");
  std::string plot_input, plot_out;
  long plot_direction = -1;
  bool plot_heatmap = false;
  std::size_t plot_dirs = 158, plot_thresholds = 16;
  plot->add_option("--input", plot_input, "SMILES string")->required();
  plot->add_option("--out", plot_out, "Output SVG path")->required();
  auto* dir_opt = plot->add_option("--direction-index", plot_direction,
                                   "Render the ECC for this direction index");
  auto* heat_opt = plot->add_flag("--heatmap", plot_heatmap, "Render the full ECT heatmap");
  dir_opt->excludes(heat_opt);
  plot->add_option("--dirs", plot_dirs, "Number of directions")->check(CLI::PositiveNumber);
  plot->add_option("--thresholds", plot_thresholds, "Number of thresholds")
      ->check(CLI::PositiveNumber);
  plot->add_option("--seed", seed, "Direction-sampling seed (or ECTMOL_SEED)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Direction/threshold sensitivity sweep");
  std::string sweep_input, sweep_dirs, sweep_thresholds, sweep_out = "sweep.csv";
  std::size_t sweep_folds = 10;
  double sweep_lambda = 1.0;
  bool sweep_log10 = true;
  bool sweep_largest = false;
  sweep->add_option("--input", sweep_input, "Dataset CSV with SMILES and target columns")
      ->required();
  sweep->add_option("--dirs-list", sweep_dirs, "Comma-separated direction counts")->required();
  sweep->add_option("--thresholds-list", sweep_thresholds, "Comma-separated threshold counts")
      ->required();
  sweep->add_option("--seed", seed, "Seed for directions and shuffling");
  sweep->add_option("--folds", sweep_folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000000));
  sweep->add_option("--lambda", sweep_lambda, "Ridge penalty");
  sweep->add_flag("--log10-target,!--no-log10-target", sweep_log10,
                  "Model log10 of the target (default on)");
  sweep->add_option("--out", sweep_out, "Output CSV path");
  sweep->add_option("--smiles-column", smiles_column, "SMILES column name");
  sweep->add_option("--target-column", target_column, "Target column name");
  sweep->add_flag("--largest-component", sweep_largest,
                  "Keep only each molecule's largest component");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (parse->parsed()) {
      return cmd_parse(parse_input, parse_largest, parse_manifest);
    }
    if (ect->parsed()) {
      return cmd_ect(ect_input, ect_out, ect_dirs, ect_thresholds, seed, ect_format,
                     smiles_column, target_column, ect_largest, jobs, ect_stats);
    }
    if (cv->parsed()) {
      return cmd_cv(cv_features, cv_fingerprint, cv_targets, cv_folds, seed, cv_lambda, cv_log10,
                    cv_out, smiles_column, target_column, jobs);
    }
    if (plot->parsed()) {
      if (!plot_heatmap && plot_direction < 0) {
        std::cerr << "error: plot needs --heatmap or --direction-index\n";
        return kExitUsage;
      }
      return cmd_plot(plot_input, plot_direction, plot_heatmap, plot_out, plot_dirs,
                      plot_thresholds, seed);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_input, sweep_dirs, sweep_thresholds, seed, sweep_folds, sweep_lambda,
                       sweep_log10, sweep_out, smiles_column, target_column, sweep_largest, jobs);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
