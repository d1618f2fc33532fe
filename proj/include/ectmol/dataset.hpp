#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ectmol/matrix.hpp"

namespace ectmol {

enum class TargetTransform { identity, log10 };

const char* transform_name(TargetTransform t);

struct MoleculeRecord {
  std::string smiles;
  double target = 0.0;
  long row_origin = 0;      // 1-based line number in the source file
  std::string mol_id;       // stable id: the row_origin as text
};

struct Dataset {
  std::vector<MoleculeRecord> records;
  std::string name;
  TargetTransform transform = TargetTransform::identity;

  std::vector<double> targets() const;
  std::vector<std::string> ids() const;
};

struct IngestReport {
  std::size_t source_rows = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;        // missing/unparsable target or empty SMILES
  std::size_t deduplicated = 0;   // exact-string duplicate SMILES

  std::string to_json() const;
};

// Reads a header CSV; rows with an empty SMILES or a missing/unparsable
// target are dropped, exact duplicate SMILES keep the first occurrence.
std::pair<Dataset, IngestReport> load_csv(const std::string& path,
                                          const std::string& smiles_column,
                                          const std::string& target_column);

Dataset apply_target_transform(Dataset ds, TargetTransform transform);

// CSV (header mol_id,b0..b{F-1}, rows matched to expected_ids) or FPM1
// binary (positional, row count checked).
Matrix load_fingerprint_matrix(const std::string& path,
                               const std::vector<std::string>& expected_ids);

// Feature table with labeled column blocks, e.g. ect + fingerprint.
struct FeatureTable {
  std::vector<std::string> ids;
  std::size_t width = 0;
  std::vector<double> values;  // rows x width
  std::vector<std::pair<std::string, std::size_t>> blocks;

  std::size_t rows() const { return width == 0 ? 0 : values.size() / width; }
  const double* row(std::size_t i) const { return values.data() + i * width; }
  Matrix to_matrix() const;
  std::string block_label() const;  // e.g. "ect(2528)+fingerprint(1024)"
};

// Horizontal concatenation, ECT block first.
FeatureTable concat_features(const FeatureTable& ect, const Matrix& fingerprint);

namespace detail {
// Splits one CSV line honoring double quotes; doubled quotes unescape.
std::vector<std::string> split_csv_line(const std::string& line);
std::string trim(const std::string& s);
}  // namespace detail

}  // namespace ectmol
