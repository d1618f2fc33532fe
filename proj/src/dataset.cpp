#include "ectmol/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ectmol/errors.hpp"
#include "ectmol/table_io.hpp"

namespace ectmol {

const char* transform_name(TargetTransform t) {
  return t == TargetTransform::log10 ? "log10" : "identity";
}

std::vector<double> Dataset::targets() const {
  std::vector<double> y;
  y.reserve(records.size());
  for (const MoleculeRecord& r : records) y.push_back(r.target);
  return y;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const MoleculeRecord& r : records) out.push_back(r.mol_id);
  return out;
}

std::string IngestReport::to_json() const {
  nlohmann::json j;
  j["source_rows"] = source_rows;
  j["kept"] = kept;
  j["dropped"] = dropped;
  j["deduplicated"] = deduplicated;
  return j.dump(2);
}

namespace detail {

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace detail

namespace {

bool parse_double(const std::string& text, double& out) {
  std::string t = detail::trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}

}  // namespace

std::pair<Dataset, IngestReport> load_csv(const std::string& path,
                                          const std::string& smiles_column,
                                          const std::string& target_column) {
  std::ifstream in(path);
  if (!in) throw_error(errc::io_failure, "cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw_error(errc::malformed_file, path + " has no header row");
  auto header = detail::split_csv_line(line);
  long smiles_idx = -1, target_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name = detail::trim(header[i]);
    if (name == smiles_column) smiles_idx = static_cast<long>(i);
    if (name == target_column) target_idx = static_cast<long>(i);
  }
  if (smiles_idx < 0) throw_error(errc::missing_column, "no column '" + smiles_column + "' in " + path);
  if (target_idx < 0) throw_error(errc::missing_column, "no column '" + target_column + "' in " + path);

  Dataset ds;
  ds.name = std::filesystem::path(path).stem().string();
  IngestReport report;
  std::unordered_set<std::string> seen;

  long line_number = 1;  // header
  while (std::getline(in, line)) {
    ++line_number;
    if (detail::trim(line).empty()) continue;  // blank lines are not data rows
    ++report.source_rows;
    auto cells = detail::split_csv_line(line);
    std::string smiles =
        static_cast<std::size_t>(smiles_idx) < cells.size() ? detail::trim(cells[smiles_idx]) : "";
    double target = 0.0;
    bool has_target = static_cast<std::size_t>(target_idx) < cells.size() &&
                      parse_double(cells[target_idx], target);
    if (smiles.empty() || !has_target) {
      ++report.dropped;
      continue;
    }
    if (!seen.insert(smiles).second) {
      ++report.deduplicated;
      continue;
    }
    MoleculeRecord rec;
    rec.smiles = smiles;
    rec.target = target;
    rec.row_origin = line_number;
    rec.mol_id = std::to_string(line_number);
    ds.records.push_back(std::move(rec));
  }
  report.kept = ds.records.size();
  if (ds.records.empty()) {
    throw_error(errc::empty_after_filtering, path + " has no usable rows");
  }
  return {std::move(ds), report};
}

Dataset apply_target_transform(Dataset ds, TargetTransform transform) {
  if (transform == TargetTransform::log10) {
    for (MoleculeRecord& r : ds.records) {
      if (r.target <= 0.0) {
        throw_error(errc::non_positive_target,
                    "row " + std::to_string(r.row_origin) + " has target " +
                        std::to_string(r.target));
      }
      r.target = std::log10(r.target);
    }
  }
  ds.transform = transform;
  return ds;
}

Matrix load_fingerprint_matrix(const std::string& path,
                               const std::vector<std::string>& expected_ids) {
  if (table_io::has_magic(path, "FPM1")) {
    Matrix m = table_io::read_fpm1(path);
    if (m.rows != expected_ids.size()) {
      throw_error(errc::row_count_mismatch,
                  path + " has " + std::to_string(m.rows) + " rows, dataset has " +
                      std::to_string(expected_ids.size()));
    }
    return m;
  }

  std::ifstream in(path);
  if (!in) throw_error(errc::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw_error(errc::malformed_file, path + " has no header row");
  auto header = detail::split_csv_line(line);
  if (header.empty() || detail::trim(header[0]) != "mol_id") {
    throw_error(errc::malformed_file, path + " must start with a mol_id column");
  }
  std::size_t width = header.size() - 1;

  std::unordered_map<std::string, std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != width + 1) {
      throw_error(errc::malformed_file, path + " row has " + std::to_string(cells.size()) +
                                            " cells, expected " + std::to_string(width + 1));
    }
    std::string id = detail::trim(cells[0]);
    std::vector<double> values(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (!parse_double(cells[c + 1], values[c])) {
        throw_error(errc::malformed_file, path + ": non-numeric cell in row '" + id + "'");
      }
    }
    if (!rows.emplace(id, std::move(values)).second) {
      throw_error(errc::malformed_file, path + ": duplicate mol_id '" + id + "'");
    }
  }
  if (rows.size() != expected_ids.size()) {
    throw_error(errc::row_count_mismatch,
                path + " has " + std::to_string(rows.size()) + " rows, dataset has " +
                    std::to_string(expected_ids.size()));
  }

  Matrix m(expected_ids.size(), width);
  for (std::size_t i = 0; i < expected_ids.size(); ++i) {
    auto it = rows.find(expected_ids[i]);
    if (it == rows.end()) {
      throw_error(errc::unknown_mol_id, path + " is missing mol_id '" + expected_ids[i] + "'");
    }
    std::copy(it->second.begin(), it->second.end(), m.row(i));
  }
  return m;
}

Matrix FeatureTable::to_matrix() const {
  Matrix m(rows(), width);
  m.values = values;
  return m;
}

std::string FeatureTable::block_label() const {
  std::string label;
  for (const auto& [name, w] : blocks) {
    if (!label.empty()) label += "+";
    label += name + "(" + std::to_string(w) + ")";
  }
  return label;
}

FeatureTable concat_features(const FeatureTable& ect, const Matrix& fingerprint) {
  if (fingerprint.cols > 0 && ect.rows() != fingerprint.rows) {
    throw_error(errc::row_count_mismatch,
                "ect table has " + std::to_string(ect.rows()) + " rows, fingerprint has " +
                    std::to_string(fingerprint.rows));
  }
  if (fingerprint.cols == 0) return ect;

  FeatureTable out;
  out.ids = ect.ids;
  out.width = ect.width + fingerprint.cols;
  out.blocks = ect.blocks;
  out.blocks.emplace_back("fingerprint", fingerprint.cols);
  out.values.resize(ect.rows() * out.width);
  for (std::size_t i = 0; i < ect.rows(); ++i) {
    double* dst = out.values.data() + i * out.width;
    std::copy(ect.row(i), ect.row(i) + ect.width, dst);
    std::copy(fingerprint.row(i), fingerprint.row(i) + fingerprint.cols, dst + ect.width);
  }
  return out;
}

}  // namespace ectmol
