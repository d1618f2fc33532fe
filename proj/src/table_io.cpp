#include "ectmol/table_io.hpp"

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "ectmol/errors.hpp"

namespace ectmol::table_io {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  char buf[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(buf, 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
  unsigned char buf[4];
  if (!in.read(reinterpret_cast<char*>(buf), 4)) {
    throw_error(errc::malformed_file, path + ": truncated header");
  }
  return static_cast<std::uint32_t>(buf[0]) | (static_cast<std::uint32_t>(buf[1]) << 8) |
         (static_cast<std::uint32_t>(buf[2]) << 16) | (static_cast<std::uint32_t>(buf[3]) << 24);
}

void put_i32(std::ostream& out, std::int32_t v) { put_u32(out, static_cast<std::uint32_t>(v)); }

std::int32_t get_i32(std::istream& in, const std::string& path) {
  return static_cast<std::int32_t>(get_u32(in, path));
}

}  // namespace

bool has_magic(const std::string& path, const char magic[4]) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char buf[4];
  if (!in.read(buf, 4)) return false;
  return std::memcmp(buf, magic, 4) == 0;
}

void write_ect_csv(const std::string& path, const EctTable& table) {
  std::ofstream out(path, std::ios::binary);  // binary: stable newlines
  if (!out) throw_error(errc::io_failure, "cannot write " + path);
  out << "mol_id";
  for (std::size_t c = 0; c < table.width(); ++c) out << ",f" << c;
  out << "\n";
  for (std::size_t r = 0; r < table.rows; ++r) {
    out << table.ids[r];
    const std::int32_t* row = table.values.data() + r * table.width();
    for (std::size_t c = 0; c < table.width(); ++c) out << "," << row[c];
    out << "\n";
  }
  if (!out) throw_error(errc::io_failure, "write failed for " + path);
}

void write_ect_binary(const std::string& path, const EctTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(errc::io_failure, "cannot write " + path);
  out.write("ECT1", 4);
  put_u32(out, static_cast<std::uint32_t>(table.rows));
  put_u32(out, static_cast<std::uint32_t>(table.directions));
  put_u32(out, static_cast<std::uint32_t>(table.thresholds));
  for (std::int32_t v : table.values) put_i32(out, v);
  if (!out) throw_error(errc::io_failure, "write failed for " + path);
}

FeatureTable read_feature_table(const std::string& path) {
  FeatureTable table;
  if (has_magic(path, "ECT1")) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(errc::io_failure, "cannot open " + path);
    in.ignore(4);
    std::uint32_t n = get_u32(in, path);
    std::uint32_t d = get_u32(in, path);
    std::uint32_t t = get_u32(in, path);
    table.width = static_cast<std::size_t>(d) * t;
    table.values.resize(static_cast<std::size_t>(n) * table.width);
    for (double& v : table.values) v = static_cast<double>(get_i32(in, path));
    // binary tables are positional; callers adopt the dataset's ids
    table.blocks.emplace_back("ect", table.width);
    return table;
  }

  std::ifstream in(path);
  if (!in) throw_error(errc::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw_error(errc::malformed_file, path + " has no header row");
  auto header = detail::split_csv_line(line);
  if (header.empty() || detail::trim(header[0]) != "mol_id") {
    throw_error(errc::malformed_file, path + " must start with a mol_id column");
  }
  table.width = header.size() - 1;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (cells.size() != table.width + 1) {
      throw_error(errc::malformed_file, path + ": row with wrong cell count");
    }
    table.ids.push_back(detail::trim(cells[0]));
    for (std::size_t c = 1; c < cells.size(); ++c) {
      char* end = nullptr;
      std::string cell = detail::trim(cells[c]);
      double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw_error(errc::malformed_file, path + ": non-numeric cell");
      }
      table.values.push_back(v);
    }
  }
  table.blocks.emplace_back("ect", table.width);
  return table;
}

void write_fpm1(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(errc::io_failure, "cannot write " + path);
  out.write("FPM1", 4);
  put_u32(out, static_cast<std::uint32_t>(m.rows));
  put_u32(out, static_cast<std::uint32_t>(m.cols));
  for (double v : m.values) put_i32(out, static_cast<std::int32_t>(v));
  if (!out) throw_error(errc::io_failure, "write failed for " + path);
}

Matrix read_fpm1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(errc::io_failure, "cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "FPM1", 4) != 0) {
    throw_error(errc::malformed_file, path + " is not an FPM1 file");
  }
  std::uint32_t n = get_u32(in, path);
  std::uint32_t f = get_u32(in, path);
  Matrix m(n, f);
  for (double& v : m.values) v = static_cast<double>(get_i32(in, path));
  return m;
}

}  // namespace ectmol::table_io
