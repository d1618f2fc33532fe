#pragma once

#include <string>

#include "ectmol/dataset.hpp"
#include "ectmol/ect.hpp"
#include "ectmol/matrix.hpp"

namespace ectmol::table_io {

// Feature tables travel as CSV (header mol_id,f0..f{W-1}) or as a
// little-endian binary: magic "ECT1", u32 N, u32 D, u32 T, then N*D*T int32
// values, direction-major per row.  Fingerprints use the same binary layout
// under magic "FPM1" with u32 N, u32 F.

bool has_magic(const std::string& path, const char magic[4]);

void write_ect_csv(const std::string& path, const EctTable& table);
void write_ect_binary(const std::string& path, const EctTable& table);

// Auto-detects ECT1 binary vs CSV.  Binary tables have positional ids.
FeatureTable read_feature_table(const std::string& path);

void write_fpm1(const std::string& path, const Matrix& m);
Matrix read_fpm1(const std::string& path);

}  // namespace ectmol::table_io
