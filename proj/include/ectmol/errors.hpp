#pragma once

#include <stdexcept>
#include <string>

namespace ectmol {

enum class errc {
  // smiles parsing
  empty_input,
  unknown_token,
  unbalanced_parenthesis,
  unmatched_ring_closure,
  valence_exceeded,
  // features and directions
  empty_dataset,
  invalid_dimension,
  invalid_count,
  dimension_mismatch,
  // dataset ingestion
  missing_column,
  empty_after_filtering,
  io_failure,
  row_count_mismatch,
  unknown_mol_id,
  malformed_file,
  non_positive_target,
  // regression
  singular_system,
  shape_mismatch,
  too_few_rows,
  zero_variance,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message);
  errc code() const noexcept { return code_; }
  // the message without the "Name: " prefix of what()
  const std::string& message() const noexcept { return message_; }

 private:
  errc code_;
  std::string message_;
};

[[noreturn]] void throw_error(errc code, const std::string& message);

}  // namespace ectmol
