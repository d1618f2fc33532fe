#include "ectmol/errors.hpp"

namespace ectmol {

const char* errc_name(errc code) {
  switch (code) {
    case errc::empty_input: return "EmptyInput";
    case errc::unknown_token: return "UnknownToken";
    case errc::unbalanced_parenthesis: return "UnbalancedParenthesis";
    case errc::unmatched_ring_closure: return "UnmatchedRingClosure";
    case errc::valence_exceeded: return "ValenceExceeded";
    case errc::empty_dataset: return "EmptyDataset";
    case errc::invalid_dimension: return "InvalidDimension";
    case errc::invalid_count: return "InvalidCount";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::missing_column: return "MissingColumn";
    case errc::empty_after_filtering: return "EmptyAfterFiltering";
    case errc::io_failure: return "IoFailure";
    case errc::row_count_mismatch: return "RowCountMismatch";
    case errc::unknown_mol_id: return "UnknownMolId";
    case errc::malformed_file: return "MalformedFile";
    case errc::non_positive_target: return "NonPositiveTarget";
    case errc::singular_system: return "SingularSystem";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::too_few_rows: return "TooFewRows";
    case errc::zero_variance: return "ZeroVariance";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code),
      message_(message) {}

void throw_error(errc code, const std::string& message) { throw Error(code, message); }

}  // namespace ectmol
