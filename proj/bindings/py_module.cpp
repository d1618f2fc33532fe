#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ectmol/dataset.hpp"
#include "ectmol/ect.hpp"
#include "ectmol/errors.hpp"
#include "ectmol/features.hpp"
#include "ectmol/molecule.hpp"
#include "ectmol/regression.hpp"
#include "ectmol/rng.hpp"
#include "ectmol/smiles.hpp"
#include "ectmol/version.hpp"

namespace py = pybind11;
using namespace ectmol;

namespace {

std::vector<std::vector<double>> matrix_rows(const FeatureMatrix& m) {
  std::vector<std::vector<double>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows[i].assign(m.row(i), m.row(i) + m.width);
  }
  return rows;
}

FeatureMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m;
  if (rows.empty()) return m;
  m.width = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != m.width) throw_error(errc::dimension_mismatch, "ragged feature rows");
    m.values.insert(m.values.end(), row.begin(), row.end());
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Euler characteristic transform descriptors for molecular graphs";
  m.attr("__version__") = kVersion;
  m.attr("GENERATOR_ID") = kGeneratorId;
  m.attr("FEATURE_WIDTH") = kAtomFeatureWidth;

  py::register_exception<Error>(m, "EctmolError", PyExc_ValueError);

  py::enum_<BondOrder>(m, "BondOrder")
      .value("SINGLE", BondOrder::single)
      .value("DOUBLE", BondOrder::double_bond)
      .value("TRIPLE", BondOrder::triple)
      .value("AROMATIC", BondOrder::aromatic);

  py::enum_<Chirality>(m, "Chirality")
      .value("NONE", Chirality::none)
      .value("ANTICLOCKWISE", Chirality::anticlockwise)
      .value("CLOCKWISE", Chirality::clockwise);

  py::class_<Atom>(m, "Atom")
      .def_readonly("element", &Atom::element)
      .def_readonly("formal_charge", &Atom::formal_charge)
      .def_readonly("explicit_h_count", &Atom::explicit_h_count)
      .def_readonly("isotope", &Atom::isotope)
      .def_readonly("aromatic", &Atom::aromatic)
      .def_readonly("chirality", &Atom::chirality);

  py::class_<Bond>(m, "Bond")
      .def_readonly("u", &Bond::u)
      .def_readonly("v", &Bond::v)
      .def_readonly("order", &Bond::order);

  py::class_<MolecularGraph>(m, "MolecularGraph")
      .def_readonly("atoms", &MolecularGraph::atoms)
      .def_readonly("bonds", &MolecularGraph::bonds)
      .def_readonly("source_smiles", &MolecularGraph::source_smiles)
      .def("atom_count", &MolecularGraph::atom_count)
      .def("bond_count", &MolecularGraph::bond_count)
      .def("__repr__", [](const MolecularGraph& g) {
        return "<MolecularGraph atoms=" + std::to_string(g.atom_count()) +
               " bonds=" + std::to_string(g.bond_count()) + ">";
      });

  m.def("parse_smiles", &parse_smiles, py::arg("smiles"),
        "Parse a SMILES string into a heavy-atom molecular graph");
  m.def("add_implicit_hydrogens", &add_implicit_hydrogens, py::arg("graph"));
  m.def("euler_characteristic", &euler_characteristic, py::arg("graph"));
  m.def("connected_components", &connected_components, py::arg("graph"));
  m.def("cycle_rank", &cycle_rank, py::arg("graph"));
  m.def("largest_component", &largest_component, py::arg("graph"));
  m.def("edge_list", &edge_list, py::arg("graph"));

  m.def(
      "featurize",
      [](const MolecularGraph& g) { return matrix_rows(featurize(g)); }, py::arg("graph"),
      "Per-atom 9-dimensional feature rows (expects a hydrogen-expanded graph)");
  m.def("feature_names", [] {
    return std::vector<std::string>(kAtomFeatureNames.begin(), kAtomFeatureNames.end());
  });

  m.def(
      "normalize_dataset",
      [](const std::vector<std::vector<std::vector<double>>>& dataset) {
        std::vector<FeatureMatrix> mats;
        mats.reserve(dataset.size());
        for (const auto& rows : dataset) mats.push_back(matrix_from_rows(rows));
        auto [normalized, stats] = normalize_dataset(mats);
        std::vector<std::vector<std::vector<double>>> out;
        out.reserve(normalized.size());
        for (const auto& m2 : normalized) out.push_back(matrix_rows(m2));
        return py::make_tuple(out, stats.to_json());
      },
      py::arg("dataset"),
      "Z-score columns over all atoms, then scale rows into the unit ball; "
      "returns (normalized, stats_json)");

  py::class_<DirectionSet>(m, "DirectionSet")
      .def_readonly("dimension", &DirectionSet::dimension)
      .def_readonly("count", &DirectionSet::count)
      .def_readonly("seed", &DirectionSet::seed)
      .def_readonly("generator_id", &DirectionSet::generator_id)
      .def_readonly("vectors", &DirectionSet::vectors);

  m.def("sample_directions", &sample_directions, py::arg("dimension"), py::arg("count"),
        py::arg("seed"), "Uniform unit vectors from the documented seeded generator");

  py::class_<ThresholdGrid>(m, "ThresholdGrid")
      .def_static("uniform", &ThresholdGrid::uniform, py::arg("count"))
      .def_readonly("values", &ThresholdGrid::values);

  m.def(
      "compute_ecc",
      [](const std::vector<std::vector<double>>& features,
         const std::vector<std::pair<int, int>>& edges, const std::vector<double>& direction,
         const ThresholdGrid& grid) {
        return compute_ecc(matrix_from_rows(features), edges, direction, grid);
      },
      py::arg("features"), py::arg("edges"), py::arg("direction"), py::arg("grid"));

  m.def(
      "compute_ect",
      [](const std::vector<std::vector<double>>& features,
         const std::vector<std::pair<int, int>>& edges, const DirectionSet& dirs,
         const ThresholdGrid& grid) {
        ECTDescriptor d = compute_ect(matrix_from_rows(features), edges, dirs, grid);
        return d.values;
      },
      py::arg("features"), py::arg("edges"), py::arg("directions"), py::arg("grid"),
      "Flattened D*T Euler characteristic grid, direction-major");

  m.def(
      "ect_batch",
      [](const std::vector<std::vector<std::vector<double>>>& features,
         const std::vector<std::vector<std::pair<int, int>>>& edges, const DirectionSet& dirs,
         const ThresholdGrid& grid, unsigned jobs) {
        std::vector<FeatureMatrix> mats;
        mats.reserve(features.size());
        for (const auto& rows : features) mats.push_back(matrix_from_rows(rows));
        EctTable table = ect_batch(mats, edges, dirs, grid, jobs);
        std::vector<std::vector<std::int32_t>> out(table.rows);
        for (std::size_t i = 0; i < table.rows; ++i) {
          out[i].assign(table.values.begin() + i * table.width(),
                        table.values.begin() + (i + 1) * table.width());
        }
        return out;
      },
      py::arg("features"), py::arg("edges"), py::arg("directions"), py::arg("grid"),
      py::arg("jobs") = 1, "One flattened ECT row per molecule");

  m.def(
      "ect_from_smiles",
      [](const std::string& smiles, std::size_t dirs, std::size_t thresholds,
         std::uint64_t seed) {
        MolecularGraph g = add_implicit_hydrogens(parse_smiles(smiles));
        FeatureMatrix raw = featurize(g);
        auto [normalized, stats] = normalize_dataset({raw});
        DirectionSet set = sample_directions(kAtomFeatureWidth, dirs, seed);
        ThresholdGrid grid = ThresholdGrid::uniform(thresholds);
        return compute_ect(normalized[0], edge_list(g), set, grid).values;
      },
      py::arg("smiles"), py::arg("dirs") = 158, py::arg("thresholds") = 16, py::arg("seed") = 42,
      "Single-molecule convenience pipeline (self-normalized features)");

  m.def("rmse",
        [](const std::vector<double>& pred, const std::vector<double>& truth) {
          return rmse(pred, truth);
        });
  m.def("r_squared", [](const std::vector<double>& pred, const std::vector<double>& truth) {
    return r_squared(pred, truth);
  });

  m.def(
      "cross_validate",
      [](const std::vector<std::vector<double>>& x, const std::vector<double>& y,
         std::size_t folds, std::uint64_t seed, double lambda) {
        Matrix design(x.size(), x.empty() ? 0 : x.front().size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (x[i].size() != design.cols) throw_error(errc::shape_mismatch, "ragged rows");
          std::copy(x[i].begin(), x[i].end(), design.row(i));
        }
        CVConfig cfg;
        cfg.folds = folds;
        cfg.shuffle_seed = seed;
        cfg.lambda = lambda;
        CVReport report = cross_validate(design, y, cfg);
        py::dict out;
        out["fold_rmse"] = report.fold_rmse;
        out["fold_r2"] = report.fold_r2;
        out["rmse_mean"] = report.rmse_mean;
        out["rmse_std"] = report.rmse_std;
        out["r2_mean"] = report.r2_mean;
        out["r2_std"] = report.r2_std;
        return out;
      },
      py::arg("x"), py::arg("y"), py::arg("folds") = 10, py::arg("seed") = 42,
      py::arg("lambda_") = 1.0, "Shuffled k-fold ridge cross-validation");
}
