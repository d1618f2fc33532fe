"""Smoke tests for the ectmol extension module (run via ctest)."""

import math
import sys


def main() -> int:
    import ectmol

    # parsing and hydrogen expansion
    g = ectmol.add_implicit_hydrogens(ectmol.parse_smiles("CC(O)=O"))
    assert g.atom_count() == 8, g.atom_count()
    assert g.bond_count() == 7
    assert ectmol.euler_characteristic(g) == 1
    assert ectmol.connected_components(g) == 1

    try:
        ectmol.parse_smiles("C1CC")
    except ectmol.EctmolError as e:
        assert "UnmatchedRingClosure" in str(e)
    else:
        raise AssertionError("expected EctmolError")

    # feature schema
    rows = ectmol.featurize(g)
    assert len(rows) == 8
    assert all(len(r) == ectmol.FEATURE_WIDTH for r in rows)
    assert ectmol.feature_names()[0] == "atomic_number"

    # directions are reproducible unit vectors
    d1 = ectmol.sample_directions(9, 158, 42)
    d2 = ectmol.sample_directions(9, 158, 42)
    assert d1.vectors == d2.vectors
    assert d1.generator_id == ectmol.GENERATOR_ID
    norm = math.sqrt(sum(v * v for v in d1.vectors[:9]))
    assert abs(norm - 1.0) < 1e-12

    # batch API matches the single-molecule path
    rows2 = ectmol.normalize_dataset([rows])[0]
    batch = ectmol.ect_batch(rows2, [ectmol.edge_list(g)], d1, ectmol.ThresholdGrid.uniform(16), jobs=2)
    assert len(batch) == 1 and len(batch[0]) == 2528

    # full-pipeline descriptor has the documented width and terminal chi
    ect = ectmol.ect_from_smiles("CC(O)=O", dirs=158, thresholds=16, seed=42)
    assert len(ect) == 2528
    assert all(ect[d * 16 + 15] == 1 for d in range(158))

    # regression harness
    x = [[float(i)] for i in range(40)]
    y = [2.0 * i + 1.0 for i in range(40)]
    report = ectmol.cross_validate(x, y, folds=5, seed=1, lambda_=1e-9)
    assert report["rmse_mean"] < 1e-6
    assert report["r2_mean"] > 0.999
    assert ectmol.rmse([0.0, 0.0], [3.0, 4.0]) == math.sqrt(12.5)

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
