#include <doctest.h>

#include <cmath>
#include <random>

#include "ectmol/errors.hpp"
#include "ectmol/regression.hpp"
#include "support.hpp"

using namespace ectmol;
namespace ett = ectmol::testing;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t w) {
  Matrix x(n, w);
  for (double& v : x.values) {
    v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  }
  return x;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> y(n);
  for (double& v : y) v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return y;
}

}  // namespace

TEST_SUITE("regression") {

TEST_CASE("exact line through the origin") {
  Matrix x(2, 1);
  x.values = {1.0, 2.0};
  std::vector<double> y = {2.0, 4.0};
  RidgeModel m = fit_ridge(x, y, 0.0);
  CHECK(m.weights[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m.intercept == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("large lambda shrinks to the mean") {
  std::mt19937_64 rng(3);
  Matrix x = random_matrix(rng, 20, 4);
  std::vector<double> y(20, 7.5);
  RidgeModel m = fit_ridge(x, y, 1e9);
  auto pred = predict(m, x);
  for (double p : pred) CHECK(p == doctest::Approx(7.5).epsilon(1e-6));
}

TEST_CASE("matches the elimination oracle on random problems") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix x = random_matrix(rng, 50, 5);
    std::vector<double> y = random_vector(rng, 50);
    RidgeModel m = fit_ridge(x, y, 0.1);
    auto [weights, intercept] = ett::ridge_by_elimination(x, y, 0.1);
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(m.weights[j] == doctest::Approx(weights[j]).epsilon(1e-8));
    }
    CHECK(m.intercept == doctest::Approx(intercept).epsilon(1e-8));
  }
}

TEST_CASE("dual and primal agree when columns outnumber rows") {
  std::mt19937_64 rng(19);
  Matrix x = random_matrix(rng, 12, 30);  // w > n forces the dual path
  std::vector<double> y = random_vector(rng, 12);
  RidgeModel m = fit_ridge(x, y, 0.5);
  auto [weights, intercept] = ett::ridge_by_elimination(x, y, 0.5);
  for (std::size_t j = 0; j < 30; ++j) {
    CHECK(m.weights[j] == doctest::Approx(weights[j]).epsilon(1e-8));
  }
  CHECK(m.intercept == doctest::Approx(intercept).epsilon(1e-8));
}

TEST_CASE("lambda zero on rank-deficient X raises SingularSystem") {
  Matrix x(4, 2);
  x.values = {1, 1, 2, 2, 3, 3, 4, 4};  // duplicated column
  std::vector<double> y = {1, 2, 3, 4};
  CHECK_THROWS_AS(fit_ridge(x, y, 0.0), Error);
  CHECK_NOTHROW(fit_ridge(x, y, 0.5));  // lambda > 0 never raises
}

TEST_CASE("shape errors are typed") {
  Matrix x(3, 2);
  std::vector<double> y = {1, 2};
  CHECK_THROWS_AS(fit_ridge(x, y, 1.0), Error);
  CHECK_THROWS_AS(fit_ridge(x, std::vector<double>{1, 2, 3}, -1.0), Error);
}

TEST_CASE("rmse and r2 on pinned values") {
  std::vector<double> t = {1, 2, 3};
  CHECK(rmse(t, t) == 0.0);
  CHECK(r_squared(t, t) == 1.0);

  std::vector<double> zero = {0, 0};
  std::vector<double> truth = {3, 4};
  CHECK(rmse(zero, truth) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));

  std::vector<double> mean_pred = {2, 2, 2};
  CHECK(r_squared(mean_pred, t) == 0.0);

  std::vector<double> constant = {5, 5};
  CHECK_THROWS_AS(r_squared(zero, constant), Error);
}

TEST_CASE("intercept absorbs target shifts") {
  std::mt19937_64 rng(23);
  Matrix x = random_matrix(rng, 30, 3);
  std::vector<double> y = random_vector(rng, 30);
  RidgeModel base = fit_ridge(x, y, 0.7);
  std::vector<double> shifted = y;
  for (double& v : shifted) v += 11.25;
  RidgeModel moved = fit_ridge(x, shifted, 0.7);
  auto a = predict(base, x);
  auto b = predict(moved, x);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i] - a[i] == doctest::Approx(11.25).epsilon(1e-9));
  }
}

TEST_CASE("cross validation recovers a realizable linear target") {
  std::mt19937_64 rng(29);
  Matrix x = random_matrix(rng, 120, 4);
  std::vector<double> y(120);
  for (std::size_t i = 0; i < x.rows; ++i) {
    y[i] = 3.0 * x.at(i, 0) - 2.0 * x.at(i, 1) + 0.5 * x.at(i, 3) + 1.0;
  }
  CVConfig cfg;
  cfg.folds = 10;
  cfg.shuffle_seed = 5;
  cfg.lambda = 1e-9;
  CVReport report = cross_validate(x, y, cfg);
  CHECK(report.rmse_mean < 1e-6);
  CHECK(report.r2_mean > 0.999);
}

TEST_CASE("cross validation on noise has no skill") {
  std::mt19937_64 rng(31);
  double total_r2 = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Matrix x = random_matrix(rng, 80, 5);
    std::vector<double> y = random_vector(rng, 80);
    CVConfig cfg;
    cfg.folds = 10;
    cfg.shuffle_seed = 1000 + static_cast<std::uint64_t>(rep);
    cfg.lambda = 1.0;
    total_r2 += cross_validate(x, y, cfg).r2_mean;
  }
  CHECK(total_r2 / 20.0 <= 0.1);
}

TEST_CASE("cross validation is deterministic and partitions exactly") {
  std::mt19937_64 rng(37);
  Matrix x = random_matrix(rng, 53, 3);
  std::vector<double> y = random_vector(rng, 53);
  CVConfig cfg;
  cfg.folds = 10;
  cfg.shuffle_seed = 8;
  cfg.lambda = 0.3;
  CVReport a = cross_validate(x, y, cfg);
  CVReport b = cross_validate(x, y, cfg);
  CHECK(a.fold_rmse == b.fold_rmse);
  CHECK(a.fold_r2 == b.fold_r2);
  CHECK(a.rmse_mean == b.rmse_mean);

  // mean/std recomputable from the per-fold values
  double mean = 0.0;
  for (double v : a.fold_rmse) mean += v;
  mean /= static_cast<double>(a.fold_rmse.size());
  double ss = 0.0;
  for (double v : a.fold_rmse) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(a.fold_rmse.size() - 1));
  CHECK(std::abs(a.rmse_mean - mean) < 1e-12);
  CHECK(std::abs(a.rmse_std - sd) < 1e-12);

  // parallel folds must not change the report
  CVReport c = cross_validate(x, y, cfg, 8);
  CHECK(a.fold_rmse == c.fold_rmse);
}

TEST_CASE("too few rows is a typed error") {
  Matrix x(5, 1);
  x.values = {1, 2, 3, 4, 5};
  std::vector<double> y = {1, 2, 3, 4, 5};
  CVConfig cfg;
  cfg.folds = 10;
  CHECK_THROWS_AS(cross_validate(x, y, cfg), Error);

  Matrix x2(10, 1);
  std::vector<double> y2(10);
  for (int i = 0; i < 10; ++i) {
    x2.values[i] = i;
    y2[i] = 2 * i;
  }
  cfg.folds = 5;  // two rows per test fold keeps R2 defined
  CHECK_NOTHROW(cross_validate(x2, y2, cfg));
}

TEST_CASE("sweep rows come out in grid order with finite metrics") {
  std::mt19937_64 rng(41);
  std::vector<FeatureMatrix> features;
  std::vector<std::vector<std::pair<int, int>>> edges;
  std::vector<double> y;
  for (int i = 0; i < 60; ++i) {
    auto graph = ett::random_graph(rng, 10, 9);
    if (graph.features.rows() == 0) continue;
    features.push_back(graph.features);
    edges.push_back(graph.edges);
    y.push_back(static_cast<double>(graph.edges.size()));
  }
  CVConfig cfg;
  cfg.folds = 5;
  cfg.shuffle_seed = 2;
  cfg.lambda = 1.0;
  auto rows = sensitivity_sweep(features, edges, y, {4, 8}, {4, 8}, 77, cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].directions == 4);
  CHECK(rows[0].thresholds == 4);
  CHECK(rows[1].thresholds == 8);
  CHECK(rows[3].directions == 8);
  for (const SweepRow& r : rows) {
    CHECK(std::isfinite(r.rmse_mean));
    CHECK(std::isfinite(r.r2_mean));
  }

  // a one-pair sweep equals a standalone run
  DirectionSet dirs = sample_directions(9, 4, 77);
  ThresholdGrid grid = ThresholdGrid::uniform(4);
  EctTable table = ect_batch(features, edges, dirs, grid);
  Matrix x(table.rows, table.width());
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    x.values[i] = static_cast<double>(table.values[i]);
  }
  CVReport direct = cross_validate(x, y, cfg);
  CHECK(rows[0].rmse_mean == direct.rmse_mean);
  CHECK(rows[0].r2_mean == direct.r2_mean);

  // the 20-to-30 directions protocol: both rows present with finite metrics
  auto protocol = sensitivity_sweep(features, edges, y, {20, 30}, {16}, 77, cfg);
  REQUIRE(protocol.size() == 2);
  CHECK(protocol[0].directions == 20);
  CHECK(protocol[1].directions == 30);
  CHECK(std::isfinite(protocol[0].rmse_mean));
  CHECK(std::isfinite(protocol[1].rmse_mean));
}

}  // TEST_SUITE
