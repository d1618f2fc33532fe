#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ectmol/ect.hpp"
#include "ectmol/features.hpp"
#include "ectmol/matrix.hpp"

namespace ectmol {

struct RidgeModel {
  std::vector<double> weights;
  double intercept = 0.0;
  double lambda = 0.0;
};

struct CVConfig {
  std::size_t folds = 10;
  std::uint64_t shuffle_seed = 42;
  double lambda = 1.0;
};

struct CVReport {
  std::string representation;
  std::string dataset;
  std::size_t feature_width = 0;
  std::size_t folds = 0;
  std::uint64_t shuffle_seed = 0;
  double lambda = 0.0;
  std::vector<double> fold_rmse;
  std::vector<double> fold_r2;
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  double r2_mean = 0.0;
  double r2_std = 0.0;

  std::string to_json() const;
  std::string to_table() const;  // aligned "mean ± std" text
};

// Centers X and y, then solves (Xc' Xc + lambda N I) w = Xc' yc by Cholesky.
// For lambda > 0 with more columns than rows the equivalent dual system is
// factorized instead; the solution is identical.  lambda == 0 raises
// SingularSystem when the normal equations are not positive definite.
RidgeModel fit_ridge(const Matrix& x, std::span<const double> y, double lambda,
                     unsigned jobs = 1);

std::vector<double> predict(const RidgeModel& model, const Matrix& x);

double rmse(std::span<const double> pred, std::span<const double> truth);
double r_squared(std::span<const double> pred, std::span<const double> truth);

// Shuffles once with shuffle_seed, splits into contiguous folds whose sizes
// differ by at most one, and scores each fold held out in turn.
CVReport cross_validate(const Matrix& x, std::span<const double> y, const CVConfig& cfg,
                        unsigned jobs = 1);

struct SweepRow {
  std::size_t directions = 0;
  std::size_t thresholds = 0;
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  double r2_mean = 0.0;
  double r2_std = 0.0;
};

// Re-samples directions with direction_seed for each (D, T) pair, recomputes
// the ECT table, and cross-validates; rows come out in grid order (D outer).
std::vector<SweepRow> sensitivity_sweep(
    const std::vector<FeatureMatrix>& normalized_features,
    const std::vector<std::vector<std::pair<int, int>>>& edges, std::span<const double> y,
    const std::vector<std::size_t>& direction_counts,
    const std::vector<std::size_t>& threshold_counts, std::uint64_t direction_seed,
    const CVConfig& cfg, unsigned jobs = 1);

}  // namespace ectmol
