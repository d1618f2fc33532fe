#include "ectmol/regression.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "ectmol/errors.hpp"
#include "ectmol/rng.hpp"

namespace ectmol {

namespace {

void parallel_rows(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned j = 0; j < spawn; ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

// In-place lower Cholesky; returns false when the matrix is not positive
// definite within floating tolerance.
bool cholesky(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    double root = std::sqrt(d);
    a[j * n + j] = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      const double* ri = &a[i * n];
      const double* rj = &a[j * n];
      for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
      a[i * n + j] = s / root;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double>& b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
    b[i] = s / l[i * n + i];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

std::pair<double, double> mean_sample_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

RidgeModel fit_ridge(const Matrix& x, std::span<const double> y, double lambda, unsigned jobs) {
  const std::size_t n = x.rows;
  const std::size_t w = x.cols;
  if (n == 0 || w == 0) throw_error(errc::shape_mismatch, "empty design matrix");
  if (y.size() != n) {
    throw_error(errc::shape_mismatch, "X has " + std::to_string(n) + " rows, y has " +
                                          std::to_string(y.size()));
  }
  if (lambda < 0.0) throw_error(errc::shape_mismatch, "lambda must be >= 0");

  std::vector<double> col_mean(w, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.row(i);
    for (std::size_t j = 0; j < w; ++j) col_mean[j] += row[j];
  }
  for (double& m : col_mean) m /= static_cast<double>(n);
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);

  Matrix xc(n, w);
  std::vector<double> yc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* src = x.row(i);
    double* dst = xc.row(i);
    for (std::size_t j = 0; j < w; ++j) dst[j] = src[j] - col_mean[j];
    yc[i] = y[i] - y_mean;
  }

  const double ridge = lambda * static_cast<double>(n);
  RidgeModel model;
  model.lambda = lambda;
  model.weights.assign(w, 0.0);

  const bool use_dual = lambda > 0.0 && w > n;
  if (use_dual) {
    // (Xc Xc' + lambda N I) alpha = yc;  w = Xc' alpha
    std::vector<double> gram(n * n, 0.0);
    parallel_rows(n, jobs, [&](std::size_t i) {
      for (std::size_t k = 0; k <= i; ++k) {
        double v = dot(xc.row(i), xc.row(k), w);
        gram[i * n + k] = v;
        gram[k * n + i] = v;
      }
      gram[i * n + i] += ridge;
    });
    if (!cholesky(gram, n)) {
      throw_error(errc::singular_system, "dual system is not positive definite");
    }
    std::vector<double> alpha = yc;
    cholesky_solve(gram, n, alpha);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = xc.row(i);
      double a = alpha[i];
      for (std::size_t j = 0; j < w; ++j) model.weights[j] += a * row[j];
    }
  } else {
    std::vector<double> normal(w * w, 0.0);
    parallel_rows(w, jobs, [&](std::size_t j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double* row = xc.row(i);
        double v = row[j];
        if (v == 0.0) continue;
        double* out = &normal[j * w];
        for (std::size_t k = 0; k <= j; ++k) out[k] += v * row[k];
      }
    });
    for (std::size_t j = 0; j < w; ++j) {
      for (std::size_t k = 0; k < j; ++k) normal[k * w + j] = normal[j * w + k];
      normal[j * w + j] += ridge;
    }
    std::vector<double> rhs(w, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = xc.row(i);
      double v = yc[i];
      for (std::size_t j = 0; j < w; ++j) rhs[j] += v * row[j];
    }
    if (!cholesky(normal, w)) {
      throw_error(errc::singular_system,
                  "normal equations are singular; use lambda > 0 for rank-deficient X");
    }
    cholesky_solve(normal, w, rhs);
    model.weights = std::move(rhs);
  }

  model.intercept = y_mean - dot(col_mean.data(), model.weights.data(), w);
  for (double v : model.weights) {
    if (!std::isfinite(v)) throw_error(errc::singular_system, "non-finite weights");
  }
  return model;
}

std::vector<double> predict(const RidgeModel& model, const Matrix& x) {
  if (x.cols != model.weights.size()) {
    throw_error(errc::shape_mismatch, "model width " + std::to_string(model.weights.size()) +
                                          " != X width " + std::to_string(x.cols));
  }
  std::vector<double> out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    out[i] = dot(x.row(i), model.weights.data(), x.cols) + model.intercept;
  }
  return out;
}

double rmse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size() || pred.empty()) {
    throw_error(errc::shape_mismatch, "prediction and truth lengths differ or are zero");
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double d = pred[i] - truth[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(pred.size()));
}

double r_squared(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size() || pred.empty()) {
    throw_error(errc::shape_mismatch, "prediction and truth lengths differ or are zero");
  }
  double mean = 0.0;
  for (double v : truth) mean += v;
  mean /= static_cast<double>(truth.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_tot += (truth[i] - mean) * (truth[i] - mean);
    ss_res += (truth[i] - pred[i]) * (truth[i] - pred[i]);
  }
  if (ss_tot == 0.0) throw_error(errc::zero_variance, "truth vector is constant");
  return 1.0 - ss_res / ss_tot;
}

CVReport cross_validate(const Matrix& x, std::span<const double> y, const CVConfig& cfg,
                        unsigned jobs) {
  const std::size_t n = x.rows;
  if (cfg.folds < 2) throw_error(errc::too_few_rows, "need at least 2 folds");
  if (n < cfg.folds) {
    throw_error(errc::too_few_rows, std::to_string(n) + " rows cannot fill " +
                                        std::to_string(cfg.folds) + " folds");
  }
  if (y.size() != n) throw_error(errc::shape_mismatch, "X and y row counts differ");

  // Fisher-Yates with an explicit modulo mapping: the shuffle is part of the
  // reproducibility contract.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  GaussianRng rng(cfg.shuffle_seed);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
    std::swap(order[i], order[j]);
  }

  const std::size_t base = n / cfg.folds;
  const std::size_t extra = n % cfg.folds;

  CVReport report;
  report.folds = cfg.folds;
  report.shuffle_seed = cfg.shuffle_seed;
  report.lambda = cfg.lambda;
  report.feature_width = x.cols;

  std::size_t begin = 0;
  for (std::size_t fold = 0; fold < cfg.folds; ++fold) {
    std::size_t size = base + (fold < extra ? 1 : 0);
    std::size_t end = begin + size;

    Matrix train(n - size, x.cols);
    Matrix test(size, x.cols);
    std::vector<double> y_train(n - size), y_test(size);
    std::size_t ti = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t src = order[k];
      if (k >= begin && k < end) {
        std::copy(x.row(src), x.row(src) + x.cols, test.row(k - begin));
        y_test[k - begin] = y[src];
      } else {
        std::copy(x.row(src), x.row(src) + x.cols, train.row(ti));
        y_train[ti] = y[src];
        ++ti;
      }
    }

    RidgeModel model = fit_ridge(train, y_train, cfg.lambda, jobs);
    auto pred = predict(model, test);
    report.fold_rmse.push_back(rmse(pred, y_test));
    report.fold_r2.push_back(r_squared(pred, y_test));
    begin = end;
  }

  std::tie(report.rmse_mean, report.rmse_std) = mean_sample_std(report.fold_rmse);
  std::tie(report.r2_mean, report.r2_std) = mean_sample_std(report.fold_r2);
  return report;
}

std::string CVReport::to_json() const {
  nlohmann::json j;
  j["representation"] = representation;
  j["dataset"] = dataset;
  j["feature_width"] = feature_width;
  j["folds"] = folds;
  j["shuffle_seed"] = shuffle_seed;
  j["lambda"] = lambda;
  j["fold_rmse"] = fold_rmse;
  j["fold_r2"] = fold_r2;
  j["rmse_mean"] = rmse_mean;
  j["rmse_std"] = rmse_std;
  j["r2_mean"] = r2_mean;
  j["r2_std"] = r2_std;
  return j.dump(2);
}

std::string CVReport::to_table() const {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof(line), "%-28s %-20s %6s %18s %18s\n", "representation", "dataset",
                "folds", "RMSE", "R2");
  out += line;
  std::snprintf(line, sizeof(line), "%-28s %-20s %6zu %8.2f \xc2\xb1 %-7.2f %8.2f \xc2\xb1 %-7.2f\n",
                representation.c_str(), dataset.c_str(), folds, rmse_mean, rmse_std, r2_mean,
                r2_std);
  out += line;
  return out;
}

std::vector<SweepRow> sensitivity_sweep(
    const std::vector<FeatureMatrix>& normalized_features,
    const std::vector<std::vector<std::pair<int, int>>>& edges, std::span<const double> y,
    const std::vector<std::size_t>& direction_counts,
    const std::vector<std::size_t>& threshold_counts, std::uint64_t direction_seed,
    const CVConfig& cfg, unsigned jobs) {
  if (normalized_features.empty()) throw_error(errc::empty_dataset, "no molecules to sweep");
  const std::size_t dim = normalized_features.front().width;

  std::vector<SweepRow> rows;
  for (std::size_t d : direction_counts) {
    for (std::size_t t : threshold_counts) {
      try {
        DirectionSet dirs = sample_directions(dim, d, direction_seed);
        ThresholdGrid grid = ThresholdGrid::uniform(t);
        EctTable table = ect_batch(normalized_features, edges, dirs, grid, jobs);
        Matrix x(table.rows, table.width());
        for (std::size_t i = 0; i < table.values.size(); ++i) {
          x.values[i] = static_cast<double>(table.values[i]);
        }
        CVReport report = cross_validate(x, y, cfg, jobs);
        rows.push_back({d, t, report.rmse_mean, report.rmse_std, report.r2_mean, report.r2_std});
      } catch (const Error& e) {
        throw Error(e.code(), "sweep (D=" + std::to_string(d) + ", T=" + std::to_string(t) +
                                  "): " + e.message());
      }
    }
  }
  return rows;
}

}  // namespace ectmol
