#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace micky {

// Matern 5/2 covariance with per-dimension lengthscales:
//   k(x, x') = s2 * (1 + sqrt(5) r + 5 r^2 / 3) * exp(-sqrt(5) r),
//   r = sqrt(sum_d ((x_d - x'_d) / l_d)^2).
double matern52(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                const Eigen::VectorXd& lengthscales, double signal_variance);

struct GpPrediction {
  double mean = 0.0;
  double std = 0.0;
};

// Exact GP regression on standardized targets. fit() builds and factorizes
// K + (noise + 1e-6) I; predictions are de-standardized back to the
// original objective units. Immutable once fitted.
class GpModel {
 public:
  // X: one row per training point. Throws on factorization failure after a
  // single retry with 10x jitter.
  static GpModel fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& lengthscales, double signal_variance,
                     double noise_variance);

  // Posterior in original objective units. A zero target spread (constant
  // training targets) yields std 0 everywhere.
  GpPrediction predict(const Eigen::VectorXd& x) const;

  // Posterior in standardized target units.
  GpPrediction predict_standardized(const Eigen::VectorXd& x) const;

  // Gaussian log evidence of the (standardized) training targets.
  double log_marginal_likelihood() const;

  std::size_t n_train() const { return static_cast<std::size_t>(X_.rows()); }
  double target_mean() const { return y_mean_; }
  double target_scale() const { return y_scale_; }

 private:
  GpModel() = default;

  Eigen::MatrixXd X_;
  Eigen::VectorXd y_std_;
  Eigen::VectorXd lengthscales_;
  double signal_variance_ = 1.0;
  double noise_variance_ = 0.0;
  double jitter_ = 1e-6;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;  // 0 when training targets are constant
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;  // (K + noise I)^-1 y_std
};

// Expected improvement under the minimization convention:
//   z = (best - mean - xi) / std,
//   EI = (best - mean - xi) * Phi(z) + std * phi(z),
// and max(best - mean - xi, 0) when std == 0. Never negative.
double expected_improvement(double mean, double std, double best_observed, double xi = 0.0);

// Hyperparameter grid searched by fit_grid.
struct GpHyperGrid {
  std::vector<double> lengthscales{0.1, 0.3, 1.0, 3.0};  // shared across dims
  std::vector<double> signal_variances{0.5, 1.0, 2.0};
  std::vector<double> noise_variances{1e-4, 1e-2};
};

// Deterministic grid search maximizing log marginal likelihood; ties keep
// the earliest grid entry.
GpModel fit_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const GpHyperGrid& grid = GpHyperGrid{});

}  // namespace micky
