#include "micky/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace micky {

namespace {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const Eigen::VectorXd& lengthscales,
                              double signal_variance) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      double k = matern52(X.row(i), X.row(j), lengthscales, signal_variance);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

}  // namespace

double matern52(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                const Eigen::VectorXd& lengthscales, double signal_variance) {
  if (x.size() != y.size() || x.size() != lengthscales.size()) {
    throw std::invalid_argument("matern52: dimension mismatch");
  }
  if (!(signal_variance > 0) || (lengthscales.array() <= 0).any()) {
    throw std::invalid_argument("matern52: hyperparameters must be positive");
  }
  double r2 = 0.0;
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const double scaled = (x[d] - y[d]) / lengthscales[d];
    r2 += scaled * scaled;
  }
  const double r = std::sqrt(r2);
  const double sqrt5_r = std::sqrt(5.0) * r;
  return signal_variance * (1.0 + sqrt5_r + 5.0 * r2 / 3.0) * std::exp(-sqrt5_r);
}

GpModel GpModel::fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& lengthscales, double signal_variance,
                     double noise_variance) {
  if (X.rows() < 1) throw std::invalid_argument("GpModel::fit: no training points");
  if (X.rows() != y.size()) throw std::invalid_argument("GpModel::fit: X/y size mismatch");
  if (noise_variance < 0) throw std::invalid_argument("GpModel::fit: negative noise");

  GpModel model;
  model.X_ = X;
  model.lengthscales_ = lengthscales;
  model.signal_variance_ = signal_variance;
  model.noise_variance_ = noise_variance;

  model.y_mean_ = y.mean();
  const Eigen::VectorXd centered = y.array() - model.y_mean_;
  const double variance = centered.squaredNorm() / static_cast<double>(y.size());
  model.y_scale_ = std::sqrt(variance);
  // Constant targets standardize to zeros; scale 0 is kept so predictions
  // de-standardize to zero spread.
  const double divisor = model.y_scale_ > 1e-12 ? model.y_scale_ : 1.0;
  model.y_std_ = centered / divisor;

  const Eigen::MatrixXd K = kernel_matrix(X, lengthscales, signal_variance);
  model.jitter_ = 1e-6;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::MatrixXd Kn = K;
    Kn.diagonal().array() += noise_variance + model.jitter_;
    model.llt_.compute(Kn);
    if (model.llt_.info() == Eigen::Success) {
      model.alpha_ = model.llt_.solve(model.y_std_);
      return model;
    }
    model.jitter_ *= 10.0;
  }
  throw std::runtime_error("GpModel::fit: non-PSD kernel matrix");
}

GpPrediction GpModel::predict_standardized(const Eigen::VectorXd& x) const {
  const Eigen::Index n = X_.rows();
  Eigen::VectorXd k_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k_star[i] = matern52(X_.row(i), x, lengthscales_, signal_variance_);
  }
  const double mean = k_star.dot(alpha_);
  const Eigen::VectorXd v = llt_.solve(k_star);
  double variance = signal_variance_ + noise_variance_ - k_star.dot(v);
  variance = std::max(variance, 0.0);
  return {mean, std::sqrt(variance)};
}

GpPrediction GpModel::predict(const Eigen::VectorXd& x) const {
  GpPrediction p = predict_standardized(x);
  return {y_mean_ + y_scale_ * p.mean, y_scale_ * p.std};
}

double GpModel::log_marginal_likelihood() const {
  const auto n = static_cast<double>(X_.rows());
  double log_det = 0.0;
  const auto& L = llt_.matrixLLT();
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    log_det += std::log(L(i, i));
  }
  return -0.5 * y_std_.dot(alpha_) - log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

double expected_improvement(double mean, double std, double best_observed, double xi) {
  if (std < 0) throw std::invalid_argument("expected_improvement: negative std");
  const double improvement = best_observed - mean - xi;
  if (std == 0.0) return std::max(improvement, 0.0);
  const double z = improvement / std;
  const double ei = improvement * normal_cdf(z) + std * normal_pdf(z);
  return std::max(ei, 0.0);
}

GpModel fit_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const GpHyperGrid& grid) {
  std::optional<GpModel> best;
  double best_lml = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd ls(X.cols());
  for (double l : grid.lengthscales) {
    ls.setConstant(l);
    for (double s2 : grid.signal_variances) {
      for (double noise : grid.noise_variances) {
        GpModel model = GpModel::fit(X, y, ls, s2, noise);
        const double lml = model.log_marginal_likelihood();
        if (!best || lml > best_lml) {
          best = std::move(model);
          best_lml = lml;
        }
      }
    }
  }
  return *std::move(best);
}

}  // namespace micky
