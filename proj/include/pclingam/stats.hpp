#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pclingam/dataset.hpp"
#include "pclingam/graph.hpp"

namespace pclingam {

struct CiTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool independent = true;
};

struct NormalityResult {
  /// Raw Anderson-Darling statistic against the fitted normal.
  double a_squared = 0.0;
  /// A^2 (1 + 0.75/N + 2.25/N^2).
  double adjusted = 0.0;
  double p_value = 1.0;
};

enum class Contrast { AbsValue };

/// Contrast f and its Gaussian reference k = E f(g), g ~ N(0, 1).
struct ScoreConfig {
  Contrast contrast = Contrast::AbsValue;
  double gaussian_reference = std::sqrt(2.0 / std::numbers::pi);

  static ScoreConfig abs_value() { return {}; }
};

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Each row shifted to mean 0 and scaled to unit (1/N) variance.
/// Rows with zero variance are left centred; callers decide whether that is an error.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> standardize_rows(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = m.colwise() - m.rowwise().mean();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const Scalar sd = std::sqrt(out.row(i).squaredNorm() / static_cast<Scalar>(out.cols()));
    if (sd > Scalar(0)) out.row(i) /= sd;
  }
  return out;
}

/// Biased (1/N) covariance of the rows of `m`.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> row_covariance(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> centred = m.colwise() - m.rowwise().mean();
  return centred * centred.transpose() / static_cast<Scalar>(m.cols());
}

/// Partial correlation of i and j given `cond`, read off the inverse of the
/// covariance submatrix. Throws DegenerateData if that submatrix is singular.
double partial_correlation(const Eigen::MatrixXd& covariance, Node i, Node j, std::span<const Node> cond);
double partial_correlation(const Dataset& data, Node i, Node j, std::span<const Node> cond);

/// Fisher z test of a zero partial correlation `r` estimated from `n_samples`.
CiTestResult fisher_z_test(double r, Eigen::Index n_samples, std::size_t cond_size, double alpha);

CiTestResult ci_test(const Dataset& data, Node i, Node j, std::span<const Node> cond, double alpha);

/// Fisher z tests sharing one covariance estimate.
class CiTester {
 public:
  explicit CiTester(const Dataset& data);
  CiTestResult test(Node i, Node j, std::span<const Node> cond, double alpha) const;
  int variables() const { return static_cast<int>(covariance_.rows()); }

 private:
  Eigen::MatrixXd covariance_;
  Eigen::Index samples_;
};

struct OlsFit {
  /// coefficients(i, j): estimated weight of parent j in the regression for i.
  Eigen::MatrixXd coefficients;
  Eigen::VectorXd intercepts;
  /// Residuals standardized per variable.
  Dataset residuals;
};

/// Regresses every node (with intercept) on its parents in `dag`.
OlsFit ols_fit(const Dataset& data, const Dag& dag);
Dataset ols_residuals(const Dataset& data, const Dag& dag);

/// (mean f(e) - k)^2 for one residual, without checking that it is standardized.
double nongaussianity_term(const Eigen::Ref<const Eigen::RowVectorXd>& residual, const ScoreConfig& config = {});

/// U = sum_i (mean f(e_i) - k)^2 over standardized residuals.
double nongaussianity_score(const Dataset& residuals, const ScoreConfig& config = {});
double nongaussianity_score(const Eigen::MatrixXd& residuals, const ScoreConfig& config = {});

/// Composite-normality Anderson-Darling test with estimated mean and variance.
/// Requires at least 8 observations.
NormalityResult anderson_darling(std::span<const double> sample);
NormalityResult anderson_darling(const Eigen::Ref<const Eigen::VectorXd>& sample);

/// Upper-tail p-value for an adjusted A^2; non-increasing in its argument.
double anderson_darling_p_value(double adjusted);

}  // namespace pclingam
