#include "pclingam/stats.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "pclingam/errors.hpp"

namespace pclingam {

namespace {

void check_pair(int n, Node i, Node j, std::span<const Node> cond) {
  auto valid = [n](Node v) { return v >= 0 && v < n; };
  if (!valid(i) || !valid(j)) throw InvalidArgument("variable index out of range");
  if (i == j) throw InvalidArgument("partial correlation needs two distinct variables");
  for (Node c : cond) {
    if (!valid(c)) throw InvalidArgument("conditioning index out of range");
    if (c == i || c == j) throw InvalidArgument("conditioning set contains a tested variable");
  }
}

}  // namespace

double partial_correlation(const Eigen::MatrixXd& covariance, Node i, Node j, std::span<const Node> cond) {
  check_pair(static_cast<int>(covariance.rows()), i, j, cond);
  std::vector<Node> idx{i, j};
  idx.insert(idx.end(), cond.begin(), cond.end());
  Eigen::MatrixXd sub = covariance(idx, idx);
  Eigen::VectorXd diag = sub.diagonal();
  if ((diag.array() <= 0.0).any()) throw DegenerateData("a variable has zero variance");
  Eigen::VectorXd inv_sd = diag.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * sub * inv_sd.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < 1e-10) {
    throw DegenerateData("covariance of the tested and conditioning variables is singular");
  }
  Eigen::MatrixXd precision = corr.ldlt().solve(Eigen::MatrixXd::Identity(corr.rows(), corr.cols()));
  const double r = -precision(0, 1) / std::sqrt(precision(0, 0) * precision(1, 1));
  return std::clamp(r, -1.0, 1.0);
}

double partial_correlation(const Dataset& data, Node i, Node j, std::span<const Node> cond) {
  if (data.samples() <= static_cast<Eigen::Index>(cond.size()) + 2) {
    throw InsufficientData("partial correlation needs more than |cond| + 2 samples");
  }
  return partial_correlation(row_covariance(data.values()), i, j, cond);
}

CiTestResult fisher_z_test(double r, Eigen::Index n_samples, std::size_t cond_size, double alpha) {
  const double dof = static_cast<double>(n_samples) - static_cast<double>(cond_size) - 3.0;
  if (dof < 1.0) {
    throw InsufficientData("Fisher z test needs N - |cond| - 3 >= 1, got " + std::to_string(dof));
  }
  CiTestResult result;
  result.statistic = std::sqrt(dof) * std::atanh(r);
  result.p_value = std::clamp(std::erfc(std::abs(result.statistic) / std::numbers::sqrt2), 0.0, 1.0);
  result.independent = result.p_value > alpha;
  return result;
}

CiTestResult ci_test(const Dataset& data, Node i, Node j, std::span<const Node> cond, double alpha) {
  return fisher_z_test(partial_correlation(data, i, j, cond), data.samples(), cond.size(), alpha);
}

CiTester::CiTester(const Dataset& data)
    : covariance_(row_covariance(data.values())), samples_(data.samples()) {}

CiTestResult CiTester::test(Node i, Node j, std::span<const Node> cond, double alpha) const {
  if (samples_ <= static_cast<Eigen::Index>(cond.size()) + 2) {
    throw InsufficientData("partial correlation needs more than |cond| + 2 samples");
  }
  return fisher_z_test(partial_correlation(covariance_, i, j, cond), samples_, cond.size(), alpha);
}

OlsFit ols_fit(const Dataset& data, const Dag& dag) {
  const int n = data.variables();
  if (dag.size() != n) throw InvalidArgument("DAG and dataset disagree on the variable count");
  const Eigen::Index samples = data.samples();
  const auto& x = data.values();

  Eigen::MatrixXd coefficients = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd intercepts(n);
  Eigen::MatrixXd residuals(n, samples);
  for (Node v = 0; v < n; ++v) {
    const auto parents = dag.parents(v);
    const auto p = static_cast<Eigen::Index>(parents.size());
    if (samples <= p + 1) {
      throw InsufficientData("regression of " + data.names()[v] + " has " + std::to_string(p) +
                             " parents but only " + std::to_string(samples) + " samples");
    }
    Eigen::MatrixXd design(samples, p + 1);
    design.col(0).setOnes();
    for (Eigen::Index k = 0; k < p; ++k) design.col(k + 1) = x.row(parents[k]).transpose();
    Eigen::VectorXd y = x.row(v).transpose();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p + 1) {
      throw DegenerateData("regressors of " + data.names()[v] + " are collinear");
    }
    Eigen::VectorXd beta = qr.solve(y);
    intercepts(v) = beta(0);
    for (Eigen::Index k = 0; k < p; ++k) coefficients(v, parents[k]) = beta(k + 1);

    Eigen::VectorXd r = y - design * beta;
    const double var_y = (y.array() - y.mean()).square().mean();
    const double var_r = (r.array() - r.mean()).square().mean();
    if (!(var_r > 1e-20 * var_y) || var_y == 0.0) {
      throw DegenerateData("residual of " + data.names()[v] + " has zero variance");
    }
    residuals.row(v) = r.transpose();
  }
  return OlsFit{std::move(coefficients), std::move(intercepts),
                Dataset(data.names(), standardize_rows(residuals))};
}

Dataset ols_residuals(const Dataset& data, const Dag& dag) { return ols_fit(data, dag).residuals; }

double nongaussianity_term(const Eigen::Ref<const Eigen::RowVectorXd>& residual, const ScoreConfig& config) {
  if (std::abs(config.gaussian_reference - std::sqrt(2.0 / std::numbers::pi)) > 1e-12) {
    throw ContractViolation("gaussian_reference does not match the absolute-value contrast");
  }
  const double d = residual.cwiseAbs().mean() - config.gaussian_reference;
  return d * d;
}

double nongaussianity_score(const Eigen::MatrixXd& residuals, const ScoreConfig& config) {
  double u = 0.0;
  for (Eigen::Index i = 0; i < residuals.rows(); ++i) {
    const auto row = residuals.row(i);
    const double mean = row.mean();
    const double var = (row.array() - mean).square().mean();
    if (std::abs(mean) > 0.01 || std::abs(var - 1.0) > 0.01) {
      throw ContractViolation("residual " + std::to_string(i) + " is not standardized (mean " +
                              std::to_string(mean) + ", variance " + std::to_string(var) + ")");
    }
    u += nongaussianity_term(row, config);
  }
  return u;
}

double nongaussianity_score(const Dataset& residuals, const ScoreConfig& config) {
  return nongaussianity_score(residuals.values(), config);
}

}  // namespace pclingam
