#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace pclingam {

/// Observations stored variable-major: `values()(i, s)` is variable i in sample s.
class Dataset {
 public:
  /// Throws InvalidArgument on a name/row mismatch, zero samples or non-finite entries.
  Dataset(std::vector<std::string> names, Eigen::MatrixXd values);

  int variables() const { return static_cast<int>(values_.rows()); }
  Eigen::Index samples() const { return values_.cols(); }
  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& values() const { return values_; }
  auto variable(int i) const { return values_.row(i); }

 private:
  std::vector<std::string> names_;
  Eigen::MatrixXd values_;
};

/// "X1", "X2", ...
std::vector<std::string> default_names(int n);

}  // namespace pclingam
