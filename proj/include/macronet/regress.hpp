#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace macronet {

enum class Estimator { OLS, FE, RE, TSLS, LIML, VAREq };

const char* estimator_name(Estimator e) noexcept;

/// Regression design with named columns.  The intercept, when requested, is
/// appended last under the name "_cons".
struct DesignMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd X;  // n x k
  bool has_intercept = false;

  static DesignMatrix build(const std::vector<std::pair<std::string, Eigen::VectorXd>>& columns,
                            bool intercept);

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index k() const { return X.cols(); }
};

/// Coefficients with classical (homoskedastic) inference.  p values come
/// from Student's t with the estimator's residual degrees of freedom.
struct RegressionResult {
  std::vector<std::string> names;
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  Eigen::VectorXd t;
  Eigen::VectorXd p;
  Eigen::MatrixXd vcov;
  double sigma2 = 0.0;
  double r2 = 0.0;
  double r2_adj = 0.0;
  double df_resid = 0.0;
  long n = 0;
  Estimator estimator = Estimator::OLS;
  bool exact_fit = false;
  std::vector<std::string> warnings;

  double coef(const std::string& name) const;
  double tstat(const std::string& name) const;
  double pvalue(const std::string& name) const;
};

/// Least squares via column-pivoted Householder QR.  Rank deficiency is
/// detected at 1e-10 times the largest pivot and reported with the name of
/// the offending column.
RegressionResult ols(const Eigen::VectorXd& y, const DesignMatrix& X);

/// Significance stars matching the emitted tables: * p<0.05, ** p<0.01,
/// *** p<0.001.
const char* significance_stars(double p) noexcept;

}  // namespace macronet
