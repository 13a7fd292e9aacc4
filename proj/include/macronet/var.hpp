#pragma once

#include "macronet/regress.hpp"

namespace macronet {

enum class GrangerDirection {
  SecondToFirst,  // do lags of the second variable explain the first?
  FirstToSecond,
};

struct GrangerResult {
  double f = 0.0;
  double df1 = 2.0;
  double df2 = 0.0;
  double p = 1.0;
};

/// Bivariate VAR(2): each equation is OLS on
/// (L1.a, L2.a, L1.b, L2.b, _cons) with small-sample t statistics.
struct VarResult {
  std::string name_first;
  std::string name_second;
  RegressionResult eq_first;   // dependent: first variable
  RegressionResult eq_second;  // dependent: second variable
  Eigen::Matrix2d resid_cov;
  GrangerResult granger_second_to_first;
  GrangerResult granger_first_to_second;
  long n_used = 0;  // observations after losing two lags
};

VarResult var2(const std::vector<double>& first, const std::vector<double>& second,
               const std::string& name_first = "y1", const std::string& name_second = "y2");

/// Wald F test that the other variable's two lag coefficients are jointly
/// zero in the chosen equation; df = (2, n - 5).
GrangerResult granger_wald(const VarResult& v, GrangerDirection direction);

}  // namespace macronet
