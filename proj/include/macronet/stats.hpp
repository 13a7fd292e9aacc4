#pragma once

namespace macronet {

/// Regularized lower incomplete gamma P(a, x), relative error ~1e-14.
double reg_gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b), relative error ~1e-14.
double reg_beta(double a, double b, double x);

/// CDF of Student's t with `df` degrees of freedom.  Throws InvalidDf for df < 1.
double student_t_cdf(double x, double df);

/// CDF of the chi-squared distribution.  Negative x maps to 0.
double chi2_cdf(double x, double df);

/// CDF of the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);

/// Two-sided p value for a t statistic.  Non-finite t maps to p = 0.
double t_pvalue(double t, double df);

}  // namespace macronet
