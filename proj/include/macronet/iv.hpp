#pragma once

#include "macronet/regress.hpp"

namespace macronet {

using NamedColumns = std::vector<std::pair<std::string, Eigen::VectorXd>>;

/// Two-stage least squares.  Endogenous columns are projected on
/// [exogenous, instruments]; standard errors use residuals from the
/// original regressors.  A first-stage F below 10 adds a
/// WeakInstrumentWarning to the result instead of failing.
RegressionResult two_stage_least_squares(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                                         const NamedColumns& exogenous,
                                         const NamedColumns& instruments);

/// LIML k-class estimator; kappa is the smallest root of the generalized
/// eigenproblem |W1 - kappa W2| = 0 and equals 1 under just-identification,
/// where LIML coincides with 2SLS.
RegressionResult liml(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                      const NamedColumns& exogenous, const NamedColumns& instruments);

/// The k-class root alone, for inspection and testing.
double liml_kappa(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                  const NamedColumns& exogenous, const NamedColumns& instruments);

}  // namespace macronet
