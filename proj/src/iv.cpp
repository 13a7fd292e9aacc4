#include "macronet/iv.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "macronet/errors.hpp"
#include "macronet/stats.hpp"

namespace macronet {

namespace {

Eigen::MatrixXd bind_columns(const NamedColumns& a, const NamedColumns& b,
                     std::vector<std::string>* names, Eigen::Index n) {
  Eigen::MatrixXd out(n, static_cast<Eigen::Index>(a.size() + b.size()));
  Eigen::Index j = 0;
  for (const auto& [name, col] : a) {
    if (col.size() != n) raise(errc::invalid_params, "column length mismatch for " + name);
    if (names != nullptr) names->push_back(name);
    out.col(j++) = col;
  }
  for (const auto& [name, col] : b) {
    if (col.size() != n) raise(errc::invalid_params, "column length mismatch for " + name);
    if (names != nullptr) names->push_back(name);
    out.col(j++) = col;
  }
  return out;
}

// Least-squares projection of each column of m onto the span of z.
Eigen::MatrixXd project(const Eigen::MatrixXd& z, const Eigen::MatrixXd& m) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z);
  return z * qr.solve(m);
}

void check_shapes(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                  const NamedColumns& instruments) {
  if (endogenous.empty() && instruments.empty()) return;
  if (instruments.size() < endogenous.size()) {
    raise(errc::under_identified,
          std::to_string(instruments.size()) + " instruments for " +
              std::to_string(endogenous.size()) + " endogenous regressors");
  }
  (void)y;
}

void add_first_stage_diagnostics(RegressionResult& res, const Eigen::VectorXd& y,
                                 const NamedColumns& endogenous, const NamedColumns& exogenous,
                                 const NamedColumns& instruments) {
  if (endogenous.empty() || instruments.empty()) return;
  const Eigen::Index n = y.size();
  std::vector<std::string> znames;
  Eigen::MatrixXd zfull = bind_columns(exogenous, instruments, &znames, n);
  Eigen::MatrixXd zexog(n, static_cast<Eigen::Index>(exogenous.size()));
  for (std::size_t j = 0; j < exogenous.size(); ++j) zexog.col(j) = exogenous[j].second;

  const double q = static_cast<double>(instruments.size());
  const double df2 = static_cast<double>(n) - static_cast<double>(zfull.cols());
  if (df2 <= 0.0) return;
  for (const auto& [name, x] : endogenous) {
    Eigen::VectorXd fit_u = x - project(zfull, x);
    double rss_u = fit_u.squaredNorm();
    double rss_r;
    if (exogenous.empty()) {
      rss_r = x.squaredNorm();
    } else {
      Eigen::VectorXd fit_r = x - project(zexog, x);
      rss_r = fit_r.squaredNorm();
    }
    double f = ((rss_r - rss_u) / q) / (rss_u / df2);
    if (f < 10.0) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "WeakInstrumentWarning: first-stage F=%.3f for %s", f,
                    name.c_str());
      res.warnings.emplace_back(buf);
    }
  }
}

}  // namespace

RegressionResult two_stage_least_squares(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                                         const NamedColumns& exogenous,
                                         const NamedColumns& instruments) {
  check_shapes(y, endogenous, instruments);
  const Eigen::Index n = y.size();
  std::vector<std::string> names;
  Eigen::MatrixXd x = bind_columns(endogenous, exogenous, &names, n);
  const Eigen::Index k = x.cols();
  if (n <= k) raise(errc::too_few_observations, "more regressors than observations");

  Eigen::MatrixXd zfull = bind_columns(exogenous, instruments, nullptr, n);
  Eigen::MatrixXd xhat = x;
  for (std::size_t j = 0; j < endogenous.size(); ++j) {
    xhat.col(static_cast<Eigen::Index>(j)) = project(zfull, x.col(static_cast<Eigen::Index>(j)));
  }

  Eigen::MatrixXd xtx = xhat.transpose() * xhat;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    raise(errc::under_identified, "first-stage rank condition failed");
  }
  Eigen::VectorXd beta = ldlt.solve(xhat.transpose() * y);

  RegressionResult res;
  res.names = std::move(names);
  res.estimator = Estimator::TSLS;
  res.n = static_cast<long>(n);
  res.df_resid = static_cast<double>(n - k);
  res.beta = beta;

  Eigen::VectorXd resid = y - x * beta;  // original regressors, not fitted
  double rss = resid.squaredNorm();
  res.sigma2 = rss / res.df_resid;
  double yss = (y.array() - y.mean()).matrix().squaredNorm();
  res.r2 = yss > 0.0 ? 1.0 - rss / yss : 1.0;
  res.r2_adj = 1.0 - (1.0 - res.r2) * static_cast<double>(n - 1) / res.df_resid;
  res.vcov = res.sigma2 * ldlt.solve(Eigen::MatrixXd::Identity(k, k));
  res.se.resize(k);
  res.t.resize(k);
  res.p.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    res.se(j) = std::sqrt(std::max(0.0, res.vcov(j, j)));
    res.t(j) = res.beta(j) / res.se(j);
    res.p(j) = t_pvalue(res.t(j), res.df_resid);
  }
  add_first_stage_diagnostics(res, y, endogenous, exogenous, instruments);
  return res;
}

namespace {

double compute_kappa(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                     const NamedColumns& exogenous, const NamedColumns& instruments) {
  if (endogenous.empty()) return 1.0;
  const Eigen::Index n = y.size();
  const Eigen::Index g = static_cast<Eigen::Index>(endogenous.size());

  Eigen::MatrixXd ystack(n, g + 1);
  ystack.col(0) = y;
  for (Eigen::Index j = 0; j < g; ++j) ystack.col(j + 1) = endogenous[j].second;

  Eigen::MatrixXd zfull = bind_columns(exogenous, instruments, nullptr, n);
  Eigen::MatrixXd m_full = ystack - project(zfull, ystack);
  Eigen::MatrixXd w2 = ystack.transpose() * m_full;

  Eigen::MatrixXd w1;
  if (exogenous.empty()) {
    w1 = ystack.transpose() * ystack;
  } else {
    Eigen::MatrixXd zexog(n, static_cast<Eigen::Index>(exogenous.size()));
    for (std::size_t j = 0; j < exogenous.size(); ++j) zexog.col(j) = exogenous[j].second;
    Eigen::MatrixXd m_exog = ystack - project(zexog, ystack);
    w1 = ystack.transpose() * m_exog;
  }
  // Symmetrize away the rounding skew before the generalized eigensolve.
  w1 = 0.5 * (w1 + w1.transpose()).eval();
  w2 = 0.5 * (w2 + w2.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(w1, w2);
  if (ges.info() != Eigen::Success) {
    raise(errc::near_singular_design, "LIML eigenproblem failed; instruments may be collinear");
  }
  return ges.eigenvalues().minCoeff();
}

}  // namespace

double liml_kappa(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                  const NamedColumns& exogenous, const NamedColumns& instruments) {
  check_shapes(y, endogenous, instruments);
  return compute_kappa(y, endogenous, exogenous, instruments);
}

RegressionResult liml(const Eigen::VectorXd& y, const NamedColumns& endogenous,
                      const NamedColumns& exogenous, const NamedColumns& instruments) {
  check_shapes(y, endogenous, instruments);
  const Eigen::Index n = y.size();
  std::vector<std::string> names;
  Eigen::MatrixXd x = bind_columns(endogenous, exogenous, &names, n);
  const Eigen::Index k = x.cols();
  if (n <= k) raise(errc::too_few_observations, "more regressors than observations");

  double kappa = compute_kappa(y, endogenous, exogenous, instruments);

  Eigen::MatrixXd zfull = bind_columns(exogenous, instruments, nullptr, n);
  Eigen::MatrixXd mx = x - project(zfull, x);     // M_Z X
  Eigen::VectorXd my = y - project(zfull, y);     // M_Z y
  Eigen::MatrixXd a = x.transpose() * x - kappa * (x.transpose() * mx);
  Eigen::VectorXd b = x.transpose() * y - kappa * (x.transpose() * my);
  a = 0.5 * (a + a.transpose()).eval();

  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success) {
    raise(errc::under_identified, "k-class moment matrix is singular");
  }
  Eigen::VectorXd beta = ldlt.solve(b);

  RegressionResult res;
  res.names = std::move(names);
  res.estimator = Estimator::LIML;
  res.n = static_cast<long>(n);
  res.df_resid = static_cast<double>(n - k);
  res.beta = beta;

  Eigen::VectorXd resid = y - x * beta;
  double rss = resid.squaredNorm();
  res.sigma2 = rss / res.df_resid;
  double yss = (y.array() - y.mean()).matrix().squaredNorm();
  res.r2 = yss > 0.0 ? 1.0 - rss / yss : 1.0;
  res.r2_adj = 1.0 - (1.0 - res.r2) * static_cast<double>(n - 1) / res.df_resid;
  res.vcov = res.sigma2 * ldlt.solve(Eigen::MatrixXd::Identity(k, k));
  res.se.resize(k);
  res.t.resize(k);
  res.p.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    res.se(j) = std::sqrt(std::max(0.0, res.vcov(j, j)));
    res.t(j) = res.beta(j) / res.se(j);
    res.p(j) = t_pvalue(res.t(j), res.df_resid);
  }
  add_first_stage_diagnostics(res, y, endogenous, exogenous, instruments);
  return res;
}

}  // namespace macronet
