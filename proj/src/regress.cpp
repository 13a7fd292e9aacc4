#include "macronet/regress.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "macronet/errors.hpp"
#include "macronet/stats.hpp"

namespace macronet {

namespace {
constexpr double kRankTol = 1e-10;
}

const char* estimator_name(Estimator e) noexcept {
  switch (e) {
    case Estimator::OLS: return "OLS";
    case Estimator::FE: return "FE";
    case Estimator::RE: return "RE";
    case Estimator::TSLS: return "2SLS";
    case Estimator::LIML: return "LIML";
    case Estimator::VAREq: return "VAREq";
  }
  return "OLS";
}

DesignMatrix DesignMatrix::build(
    const std::vector<std::pair<std::string, Eigen::VectorXd>>& columns, bool intercept) {
  if (columns.empty() && !intercept) raise(errc::invalid_params, "empty design");
  Eigen::Index n = columns.empty() ? 0 : columns.front().second.size();
  DesignMatrix d;
  d.has_intercept = intercept;
  d.X.resize(n, static_cast<Eigen::Index>(columns.size()) + (intercept ? 1 : 0));
  Eigen::Index j = 0;
  for (const auto& [name, values] : columns) {
    if (values.size() != n) raise(errc::invalid_params, "column length mismatch for " + name);
    d.names.push_back(name);
    d.X.col(j++) = values;
  }
  if (intercept) {
    d.names.emplace_back("_cons");
    d.X.col(j).setOnes();
  }
  return d;
}

double RegressionResult::coef(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) raise(errc::name_mismatch, "no coefficient named " + name);
  return beta(it - names.begin());
}

double RegressionResult::tstat(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) raise(errc::name_mismatch, "no coefficient named " + name);
  return t(it - names.begin());
}

double RegressionResult::pvalue(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) raise(errc::name_mismatch, "no coefficient named " + name);
  return p(it - names.begin());
}

RegressionResult ols(const Eigen::VectorXd& y, const DesignMatrix& design) {
  const Eigen::Index n = design.n();
  const Eigen::Index k = design.k();
  if (y.size() != n) raise(errc::invalid_params, "response length does not match design");
  if (n <= k) {
    raise(errc::too_few_observations,
          "n=" + std::to_string(n) + " observations for k=" + std::to_string(k) + " regressors");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
  Eigen::MatrixXd r_full = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  double pivot_scale = std::fabs(r_full(0, 0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::fabs(r_full(i, i)) > kRankTol * pivot_scale) ++rank;
  }
  if (rank < k) {
    Eigen::Index bad = qr.colsPermutation().indices()(rank);
    raise(errc::rank_deficient, "column '" + design.names[bad] + "' is linearly dependent");
  }

  RegressionResult res;
  res.names = design.names;
  res.estimator = Estimator::OLS;
  res.n = static_cast<long>(n);
  res.df_resid = static_cast<double>(n - k);
  res.beta = qr.solve(y);

  Eigen::VectorXd resid = y - design.X * res.beta;
  double rss = resid.squaredNorm();
  double yss = design.has_intercept ? (y.array() - y.mean()).matrix().squaredNorm()
                                    : y.squaredNorm();
  res.exact_fit = rss <= 1e-20 * std::max(1.0, y.squaredNorm());
  if (res.exact_fit) rss = 0.0;
  res.sigma2 = rss / res.df_resid;
  res.r2 = yss > 0.0 ? 1.0 - rss / yss : 1.0;
  res.r2_adj = 1.0 - (1.0 - res.r2) * static_cast<double>(n - 1) / res.df_resid;

  // (X'X)^-1 = P R^-1 R^-T P' straight from the pivoted factorization.
  Eigen::MatrixXd rinv =
      r_full.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd xtx_inv = rinv * rinv.transpose();
  Eigen::MatrixXd perm = qr.colsPermutation();
  xtx_inv = perm * xtx_inv * perm.transpose();

  res.vcov = res.sigma2 * xtx_inv;
  res.se.resize(k);
  res.t.resize(k);
  res.p.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    res.se(j) = std::sqrt(std::max(0.0, res.vcov(j, j)));
    res.t(j) = res.beta(j) / res.se(j);
    res.p(j) = t_pvalue(res.t(j), res.df_resid);
  }
  return res;
}

const char* significance_stars(double p) noexcept {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace macronet
