#include "macronet/panel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "macronet/errors.hpp"
#include "macronet/stats.hpp"

namespace macronet {

namespace {

// Stack an entities x times matrix into one long column, entity-major.
Eigen::VectorXd stack(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.size());
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index t = 0; t < m.cols(); ++t) out(idx++) = m(i, t);
  }
  return out;
}

Eigen::MatrixXd within_transform(const Eigen::MatrixXd& m, bool add_grand_mean) {
  Eigen::MatrixXd out = m;
  double grand = m.mean();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.row(i).array() -= m.row(i).mean();
    if (add_grand_mean) out.row(i).array() += grand;
  }
  return out;
}

std::vector<Eigen::Index> slope_indices(const RegressionResult& r) {
  std::vector<Eigen::Index> idx;
  for (std::size_t j = 0; j < r.names.size(); ++j) {
    if (r.names[j] != "_cons") idx.push_back(static_cast<Eigen::Index>(j));
  }
  return idx;
}

}  // namespace

PanelDataset::PanelDataset(std::vector<std::string> entities_, std::vector<std::string> times_,
                           std::map<std::string, Eigen::MatrixXd> variables_)
    : entities(std::move(entities_)), times(std::move(times_)), variables(std::move(variables_)) {
  if (variables.empty()) raise(errc::invalid_params, "panel has no variables");
  for (const auto& [name, m] : variables) {
    if (m.rows() != n_entities() || m.cols() != n_times()) {
      raise(errc::invalid_params, "variable '" + name + "' does not fill the balanced panel");
    }
    if (!m.allFinite()) raise(errc::invalid_params, "variable '" + name + "' has missing cells");
  }
}

const Eigen::MatrixXd& PanelDataset::var(const std::string& name) const {
  auto it = variables.find(name);
  if (it == variables.end()) raise(errc::unknown_entity, "no panel variable named " + name);
  return it->second;
}

RegressionResult fixed_effects(const PanelDataset& panel, const std::string& yname,
                               const std::vector<std::string>& xnames) {
  const Eigen::Index n_ent = panel.n_entities();
  const Eigen::Index n_obs = n_ent * panel.n_times();
  const Eigen::Index k = static_cast<Eigen::Index>(xnames.size());
  const double df_fe = static_cast<double>(n_obs - k - n_ent);
  if (df_fe <= 0) raise(errc::too_few_observations, "no residual degrees of freedom");

  std::vector<std::pair<std::string, Eigen::VectorXd>> cols;
  for (const auto& name : xnames) {
    const Eigen::MatrixXd& x = panel.var(name);
    Eigen::MatrixXd demeaned = within_transform(x, false);
    double within_ss = demeaned.squaredNorm();
    if (within_ss <= 1e-12 * std::max(1.0, x.squaredNorm())) {
      raise(errc::no_within_variation, "regressor '" + name + "' is constant within entities");
    }
    cols.emplace_back(name, stack(within_transform(x, true)));
  }
  Eigen::VectorXd y = stack(within_transform(panel.var(yname), true));

  RegressionResult res = ols(y, DesignMatrix::build(cols, true));
  // Rescale inference for the absorbed entity intercepts.
  double ratio = res.df_resid / df_fe;
  res.sigma2 *= ratio;
  res.vcov *= ratio;
  res.df_resid = df_fe;
  res.estimator = Estimator::FE;
  for (Eigen::Index j = 0; j < res.beta.size(); ++j) {
    res.se(j) = std::sqrt(std::max(0.0, res.vcov(j, j)));
    res.t(j) = res.beta(j) / res.se(j);
    res.p(j) = t_pvalue(res.t(j), res.df_resid);
  }
  res.r2_adj = 1.0 - (1.0 - res.r2) * static_cast<double>(res.n - 1) / res.df_resid;
  return res;
}

std::vector<double> fixed_effect_intercepts(const PanelDataset& panel, const std::string& yname,
                                            const std::vector<std::string>& xnames,
                                            const RegressionResult& fe) {
  std::vector<double> alpha(panel.n_entities(), 0.0);
  const Eigen::MatrixXd& y = panel.var(yname);
  for (Eigen::Index i = 0; i < panel.n_entities(); ++i) {
    double value = y.row(i).mean();
    for (const auto& name : xnames) {
      value -= fe.coef(name) * panel.var(name).row(i).mean();
    }
    alpha[i] = value;
  }
  return alpha;
}

RegressionResult random_effects(const PanelDataset& panel, const std::string& yname,
                                const std::vector<std::string>& xnames) {
  const Eigen::Index n_ent = panel.n_entities();
  const Eigen::Index n_per = panel.n_times();
  const Eigen::Index n_obs = n_ent * n_per;
  const Eigen::Index k = static_cast<Eigen::Index>(xnames.size());

  // sigma_e^2 from the within residuals.
  RegressionResult fe = fixed_effects(panel, yname, xnames);
  double rss_within = fe.sigma2 * fe.df_resid;
  double sigma_e2 = rss_within / static_cast<double>(n_obs - k - n_ent);

  // Between regression on entity means.
  if (n_ent - k - 1 <= 0) raise(errc::too_few_observations, "too few entities for between step");
  std::vector<std::pair<std::string, Eigen::VectorXd>> bcols;
  for (const auto& name : xnames) {
    bcols.emplace_back(name, panel.var(name).rowwise().mean());
  }
  Eigen::VectorXd ybar = panel.var(yname).rowwise().mean();
  RegressionResult between = ols(ybar, DesignMatrix::build(bcols, true));
  double rss_between = between.sigma2 * between.df_resid;
  double sigma_b2 = rss_between / static_cast<double>(n_ent - k - 1);
  double sigma_u2 = std::max(0.0, sigma_b2 - sigma_e2 / static_cast<double>(n_per));

  double theta =
      1.0 - std::sqrt(sigma_e2 / (static_cast<double>(n_per) * sigma_u2 + sigma_e2));

  // Quasi-demeaned GLS; the constant column transforms to 1 - theta.
  std::vector<std::pair<std::string, Eigen::VectorXd>> cols;
  for (const auto& name : xnames) {
    const Eigen::MatrixXd& x = panel.var(name);
    Eigen::MatrixXd starred = x;
    for (Eigen::Index i = 0; i < n_ent; ++i) starred.row(i).array() -= theta * x.row(i).mean();
    cols.emplace_back(name, stack(starred));
  }
  const Eigen::MatrixXd& ym = panel.var(yname);
  Eigen::MatrixXd ystar = ym;
  for (Eigen::Index i = 0; i < n_ent; ++i) ystar.row(i).array() -= theta * ym.row(i).mean();
  cols.emplace_back("_cons", Eigen::VectorXd::Constant(n_obs, 1.0 - theta));

  RegressionResult res = ols(stack(ystar), DesignMatrix::build(cols, false));
  res.estimator = Estimator::RE;
  return res;
}

HausmanResult hausman(const RegressionResult& fe, const RegressionResult& re) {
  std::vector<Eigen::Index> fe_idx = slope_indices(fe);
  std::vector<Eigen::Index> re_idx;
  for (Eigen::Index fj : fe_idx) {
    const std::string& name = fe.names[fj];
    auto it = std::find(re.names.begin(), re.names.end(), name);
    if (it == re.names.end()) {
      raise(errc::name_mismatch, "slope '" + name + "' missing from the RE result");
    }
    re_idx.push_back(it - re.names.begin());
  }
  const Eigen::Index q = static_cast<Eigen::Index>(fe_idx.size());
  if (q == 0) raise(errc::name_mismatch, "no shared slopes to compare");

  Eigen::VectorXd delta(q);
  Eigen::MatrixXd vdiff(q, q);
  for (Eigen::Index a = 0; a < q; ++a) {
    delta(a) = fe.beta(fe_idx[a]) - re.beta(re_idx[a]);
    for (Eigen::Index b = 0; b < q; ++b) {
      vdiff(a, b) = fe.vcov(fe_idx[a], fe_idx[b]) - re.vcov(re_idx[a], re_idx[b]);
    }
  }

  HausmanResult out;
  out.df = static_cast<int>(q);
  Eigen::LLT<Eigen::MatrixXd> llt(vdiff);
  if (llt.info() == Eigen::Success) {
    out.statistic = delta.dot(llt.solve(delta));
  } else {
    out.pseudo_inverse_used = true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(vdiff);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(q);
    for (Eigen::Index i = 0; i < q; ++i) {
      if (std::fabs(es.eigenvalues()(i)) > 1e-12 * std::max(scale, 1e-300)) {
        inv(i) = 1.0 / es.eigenvalues()(i);
      }
    }
    Eigen::MatrixXd pinv =
        es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
    out.statistic = delta.dot(pinv * delta);
  }
  out.p = 1.0 - chi2_cdf(out.statistic, static_cast<double>(q));
  return out;
}

}  // namespace macronet
