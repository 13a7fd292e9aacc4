#pragma once

#include <map>
#include <string>
#include <vector>

#include "macronet/regress.hpp"

namespace macronet {

/// Balanced entity x time panel of named variables.
struct PanelDataset {
  std::vector<std::string> entities;
  std::vector<std::string> times;
  std::map<std::string, Eigen::MatrixXd> variables;  // name -> entities x times

  PanelDataset(std::vector<std::string> entities_, std::vector<std::string> times_,
               std::map<std::string, Eigen::MatrixXd> variables_);

  Eigen::Index n_entities() const { return static_cast<Eigen::Index>(entities.size()); }
  Eigen::Index n_times() const { return static_cast<Eigen::Index>(times.size()); }
  const Eigen::MatrixXd& var(const std::string& name) const;
};

/// Within (entity-demeaned) estimator.  Slopes and their standard errors
/// coincide with dummy-variable OLS; the reported constant is the grand-mean
/// add-back value, and df = n - k - N_entities.
RegressionResult fixed_effects(const PanelDataset& panel, const std::string& yname,
                               const std::vector<std::string>& xnames);

/// Per-entity intercepts implied by a fixed-effects fit.
std::vector<double> fixed_effect_intercepts(const PanelDataset& panel, const std::string& yname,
                                            const std::vector<std::string>& xnames,
                                            const RegressionResult& fe);

/// Swamy-Arora random effects: GLS by quasi-demeaning with
/// theta = 1 - sqrt(sigma_e^2 / (T sigma_u^2 + sigma_e^2)); a negative
/// variance-component estimate is clamped to zero (collapsing to pooled OLS).
RegressionResult random_effects(const PanelDataset& panel, const std::string& yname,
                                const std::vector<std::string>& xnames);

struct HausmanResult {
  double statistic = 0.0;
  int df = 0;
  double p = 1.0;
  bool pseudo_inverse_used = false;
};

/// H = (b_FE - b_RE)' (V_FE - V_RE)^-1 (b_FE - b_RE) over the shared slopes
/// (intercept excluded), chi-squared with one df per slope.
HausmanResult hausman(const RegressionResult& fe, const RegressionResult& re);

}  // namespace macronet
