#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macronet/netcore.hpp"
#include "macronet/rng.hpp"
#include "macronet/timeseries.hpp"

namespace macronet {

/// Parameters of the synthetic gravity economy.
struct GravityParams {
  int n_countries = 18;
  double size_tail_exponent = 1.5;  // Pareto tail of country sizes
  double coupling = 1.0;            // trade intensity -> return-correlation strength
  double noise_scale = 0.3;         // std dev of log-normal flow noise
  double fdi_trade_elasticity = 1.0;
  std::uint64_t seed = 42;
};

/// Everything the validation battery needs to know about a generated
/// economy, including the exact knobs used.
struct GeneratorTruth {
  GravityParams params;
  int t_periods = 0;
  std::string rng_algorithm;
  std::vector<double> factor_loadings;  // per country, drives return coupling
  Eigen::MatrixXd realized_returns;     // the exact draws the prices cumulate
};

struct SyntheticEconomy {
  std::vector<std::string> entities;
  std::vector<double> sizes;                       // Y, GDP units
  std::vector<std::pair<double, double>> positions;  // unit square
  LayerMatrix trade;
  LayerMatrix fdi;
  PricePanel prices;
  GeneratorTruth truth;
};

/// Pairwise Euclidean distances of the positions, clamped below at 0.05 to
/// keep flows finite.
Eigen::MatrixXd pairwise_distances(const std::vector<std::pair<double, double>>& positions);

/// Gravity flows T_ij = Y_i * Y_j / d_ij * exp(noise_scale * z_ij), drawn per
/// ordered pair and then symmetrized; zero diagonal.  Works for any n >= 2,
/// including exact zero noise.
Eigen::MatrixXd trade_from_gravity(const std::vector<double>& sizes,
                                   const Eigen::MatrixXd& distances, double noise_scale,
                                   Rng& rng);

/// Synthetic country codes "C01", "C02", ... used when no real node set exists.
std::vector<std::string> synthetic_entities(int n);

/// Full economy: Pareto sizes, uniform positions, gravity trade and FDI
/// layers, and a one-factor price panel whose loadings grow with normalized
/// trade intensity times `coupling`.  Deterministic given (params, t_periods).
SyntheticEconomy generate(const GravityParams& params, int t_periods);

/// (Pearson r, Spearman rho) between generated sizes and trade-layer EVC.
std::pair<double, double> size_centrality_check(const SyntheticEconomy& economy);

/// Pearson correlation of two equal-length vectors.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Spearman rank correlation (average ranks on ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace macronet
