#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macronet/netcore.hpp"

namespace macronet {

/// Ordered set of layers over one shared node set, all in the same
/// (canonical lexicographic) entity order.
struct MultiplexNetwork {
  std::vector<std::string> entities;
  std::vector<LayerMatrix> layers;
  std::string year;

  MultiplexNetwork(std::vector<std::string> entities_, std::vector<LayerMatrix> layers_,
                   std::string year_);
};

/// One normalized centrality column per layer, plus optional covariate
/// columns sharing the entity index.
struct CrossLayerTable {
  std::vector<std::string> entities;
  std::string year;
  Normalization normalization = Normalization::UnitL2;
  std::vector<std::pair<std::string, Eigen::VectorXd>> columns;  // column name -> values

  const Eigen::VectorXd& column(const std::string& name) const;
};

/// One partner row of a fixed-origin comparison: correlation with the origin
/// and log10 of the symmetrized trade flow (missing when the flow is zero).
struct PairRow {
  std::string partner;
  double corr_with_origin = 0.0;
  std::optional<double> log10_trade;
};

/// Reindex the three layers to canonical sorted entity order and bundle them.
MultiplexNetwork assemble(const LayerMatrix& corr, const LayerMatrix& trade,
                          const LayerMatrix& fdi, std::string year = {});

/// Per-layer eigenvector centrality columns (isolated nodes get 0).
CrossLayerTable centrality_table(const MultiplexNetwork& m, Normalization normalization);

/// Fixed-origin rows pairing return correlation with log10 symmetrized trade.
std::vector<PairRow> pair_table(const MultiplexNetwork& m, const std::string& origin);

}  // namespace macronet
