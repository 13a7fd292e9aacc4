#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "macronet/timeseries.hpp"

namespace macronet {

enum class LayerKind { ReturnCorrelation, Trade, Fdi, Other };

const char* layer_kind_name(LayerKind kind) noexcept;

/// One square weighted layer over a common node set.  Trade/FDI layers are
/// symmetrized on construction, W <- (W + W^T)/2, because the centrality
/// definition assumes a symmetric matrix.
struct LayerMatrix {
  std::vector<std::string> entities;
  LayerKind kind;
  std::string tag;         // free-form label for LayerKind::Other
  Eigen::MatrixXd weights; // N x N, symmetric after construction

  LayerMatrix(std::vector<std::string> entities_, LayerKind kind_, Eigen::MatrixXd weights_,
              std::string tag_ = {});

  Eigen::Index size() const { return weights.rows(); }

  static LayerMatrix from_correlation(const CorrelationMatrix& rho);
};

/// Correlation-derived distances d = sqrt(2(1 - rho)), all in [0, 2].
struct DistanceMatrix {
  std::vector<std::string> entities;
  Eigen::MatrixXd d;  // N x N, zero diagonal, symmetric

  DistanceMatrix(std::vector<std::string> entities_, Eigen::MatrixXd d_);

  Eigen::Index size() const { return d.rows(); }
};

enum class Normalization { UnitL2, MaxOne };

/// Eigenvector centrality: the eigenvector of the dominant (algebraically
/// largest) eigenvalue, sign fixed so the entry sum is nonnegative.
struct CentralityVector {
  std::vector<std::string> entities;
  Eigen::VectorXd values;
  double eigenvalue = 0.0;
  Normalization normalization = Normalization::UnitL2;
};

struct SpanningTree {
  struct Edge {
    int i;
    int j;
    double weight;
  };
  std::vector<std::string> entities;
  std::vector<Edge> edges;  // exactly N-1 edges
  double total_weight() const;
};

enum class Band { Low, Mid, High };

const char* band_name(Band band) noexcept;

DistanceMatrix distance_from_correlation(const CorrelationMatrix& rho);

/// Kruskal MST of the complete graph under d.  Ties broken by
/// (weight, min(i,j), max(i,j)) lexicographic order, so the result is
/// deterministic.
SpanningTree minimum_spanning_tree(const DistanceMatrix& d);

/// Power iteration on the shifted matrix W + sigma*I (sigma = Gershgorin
/// bound) so the algebraically largest eigenvalue dominates.  Converges when
/// successive normalized iterates differ by < 1e-12 in L-infinity, capped at
/// 100000 iterations.  Nodes outside the largest connected component of a
/// Trade/FDI layer receive centrality 0.
CentralityVector eigenvector_centrality(const LayerMatrix& layer,
                                        Normalization normalization = Normalization::UnitL2);

/// Partition nodes by the 1/3 and 2/3 nearest-rank quantiles.  When both
/// boundaries coincide, boundary ties resolve upward to High.
std::vector<Band> tercile_bands(const CentralityVector& c);

}  // namespace macronet
