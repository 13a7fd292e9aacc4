#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macronet/gravity.hpp"
#include "macronet/multilayer.hpp"
#include "macronet/netcore.hpp"
#include "macronet/timeseries.hpp"

namespace macronet {

/// Full-precision decimal form that parses back to the identical double.
std::string fmt_full(double v);

/// Wide price file: first column `date`, remaining columns entity codes.
/// Empty or NA cells are treated as missing observations and resolved by
/// listwise alignment.
PricePanel read_price_csv(const std::string& path);
void write_price_csv(const std::string& path, const PricePanel& panel);

/// Directed flow file `year,src,dst,flow`; unlisted pairs are zero flow.
/// Layers are symmetrized on construction, and the writer emits both
/// directions so a round trip reproduces the matrix bit for bit.
std::map<std::string, LayerMatrix> read_flow_csv(const std::string& path, LayerKind kind);
void write_flow_csv(const std::string& path,
                    const std::vector<std::pair<std::string, const LayerMatrix*>>& years);

/// Long covariate file `entity,year,<name>...`; empty cells and NA both mean
/// missing.  Lookup: year -> covariate -> entity -> value.
struct CovariateTable {
  std::vector<std::string> names;
  std::map<std::string, std::map<std::string, std::map<std::string, double>>> values;

  std::optional<double> get(const std::string& year, const std::string& name,
                            const std::string& entity) const;
};
CovariateTable read_covariates_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const std::vector<std::string>& entities,
                      const Eigen::MatrixXd& m);
void write_returns_csv(const std::string& path, const ReturnPanel& panel);
void write_edge_list_csv(const std::string& path, const SpanningTree& tree);
void write_centrality_csv(const std::string& path, const CentralityVector& c);
void write_cross_layer_csv(const std::string& path, const CrossLayerTable& table);
void write_pair_table_csv(const std::string& path, const std::string& origin,
                          const std::vector<PairRow>& rows);

/// DOT rendering of a spanning tree with per-node `band` attributes.
void write_tree_dot(const std::string& path, const SpanningTree& tree,
                    const std::vector<Band>& bands);

/// Synthetic economy in exactly the formats the ingestion path reads.
void export_economy(const std::string& directory, const SyntheticEconomy& economy,
                    const std::string& year_tag);

}  // namespace macronet
