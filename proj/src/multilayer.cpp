#include "macronet/multilayer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "macronet/errors.hpp"

namespace macronet {

namespace {

LayerMatrix reindex(const LayerMatrix& layer, const std::vector<std::string>& order) {
  const Eigen::Index n = static_cast<Eigen::Index>(order.size());
  std::vector<Eigen::Index> pos(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    auto it = std::find(layer.entities.begin(), layer.entities.end(), order[k]);
    pos[k] = static_cast<Eigen::Index>(it - layer.entities.begin());
  }
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) w(a, b) = layer.weights(pos[a], pos[b]);
  }
  return LayerMatrix(order, layer.kind, std::move(w), layer.tag);
}

void check_same_entities(const LayerMatrix& a, const LayerMatrix& b) {
  std::set<std::string> sa(a.entities.begin(), a.entities.end());
  std::set<std::string> sb(b.entities.begin(), b.entities.end());
  if (sa == sb) return;
  std::set<std::string> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::inserter(diff, diff.begin()));
  std::string list;
  for (const auto& e : diff) {
    if (!list.empty()) list += ", ";
    list += e;
  }
  raise(errc::entity_mismatch, "layers disagree on entities: {" + list + "}");
}

}  // namespace

MultiplexNetwork::MultiplexNetwork(std::vector<std::string> entities_,
                                   std::vector<LayerMatrix> layers_, std::string year_)
    : entities(std::move(entities_)), layers(std::move(layers_)), year(std::move(year_)) {
  if (layers.size() < 2) raise(errc::invalid_params, "multiplex needs at least two layers");
  for (const auto& layer : layers) {
    if (layer.entities != entities) {
      raise(errc::entity_mismatch, "layer entity order differs from multiplex order");
    }
  }
}

const Eigen::VectorXd& CrossLayerTable::column(const std::string& name) const {
  for (const auto& [key, values] : columns) {
    if (key == name) return values;
  }
  raise(errc::unknown_entity, "no column named " + name);
}

MultiplexNetwork assemble(const LayerMatrix& corr, const LayerMatrix& trade,
                          const LayerMatrix& fdi, std::string year) {
  check_same_entities(corr, trade);
  check_same_entities(corr, fdi);
  std::vector<std::string> order(corr.entities);
  std::sort(order.begin(), order.end());
  std::vector<LayerMatrix> layers;
  layers.reserve(3);
  layers.push_back(reindex(corr, order));
  layers.push_back(reindex(trade, order));
  layers.push_back(reindex(fdi, order));
  return MultiplexNetwork(std::move(order), std::move(layers), std::move(year));
}

CrossLayerTable centrality_table(const MultiplexNetwork& m, Normalization normalization) {
  CrossLayerTable table;
  table.entities = m.entities;
  table.year = m.year;
  table.normalization = normalization;
  for (const auto& layer : m.layers) {
    std::string name = std::string("evc_") + layer_kind_name(layer.kind);
    if (layer.kind == LayerKind::ReturnCorrelation) name = "evc_return";
    try {
      CentralityVector c = eigenvector_centrality(layer, normalization);
      table.columns.emplace_back(std::move(name), std::move(c.values));
    } catch (const Error& err) {
      raise(err.code(), std::string(layer_kind_name(layer.kind)) + " layer: " + err.what());
    }
  }
  return table;
}

std::vector<PairRow> pair_table(const MultiplexNetwork& m, const std::string& origin) {
  auto it = std::find(m.entities.begin(), m.entities.end(), origin);
  if (it == m.entities.end()) raise(errc::unknown_entity, origin);
  const Eigen::Index o = static_cast<Eigen::Index>(it - m.entities.begin());

  const LayerMatrix* corr = nullptr;
  const LayerMatrix* trade = nullptr;
  for (const auto& layer : m.layers) {
    if (layer.kind == LayerKind::ReturnCorrelation && corr == nullptr) corr = &layer;
    if (layer.kind == LayerKind::Trade && trade == nullptr) trade = &layer;
  }
  if (corr == nullptr || trade == nullptr) {
    raise(errc::invalid_params, "pair table needs a correlation layer and a trade layer");
  }

  std::vector<PairRow> rows;
  rows.reserve(m.entities.size() - 1);
  for (Eigen::Index p = 0; p < static_cast<Eigen::Index>(m.entities.size()); ++p) {
    if (p == o) continue;
    PairRow row;
    row.partner = m.entities[p];
    row.corr_with_origin = corr->weights(o, p);
    double flow = trade->weights(o, p);  // symmetrized at layer construction
    if (flow > 0.0) row.log10_trade = std::log10(flow);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace macronet
