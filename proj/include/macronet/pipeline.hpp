#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macronet/csv.hpp"
#include "macronet/gravity.hpp"
#include "macronet/multilayer.hpp"
#include "macronet/panel.hpp"
#include "macronet/tables.hpp"
#include "macronet/var.hpp"

namespace macronet {

inline constexpr const char* kVersion = "0.1.0";

/// Everything one run needs.  Exactly one of the two input modes must be
/// active: file ingestion (prices/trade/fdi paths) or the gravity generator.
struct RunConfig {
  // file mode
  std::string prices_csv;
  std::string trade_csv;
  std::string fdi_csv;
  std::string covariates_csv;

  // gravity mode
  bool gravity_mode = false;
  GravityParams gravity;
  int t_periods = 104;

  std::vector<std::string> years;  // default 2001..2009 in gravity mode
  Normalization normalization = Normalization::UnitL2;
  std::string out_dir;

  bool emit_edge_lists = true;
  bool emit_dot = true;
  bool emit_tables = true;
  bool emit_json = true;

  /// Cumulative regressor ladder for the per-year cross sections; spec (k)
  /// uses the first k names.  Defaults depend on the input mode.
  std::vector<std::string> regressor_ladder;

  /// Instrumented regressor, its instrument column, and the exogenous
  /// controls of the per-year IV specification.
  std::string iv_endogenous = "evc_trade";
  std::string iv_instrument = "geo_centrality";
  std::vector<std::string> iv_exogenous;

  std::optional<std::string> pair_origin;  // fixed-origin pair table, if any

  void validate() const;
  std::string canonical_string() const;
};

struct LayerSummary {
  std::string kind;
  double mean_offdiag = 0.0;
  double evc_eigenvalue = 0.0;
  std::vector<std::string> isolated;
};

struct YearAnalysis {
  std::string year;
  CrossLayerTable centralities;
  std::vector<std::pair<std::string, std::vector<std::optional<double>>>> covariates;
  std::vector<LayerSummary> layer_summaries;
  SpanningTree mst;
  std::vector<Band> bands;  // by return-layer centrality
  std::vector<RegressionResult> cross_section;
  std::optional<RegressionResult> iv_tsls;
  std::optional<RegressionResult> iv_liml;
  std::vector<PairRow> pair_rows;
};

struct AnalysisReport {
  std::vector<std::string> entities;
  std::vector<YearAnalysis> years;
  std::optional<RegressionResult> panel_fe;
  std::optional<RegressionResult> panel_re;
  std::optional<HausmanResult> hausman_test;
  std::vector<VarResult> var_tables;  // one per entity, when enough years
  std::string config_hash;
  Json document;  // canonical JSON form of everything above
};

/// End-to-end driver: ingest or generate, analyze every year, run the
/// estimator battery, and (when out_dir is set) emit all requested files.
/// Deterministic: same config and inputs give byte-identical JSON.
AnalysisReport run_pipeline(const RunConfig& config);

/// Long-format evolution data: one row per (entity, year, variable) for
/// gdp_per_capita, eci and evc_return.  Missing values are written as NA and
/// counted into `missing_count` when given.
std::string emit_heatmap_data(const std::vector<const AnalysisReport*>& reports,
                              std::size_t* missing_count = nullptr);

/// Minimal JSON-schema check (type / properties / required / items / enum),
/// enough to pin the report layout.
bool validate_json_schema(const Json& doc, const Json& schema, std::string* error);

/// FNV-1a 64-bit hash, hex-encoded; used for config provenance.
std::string fnv1a_hex(const std::string& data);

}  // namespace macronet
