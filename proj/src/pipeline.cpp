#include "macronet/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "macronet/errors.hpp"
#include "macronet/iv.hpp"

namespace macronet {

namespace {

// Re-raise module errors with the pipeline stage attached.
template <typename Fn>
auto with_stage(const std::string& stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& err) {
    raise(err.code(), "stage '" + stage + "': " + err.what());
  }
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> default_years() {
  std::vector<std::string> out;
  for (int y = 2001; y <= 2009; ++y) out.push_back(std::to_string(y));
  return out;
}

using OptColumn = std::vector<std::optional<double>>;

const OptColumn* find_covariate(const YearAnalysis& ya, const std::string& name) {
  for (const auto& [key, col] : ya.covariates) {
    if (key == name) return &col;
  }
  return nullptr;
}

// Dense column for regression use; entities with missing cells are handled
// by the caller's listwise mask.
std::optional<double> cell(const YearAnalysis& ya, const std::string& name, std::size_t i) {
  if (name == "evc_return" || name == "evc_trade" || name == "evc_fdi") {
    return ya.centralities.column(name)(static_cast<Eigen::Index>(i));
  }
  const OptColumn* col = find_covariate(ya, name);
  if (col == nullptr) return std::nullopt;
  return (*col)[i];
}

bool has_column(const YearAnalysis& ya, const std::string& name) {
  if (name == "evc_return" || name == "evc_trade" || name == "evc_fdi") return true;
  return find_covariate(ya, name) != nullptr;
}

struct RegressionFrame {
  Eigen::VectorXd y;
  NamedColumns x;
};

// Listwise-complete frame of the dependent and the named regressors.
std::optional<RegressionFrame> make_frame(const YearAnalysis& ya, const std::string& yname,
                                          const std::vector<std::string>& xnames) {
  for (const auto& name : xnames) {
    if (!has_column(ya, name)) return std::nullopt;
  }
  const std::size_t n = ya.centralities.entities.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    bool complete = cell(ya, yname, i).has_value();
    for (const auto& name : xnames) complete = complete && cell(ya, name, i).has_value();
    if (complete) keep.push_back(i);
  }
  if (keep.size() < xnames.size() + 2) return std::nullopt;

  RegressionFrame frame;
  frame.y.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t r = 0; r < keep.size(); ++r) frame.y(r) = *cell(ya, yname, keep[r]);
  for (const auto& name : xnames) {
    Eigen::VectorXd col(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) col(r) = *cell(ya, name, keep[r]);
    frame.x.emplace_back(name, std::move(col));
  }
  return frame;
}

LayerSummary summarize_layer(const LayerMatrix& layer, Normalization normalization) {
  LayerSummary s;
  s.kind = layer_kind_name(layer.kind);
  const Eigen::Index n = layer.size();
  if (n > 1) {
    double sum = layer.weights.sum() - layer.weights.diagonal().sum();
    s.mean_offdiag = sum / static_cast<double>(n * (n - 1));
  }
  s.evc_eigenvalue = eigenvector_centrality(layer, normalization).eigenvalue;
  if (layer.kind == LayerKind::Trade || layer.kind == LayerKind::Fdi) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double strength = layer.weights.row(i).sum();
      if (strength == 0.0) s.isolated.push_back(layer.entities[i]);
    }
  }
  return s;
}

Json column_json(const OptColumn& col) {
  Json arr = Json::array();
  for (const auto& v : col) arr.push_back(v ? Json(json_number(*v)) : Json(nullptr));
  return arr;
}

constexpr const char* kStarLegend = "* p<0.05, ** p<0.01, *** p<0.001";

}  // namespace

void RunConfig::validate() const {
  const bool has_files = !prices_csv.empty() || !trade_csv.empty() || !fdi_csv.empty();
  if (gravity_mode && has_files) {
    raise(errc::config_error, "choose either gravity parameters or file inputs, not both");
  }
  if (!gravity_mode) {
    if (prices_csv.empty() || trade_csv.empty() || fdi_csv.empty()) {
      raise(errc::config_error, "file mode needs prices, trade and fdi CSV paths");
    }
  }
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) raise(errc::config_error, "cannot create output directory " + out_dir);
  }
}

std::string RunConfig::canonical_string() const {
  std::ostringstream out;
  out << "mode=" << (gravity_mode ? "gravity" : "files") << ';';
  out << "prices=" << prices_csv << ";trade=" << trade_csv << ";fdi=" << fdi_csv
      << ";covariates=" << covariates_csv << ';';
  out << "n=" << gravity.n_countries << ";tail=" << fmt_full(gravity.size_tail_exponent)
      << ";coupling=" << fmt_full(gravity.coupling)
      << ";noise=" << fmt_full(gravity.noise_scale)
      << ";elasticity=" << fmt_full(gravity.fdi_trade_elasticity) << ";seed=" << gravity.seed
      << ";t_periods=" << t_periods << ';';
  out << "years=";
  for (const auto& y : years) out << y << ',';
  out << ";norm=" << (normalization == Normalization::UnitL2 ? "l2" : "max") << ';';
  out << "ladder=";
  for (const auto& r : regressor_ladder) out << r << ',';
  out << ";iv_endog=" << iv_endogenous << ";iv_inst=" << iv_instrument << ";iv_exog=";
  for (const auto& r : iv_exogenous) out << r << ',';
  out << ";origin=" << (pair_origin ? *pair_origin : "");
  return out.str();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct YearInputs {
  MultiplexNetwork multiplex;
  std::vector<std::pair<std::string, OptColumn>> covariates;
};

YearInputs gravity_year(const RunConfig& config, std::size_t year_index) {
  GravityParams params = config.gravity;
  params.seed = derive_seed(config.gravity.seed, static_cast<std::uint64_t>(year_index));
  SyntheticEconomy economy = generate(params, config.t_periods);

  ReturnPanel returns = log_returns(economy.prices);
  CorrelationMatrix rho = pearson_correlation(returns);
  MultiplexNetwork multiplex = assemble(LayerMatrix::from_correlation(rho), economy.trade,
                                        economy.fdi, config.years[year_index]);

  // Entity order is already canonical (C01, C02, ...), so derived covariate
  // columns line up with the multiplex.
  const std::size_t n = economy.entities.size();
  Eigen::MatrixXd distances = pairwise_distances(economy.positions);
  OptColumn fdi_total(n), tradeofgdp(n), gdp(n), geo(n), gdpcap(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Index ii = static_cast<Eigen::Index>(i);
    fdi_total[i] = std::log10(economy.fdi.weights.row(ii).sum());
    tradeofgdp[i] = economy.trade.weights.row(ii).sum() / economy.sizes[i];
    gdp[i] = std::log(economy.sizes[i]);
    geo[i] = static_cast<double>(n - 1) / distances.row(ii).sum();
    gdpcap[i] = economy.sizes[i];
  }
  YearInputs out{std::move(multiplex), {}};
  out.covariates.emplace_back("fdi", std::move(fdi_total));
  out.covariates.emplace_back("tradeofgdp", std::move(tradeofgdp));
  out.covariates.emplace_back("gdp", std::move(gdp));
  out.covariates.emplace_back("geo_centrality", std::move(geo));
  out.covariates.emplace_back("gdpcap", std::move(gdpcap));
  return out;
}

struct FileInputs {
  PricePanel prices;
  std::map<std::string, LayerMatrix> trade;
  std::map<std::string, LayerMatrix> fdi;
  CovariateTable covariates;
};

YearInputs file_year(const RunConfig& config, const FileInputs& files, const std::string& year) {
  auto trade_it = files.trade.find(year);
  auto fdi_it = files.fdi.find(year);
  if (trade_it == files.trade.end()) raise(errc::entity_mismatch, "no trade data for year " + year);
  if (fdi_it == files.fdi.end()) raise(errc::entity_mismatch, "no FDI data for year " + year);

  // Slice the price panel to the periods in this year (label prefix match).
  std::vector<std::string> periods;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index t = 0; t < files.prices.n_periods(); ++t) {
    if (files.prices.periods[t].substr(0, year.size()) == year) {
      periods.push_back(files.prices.periods[t]);
      cols.push_back(t);
    }
  }
  if (cols.size() < 4) raise(errc::too_short, "fewer than 4 price observations in year " + year);
  Eigen::MatrixXd slice(files.prices.n_entities(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    slice.col(static_cast<Eigen::Index>(c)) = files.prices.prices.col(cols[c]);
  }
  PricePanel year_panel(files.prices.entities, periods, std::move(slice));
  CorrelationMatrix rho = pearson_correlation(log_returns(year_panel));

  MultiplexNetwork multiplex = assemble(LayerMatrix::from_correlation(rho), trade_it->second,
                                        fdi_it->second, year);

  YearInputs out{std::move(multiplex), {}};
  for (const auto& name : files.covariates.names) {
    OptColumn col(out.multiplex.entities.size());
    for (std::size_t i = 0; i < out.multiplex.entities.size(); ++i) {
      col[i] = files.covariates.get(year, name, out.multiplex.entities[i]);
    }
    out.covariates.emplace_back(name, std::move(col));
  }
  return out;
}

std::vector<std::string> effective_ladder(const RunConfig& config, const YearAnalysis& ya) {
  if (!config.regressor_ladder.empty()) return config.regressor_ladder;
  std::vector<std::string> ladder = {"evc_trade"};
  for (const char* name : {"fdi", "credit", "tradeofgdp", "gdp"}) {
    if (find_covariate(ya, name) != nullptr) ladder.emplace_back(name);
  }
  return ladder;
}

std::vector<std::string> effective_iv_exog(const RunConfig& config, const YearAnalysis& ya) {
  if (!config.iv_exogenous.empty()) return config.iv_exogenous;
  std::vector<std::string> exog;
  for (const char* name : {"fdi", "tradeofgdp"}) {
    if (find_covariate(ya, name) != nullptr) exog.emplace_back(name);
  }
  return exog;
}

YearAnalysis analyze_year(const RunConfig& config, YearInputs inputs) {
  YearAnalysis ya;
  ya.year = inputs.multiplex.year;
  ya.centralities = with_stage("centrality", [&] {
    return centrality_table(inputs.multiplex, config.normalization);
  });
  ya.covariates = std::move(inputs.covariates);

  for (const auto& layer : inputs.multiplex.layers) {
    ya.layer_summaries.push_back(summarize_layer(layer, config.normalization));
  }

  const LayerMatrix* corr_layer = nullptr;
  for (const auto& layer : inputs.multiplex.layers) {
    if (layer.kind == LayerKind::ReturnCorrelation) corr_layer = &layer;
  }
  ya.mst = with_stage("mst", [&] {
    CorrelationMatrix rho(corr_layer->entities, corr_layer->weights);
    return minimum_spanning_tree(distance_from_correlation(rho));
  });
  CentralityVector return_evc;
  return_evc.entities = ya.centralities.entities;
  return_evc.values = ya.centralities.column("evc_return");
  ya.bands = tercile_bands(return_evc);

  // Cross-sectional ladder: spec (k) regresses evc_return on the first k
  // names plus an intercept.
  std::vector<std::string> ladder = effective_ladder(config, ya);
  with_stage("cross_section", [&] {
    for (std::size_t k = 1; k <= ladder.size(); ++k) {
      std::vector<std::string> xnames(ladder.begin(), ladder.begin() + k);
      auto frame = make_frame(ya, "evc_return", xnames);
      if (!frame) continue;
      ya.cross_section.push_back(ols(frame->y, DesignMatrix::build(frame->x, true)));
    }
    return 0;
  });

  // Per-year IV specification, skipped when the instrument column is absent.
  if (has_column(ya, config.iv_instrument) && has_column(ya, config.iv_endogenous)) {
    with_stage("iv", [&] {
      std::vector<std::string> exog = effective_iv_exog(config, ya);
      std::vector<std::string> all = {config.iv_endogenous, config.iv_instrument};
      all.insert(all.end(), exog.begin(), exog.end());
      auto frame = make_frame(ya, "evc_return", all);
      if (!frame) return 0;
      NamedColumns endog{frame->x[0]};
      NamedColumns instruments{frame->x[1]};
      NamedColumns exog_cols(frame->x.begin() + 2, frame->x.end());
      exog_cols.emplace_back("_cons", Eigen::VectorXd::Ones(frame->y.size()));
      ya.iv_tsls = two_stage_least_squares(frame->y, endog, exog_cols, instruments);
      ya.iv_liml = liml(frame->y, endog, exog_cols, instruments);
      return 0;
    });
  }

  if (config.pair_origin) {
    ya.pair_rows = with_stage("pair_table", [&] {
      return pair_table(inputs.multiplex, *config.pair_origin);
    });
  }
  return ya;
}

Json build_document(const RunConfig& config, const AnalysisReport& report) {
  Json provenance{{"version", kVersion},
                  {"config_hash", report.config_hash},
                  {"mode", config.gravity_mode ? "gravity" : "files"},
                  {"seed", config.gravity.seed},
                  {"rng_algorithm", Rng::kAlgorithm},
                  {"normalization", config.normalization == Normalization::UnitL2 ? "l2" : "max"}};

  Json years = Json::array();
  for (const auto& ya : report.years) {
    Json layers = Json::array();
    for (const auto& s : ya.layer_summaries) {
      layers.push_back({{"kind", s.kind},
                        {"mean_offdiag", json_number(s.mean_offdiag)},
                        {"evc_eigenvalue", json_number(s.evc_eigenvalue)},
                        {"isolated", s.isolated}});
    }

    Json columns = Json::object();
    for (const auto& [name, values] : ya.centralities.columns) {
      Json arr = Json::array();
      for (Eigen::Index i = 0; i < values.size(); ++i) arr.push_back(json_number(values(i)));
      columns[name] = arr;
    }
    Json covariates = Json::object();
    for (const auto& [name, col] : ya.covariates) covariates[name] = column_json(col);

    Json edges = Json::array();
    for (const auto& e : ya.mst.edges) {
      edges.push_back({{"src", ya.mst.entities[e.i]},
                       {"dst", ya.mst.entities[e.j]},
                       {"weight", json_number(e.weight)}});
    }
    Json bands = Json::array();
    for (Band b : ya.bands) bands.push_back(band_name(b));

    Json specs = Json::array();
    for (const auto& r : ya.cross_section) specs.push_back(regression_json(r));

    Json year_doc{{"year", ya.year},
                  {"n_entities", ya.centralities.entities.size()},
                  {"layers", layers},
                  {"centrality", columns},
                  {"covariates", covariates},
                  {"mst", {{"edges", edges}, {"bands", bands}}},
                  {"cross_section", {{"legend", kStarLegend}, {"specs", specs}}}};
    if (ya.iv_tsls) year_doc["iv_tsls"] = regression_json(*ya.iv_tsls);
    if (ya.iv_liml) year_doc["iv_liml"] = regression_json(*ya.iv_liml);
    if (!ya.pair_rows.empty()) {
      Json rows = Json::array();
      for (const auto& row : ya.pair_rows) {
        rows.push_back({{"partner", row.partner},
                        {"corr", json_number(row.corr_with_origin)},
                        {"log10_trade",
                         row.log10_trade ? Json(json_number(*row.log10_trade)) : Json(nullptr)}});
      }
      year_doc["pair_table"] = {{"origin", *config.pair_origin}, {"rows", rows}};
    }
    years.push_back(std::move(year_doc));
  }

  Json doc{{"provenance", provenance}, {"entities", report.entities}, {"years", years}};

  if (report.panel_fe && report.panel_re && report.hausman_test) {
    doc["panel"] = {{"legend", kStarLegend},
                    {"fe", regression_json(*report.panel_fe)},
                    {"re", regression_json(*report.panel_re)},
                    {"hausman", hausman_json(*report.hausman_test)}};
  }
  Json vars = Json::array();
  for (const auto& v : report.var_tables) {
    Json vj = var_json(v);
    vj["legend"] = kStarLegend;
    vars.push_back(std::move(vj));
  }
  doc["var"] = vars;
  return doc;
}

void emit_files(const RunConfig& config, const AnalysisReport& report) {
  namespace fs = std::filesystem;
  const fs::path out(config.out_dir);

  if (config.emit_json) {
    std::ofstream json_out(out / "report.json", std::ios::trunc);
    if (!json_out) raise(errc::config_error, "cannot write report.json");
    json_out << report.document.dump(2) << '\n';
  }

  for (const auto& ya : report.years) {
    if (config.emit_tables) {
      write_cross_layer_csv((out / ("centrality_" + ya.year + ".csv")).string(), ya.centralities);
      std::vector<const RegressionResult*> specs;
      for (const auto& r : ya.cross_section) specs.push_back(&r);
      if (!specs.empty()) {
        std::ofstream txt(out / ("cross_section_" + ya.year + ".txt"), std::ios::trunc);
        txt << regression_table_text("Estimates for the year " + ya.year, "evc_return", specs);
        std::ofstream csv(out / ("cross_section_" + ya.year + ".csv"), std::ios::trunc);
        csv << regression_table_csv(specs);
      }
      if (config.pair_origin && !ya.pair_rows.empty()) {
        write_pair_table_csv((out / ("pair_" + *config.pair_origin + "_" + ya.year + ".csv")).string(),
                             *config.pair_origin, ya.pair_rows);
      }
    }
    if (config.emit_edge_lists) {
      write_edge_list_csv((out / ("mst_" + ya.year + ".csv")).string(), ya.mst);
    }
    if (config.emit_dot) {
      write_tree_dot((out / ("mst_" + ya.year + ".dot")).string(), ya.mst, ya.bands);
    }
  }

  if (config.emit_tables) {
    std::vector<const RegressionResult*> tsls;
    std::vector<const RegressionResult*> liml_specs;
    for (const auto& ya : report.years) {
      if (ya.iv_tsls) tsls.push_back(&*ya.iv_tsls);
      if (ya.iv_liml) liml_specs.push_back(&*ya.iv_liml);
    }
    if (!tsls.empty()) {
      std::ofstream txt(out / "iv_2sls.txt", std::ios::trunc);
      txt << regression_table_text("All IV estimation (2SLS)", "evc_return", tsls);
      std::ofstream csv(out / "iv_2sls.csv", std::ios::trunc);
      csv << regression_table_csv(tsls);
    }
    if (!liml_specs.empty()) {
      std::ofstream txt(out / "iv_liml.txt", std::ios::trunc);
      txt << regression_table_text("All IV estimation (LIML)", "evc_return", liml_specs);
      std::ofstream csv(out / "iv_liml.csv", std::ios::trunc);
      csv << regression_table_csv(liml_specs);
    }
    if (report.panel_fe && report.panel_re && report.hausman_test) {
      std::ofstream txt(out / "panel.txt", std::ios::trunc);
      txt << regression_table_text("Panel estimates: fixed and random effects", "evc_return",
                                   {&*report.panel_fe, &*report.panel_re});
      txt << '\n' << hausman_text(*report.hausman_test);
      std::ofstream csv(out / "panel.csv", std::ios::trunc);
      csv << regression_table_csv({&*report.panel_fe, &*report.panel_re});
    }
    for (const auto& v : report.var_tables) {
      std::string entity = v.name_first.substr(0, v.name_first.size() - 2);
      std::ofstream txt(out / ("var_" + entity + ".txt"), std::ios::trunc);
      txt << var_table_text("VAR estimation: " + entity, v);
    }
    std::vector<const AnalysisReport*> self{&report};
    std::ofstream heat(out / "heatmap.csv", std::ios::trunc);
    heat << emit_heatmap_data(self);
  }
}

}  // namespace

AnalysisReport run_pipeline(const RunConfig& raw_config) {
  RunConfig config = raw_config;
  if (config.years.empty()) config.years = default_years();
  config.validate();

  AnalysisReport report;
  report.config_hash = fnv1a_hex(config.canonical_string());

  std::optional<FileInputs> files;
  if (!config.gravity_mode) {
    files = with_stage("ingest", [&] {
      FileInputs f{read_price_csv(config.prices_csv), read_flow_csv(config.trade_csv, LayerKind::Trade),
                   read_flow_csv(config.fdi_csv, LayerKind::Fdi), {}};
      if (!config.covariates_csv.empty()) f.covariates = read_covariates_csv(config.covariates_csv);
      return f;
    });
  }

  for (std::size_t yi = 0; yi < config.years.size(); ++yi) {
    YearInputs inputs = config.gravity_mode
                            ? with_stage("generate", [&] { return gravity_year(config, yi); })
                            : with_stage("ingest_year", [&] {
                                return file_year(config, *files, config.years[yi]);
                              });
    if (report.entities.empty()) {
      report.entities = inputs.multiplex.entities;
    } else if (report.entities != inputs.multiplex.entities) {
      raise(errc::entity_mismatch, "entity set changed between years");
    }
    report.years.push_back(analyze_year(config, std::move(inputs)));
  }

  // Panel battery over (entity, year) centralities.
  if (report.years.size() >= 2) {
    with_stage("panel", [&] {
      const Eigen::Index n_ent = static_cast<Eigen::Index>(report.entities.size());
      const Eigen::Index n_yrs = static_cast<Eigen::Index>(report.years.size());
      Eigen::MatrixXd evc_return(n_ent, n_yrs);
      Eigen::MatrixXd evc_trade(n_ent, n_yrs);
      for (Eigen::Index t = 0; t < n_yrs; ++t) {
        evc_return.col(t) = report.years[t].centralities.column("evc_return");
        evc_trade.col(t) = report.years[t].centralities.column("evc_trade");
      }
      std::vector<std::string> year_labels;
      for (const auto& ya : report.years) year_labels.push_back(ya.year);
      PanelDataset panel(report.entities, year_labels,
                         {{"evc_return", evc_return}, {"evc_trade", evc_trade}});
      report.panel_fe = fixed_effects(panel, "evc_return", {"evc_trade"});
      report.panel_re = random_effects(panel, "evc_return", {"evc_trade"});
      report.hausman_test = hausman(*report.panel_fe, *report.panel_re);
      return 0;
    });
  }

  // Per-entity VAR(2) of the two centrality series across years.
  if (report.years.size() >= 7) {
    with_stage("var", [&] {
      for (std::size_t i = 0; i < report.entities.size(); ++i) {
        std::vector<double> r_series;
        std::vector<double> t_series;
        for (const auto& ya : report.years) {
          r_series.push_back(ya.centralities.column("evc_return")(static_cast<Eigen::Index>(i)));
          t_series.push_back(ya.centralities.column("evc_trade")(static_cast<Eigen::Index>(i)));
        }
        std::string code = lowercase(report.entities[i]);
        report.var_tables.push_back(var2(r_series, t_series, code + "_r", code + "_t"));
      }
      return 0;
    });
  }

  report.document = build_document(config, report);
  if (!config.out_dir.empty()) {
    with_stage("emit", [&] {
      emit_files(config, report);
      return 0;
    });
  }
  return report;
}

std::string emit_heatmap_data(const std::vector<const AnalysisReport*>& reports,
                              std::size_t* missing_count) {
  if (reports.empty()) raise(errc::invalid_params, "no reports given");
  const std::vector<std::string>& entities = reports.front()->entities;
  for (const auto* r : reports) {
    if (r->entities != entities) raise(errc::entity_mismatch, "reports disagree on entities");
  }

  std::size_t missing = 0;
  std::ostringstream out;
  out << "entity,year,variable,value\n";
  for (const auto* r : reports) {
    for (const auto& ya : r->years) {
      for (std::size_t i = 0; i < entities.size(); ++i) {
        auto emit = [&](const char* variable, std::optional<double> value) {
          out << entities[i] << ',' << ya.year << ',' << variable << ',';
          if (value) {
            out << fmt_full(*value);
          } else {
            out << "NA";
            ++missing;
          }
          out << '\n';
        };
        const OptColumn* gdpcap = find_covariate(ya, "gdpcap");
        if (gdpcap == nullptr) gdpcap = find_covariate(ya, "gdp_per_capita");
        const OptColumn* eci = find_covariate(ya, "eci");
        emit("gdp_per_capita", gdpcap ? (*gdpcap)[i] : std::nullopt);
        emit("eci", eci ? (*eci)[i] : std::nullopt);
        emit("evc_return", ya.centralities.column("evc_return")(static_cast<Eigen::Index>(i)));
      }
    }
  }
  if (missing_count != nullptr) *missing_count = missing;
  return out.str();
}

bool validate_json_schema(const Json& doc, const Json& schema, std::string* error) {
  auto fail = [&](const std::string& message) {
    if (error != nullptr) *error = message;
    return false;
  };

  if (schema.contains("type")) {
    const std::string type = schema["type"];
    bool ok = (type == "object" && doc.is_object()) || (type == "array" && doc.is_array()) ||
              (type == "string" && doc.is_string()) || (type == "number" && doc.is_number()) ||
              (type == "integer" && doc.is_number_integer()) ||
              (type == "boolean" && doc.is_boolean()) || (type == "null" && doc.is_null());
    // A numeric field that can be missing serializes as null.
    if (!ok && type == "number" && doc.is_null()) ok = true;
    if (!ok) return fail("expected type " + type + ", got " + std::string(doc.type_name()));
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"]) ok = ok || v == doc;
    if (!ok) return fail("value not in enum");
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!doc.contains(key.get<std::string>())) {
        return fail("missing required key " + key.get<std::string>());
      }
    }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (doc.contains(key)) {
        if (!validate_json_schema(doc.at(key), sub, error)) {
          if (error != nullptr) *error = key + ": " + *error;
          return false;
        }
      }
    }
  }
  if (schema.contains("items") && doc.is_array()) {
    for (const auto& item : doc) {
      if (!validate_json_schema(item, schema["items"], error)) return false;
    }
  }
  return true;
}

}  // namespace macronet
