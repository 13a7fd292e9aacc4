// Command-line driver: one subcommand per pipeline stage plus the
// end-to-end report.  Exit codes: 0 success, 2 parse error, 3 numeric
// failure, 4 config error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "macronet/errors.hpp"
#include "macronet/pipeline.hpp"

namespace {

using namespace macronet;

struct CliOptions {
  RunConfig config;
  std::string years_list;
  std::string normalization = "l2";
  std::string formats = "csv,json,dot,txt";
  std::string ladder_list;
  std::string iv_exog_list;
  std::string origin;
};

std::vector<std::string> split_list(const std::string& joined) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= joined.size() && !joined.empty()) {
    std::size_t comma = joined.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(joined.substr(start));
      break;
    }
    out.push_back(joined.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void finalize(CliOptions& opt) {
  if (!opt.years_list.empty()) opt.config.years = split_list(opt.years_list);
  if (!opt.ladder_list.empty()) opt.config.regressor_ladder = split_list(opt.ladder_list);
  if (!opt.iv_exog_list.empty()) opt.config.iv_exogenous = split_list(opt.iv_exog_list);
  if (!opt.origin.empty()) opt.config.pair_origin = opt.origin;
  if (opt.normalization == "l2") {
    opt.config.normalization = Normalization::UnitL2;
  } else if (opt.normalization == "max") {
    opt.config.normalization = Normalization::MaxOne;
  } else {
    raise(errc::config_error, "unknown normalization '" + opt.normalization + "'");
  }
  opt.config.emit_edge_lists = false;
  opt.config.emit_dot = false;
  opt.config.emit_tables = false;
  opt.config.emit_json = false;
  for (const auto& f : split_list(opt.formats)) {
    if (f == "csv") opt.config.emit_edge_lists = true, opt.config.emit_tables = true;
    else if (f == "txt") opt.config.emit_tables = true;
    else if (f == "json") opt.config.emit_json = true;
    else if (f == "dot") opt.config.emit_dot = true;
    else raise(errc::config_error, "unknown format '" + f + "'");
  }
  if (opt.config.gravity_mode && opt.config.years.empty()) {
    // default handled by run_pipeline
  }
}

void add_input_flags(CLI::App* cmd, CliOptions& opt, bool gravity_too) {
  cmd->add_option("--prices", opt.config.prices_csv, "wide price CSV (date,entity...)");
  cmd->add_option("--trade", opt.config.trade_csv, "trade flow CSV (year,src,dst,flow)");
  cmd->add_option("--fdi", opt.config.fdi_csv, "FDI flow CSV (year,src,dst,flow)");
  cmd->add_option("--covariates", opt.config.covariates_csv,
                  "covariate CSV (entity,year,name...)");
  if (gravity_too) {
    cmd->add_flag("--gravity", opt.config.gravity_mode, "use the synthetic gravity generator");
    cmd->add_option("--countries", opt.config.gravity.n_countries, "synthetic country count");
    cmd->add_option("--coupling", opt.config.gravity.coupling, "trade/return coupling strength");
    cmd->add_option("--noise", opt.config.gravity.noise_scale, "log-normal flow noise std dev");
    cmd->add_option("--tail", opt.config.gravity.size_tail_exponent, "Pareto tail of sizes");
    cmd->add_option("--elasticity", opt.config.gravity.fdi_trade_elasticity,
                    "FDI/trade elasticity");
    cmd->add_option("--t-periods", opt.config.t_periods, "price periods per year");
  }
}

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--seed", opt.config.gravity.seed, "generator seed");
  cmd->add_option("--out", opt.config.out_dir, "output directory");
  cmd->add_option("--format", opt.formats, "emit formats, comma list of csv,json,dot,txt");
  cmd->add_option("--years", opt.years_list, "comma list of year labels");
  cmd->add_option("--normalization", opt.normalization, "centrality normalization: l2 or max");
  cmd->add_option("--regressors", opt.ladder_list, "cumulative regressor ladder, comma list");
  cmd->add_option("--iv-instrument", opt.config.iv_instrument, "instrument column name");
  cmd->add_option("--iv-exog", opt.iv_exog_list, "IV exogenous controls, comma list");
  cmd->add_option("--origin", opt.origin, "fixed-origin entity for pair tables");
}

void require_out(const CliOptions& opt) {
  if (opt.config.out_dir.empty()) raise(errc::config_error, "--out DIR is required");
}

int cmd_report(CliOptions& opt) {
  finalize(opt);
  require_out(opt);
  run_pipeline(opt.config);
  std::cout << "report written to " << opt.config.out_dir << "\n";
  return 0;
}

// Emit a narrow slice of the full report.
enum class Slice { Returns, Corr, Evc, Mst, Multiplex, Regress, Panel, Iv, Var };

int cmd_slice(CliOptions& opt, Slice slice) {
  finalize(opt);
  require_out(opt);
  namespace fs = std::filesystem;
  RunConfig config = opt.config;
  const std::string dir = config.out_dir;
  config.out_dir.clear();  // compute only; emit below
  fs::create_directories(dir);

  if (slice == Slice::Returns || slice == Slice::Corr || slice == Slice::Mst) {
    // Whole-panel transforms straight from the price file.
    if (config.prices_csv.empty()) raise(errc::config_error, "--prices is required");
    PricePanel panel = read_price_csv(config.prices_csv);
    ReturnPanel returns = log_returns(panel);
    if (slice == Slice::Returns) {
      write_returns_csv(dir + "/returns.csv", returns);
      std::cout << "returns.csv written\n";
      return 0;
    }
    CorrelationMatrix rho = pearson_correlation(returns);
    if (slice == Slice::Corr) {
      write_matrix_csv(dir + "/correlation.csv", rho.entities, rho.rho);
      std::cout << "correlation.csv written\n";
      return 0;
    }
    SpanningTree tree = minimum_spanning_tree(distance_from_correlation(rho));
    CentralityVector evc =
        eigenvector_centrality(LayerMatrix::from_correlation(rho), config.normalization);
    write_edge_list_csv(dir + "/mst.csv", tree);
    if (config.emit_dot) write_tree_dot(dir + "/mst.dot", tree, tercile_bands(evc));
    std::cout << "mst files written\n";
    return 0;
  }

  if (slice == Slice::Evc) {
    if (!config.prices_csv.empty()) {
      CorrelationMatrix rho = pearson_correlation(log_returns(read_price_csv(config.prices_csv)));
      CentralityVector evc =
          eigenvector_centrality(LayerMatrix::from_correlation(rho), config.normalization);
      write_centrality_csv(dir + "/evc_return.csv", evc);
      std::cout << "evc_return.csv written\n";
      return 0;
    }
    if (!config.trade_csv.empty()) {
      auto layers = read_flow_csv(config.trade_csv, LayerKind::Trade);
      for (const auto& [year, layer] : layers) {
        CentralityVector evc = eigenvector_centrality(layer, config.normalization);
        write_centrality_csv(dir + "/evc_trade_" + year + ".csv", evc);
      }
      std::cout << layers.size() << " centrality files written\n";
      return 0;
    }
    raise(errc::config_error, "evc needs --prices or --trade");
  }

  AnalysisReport report = run_pipeline(config);
  auto write_text = [&](const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) raise(errc::config_error, "cannot write " + path.string());
    out << text;
  };

  switch (slice) {
    case Slice::Multiplex: {
      for (const auto& ya : report.years) {
        write_cross_layer_csv(dir + "/centrality_" + ya.year + ".csv", ya.centralities);
        if (config.pair_origin && !ya.pair_rows.empty()) {
          write_pair_table_csv(dir + "/pair_" + *config.pair_origin + "_" + ya.year + ".csv",
                               *config.pair_origin, ya.pair_rows);
        }
      }
      std::cout << report.years.size() << " centrality tables written\n";
      break;
    }
    case Slice::Regress: {
      for (const auto& ya : report.years) {
        std::vector<const RegressionResult*> specs;
        for (const auto& r : ya.cross_section) specs.push_back(&r);
        if (specs.empty()) continue;
        write_text(fs::path(dir) / ("cross_section_" + ya.year + ".txt"),
                   regression_table_text("Estimates for the year " + ya.year, "evc_return", specs));
        write_text(fs::path(dir) / ("cross_section_" + ya.year + ".csv"),
                   regression_table_csv(specs));
      }
      std::cout << report.years.size() << " cross-section tables written\n";
      break;
    }
    case Slice::Panel: {
      if (!report.panel_fe) raise(errc::too_few_observations, "panel needs at least 2 years");
      std::string text =
          regression_table_text("Panel estimates: fixed and random effects", "evc_return",
                                {&*report.panel_fe, &*report.panel_re}) +
          "\n" + hausman_text(*report.hausman_test);
      write_text(fs::path(dir) / "panel.txt", text);
      write_text(fs::path(dir) / "panel.csv",
                 regression_table_csv({&*report.panel_fe, &*report.panel_re}));
      std::cout << "panel tables written\n";
      break;
    }
    case Slice::Iv: {
      std::vector<const RegressionResult*> tsls;
      std::vector<const RegressionResult*> liml_specs;
      for (const auto& ya : report.years) {
        if (ya.iv_tsls) tsls.push_back(&*ya.iv_tsls);
        if (ya.iv_liml) liml_specs.push_back(&*ya.iv_liml);
      }
      if (tsls.empty()) raise(errc::config_error, "no IV specification could be estimated");
      write_text(fs::path(dir) / "iv_2sls.txt",
                 regression_table_text("All IV estimation (2SLS)", "evc_return", tsls));
      write_text(fs::path(dir) / "iv_liml.txt",
                 regression_table_text("All IV estimation (LIML)", "evc_return", liml_specs));
      write_text(fs::path(dir) / "iv_2sls.csv", regression_table_csv(tsls));
      write_text(fs::path(dir) / "iv_liml.csv", regression_table_csv(liml_specs));
      std::cout << "IV tables written\n";
      break;
    }
    case Slice::Var: {
      if (report.var_tables.empty()) {
        raise(errc::too_few_observations, "VAR needs at least 7 years");
      }
      for (const auto& v : report.var_tables) {
        std::string entity = v.name_first.substr(0, v.name_first.size() - 2);
        write_text(fs::path(dir) / ("var_" + entity + ".txt"),
                   var_table_text("VAR estimation: " + entity, v));
      }
      std::cout << report.var_tables.size() << " VAR tables written\n";
      break;
    }
    default:
      break;
  }
  return 0;
}

int cmd_gravity_sim(CliOptions& opt) {
  finalize(opt);
  require_out(opt);
  std::filesystem::create_directories(opt.config.out_dir);
  SyntheticEconomy economy = generate(opt.config.gravity, opt.config.t_periods);
  std::string year = opt.config.years.empty() ? "0001" : opt.config.years.front();
  export_economy(opt.config.out_dir, economy, year);

  Json truth{{"rng_algorithm", economy.truth.rng_algorithm},
             {"seed", economy.truth.params.seed},
             {"n_countries", economy.truth.params.n_countries},
             {"size_tail_exponent", economy.truth.params.size_tail_exponent},
             {"coupling", economy.truth.params.coupling},
             {"noise_scale", economy.truth.params.noise_scale},
             {"fdi_trade_elasticity", economy.truth.params.fdi_trade_elasticity},
             {"t_periods", economy.truth.t_periods},
             {"sizes", economy.sizes}};
  std::ofstream out(std::filesystem::path(opt.config.out_dir) / "truth.json", std::ios::trunc);
  out << truth.dump(2) << '\n';
  std::cout << "economy exported to " << opt.config.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-layer financial/macroeconomic network analysis"};
  app.set_config("--config", "", "declarative key=value config file");
  app.require_subcommand(1);

  CliOptions opt;
  opt.config.gravity_mode = false;

  struct SubSpec {
    const char* name;
    const char* help;
    Slice slice;
  };
  const std::vector<SubSpec> slices = {
      {"returns", "log returns from a price CSV", Slice::Returns},
      {"corr", "correlation matrix from a price CSV", Slice::Corr},
      {"evc", "eigenvector centrality of one layer", Slice::Evc},
      {"mst", "minimum spanning tree of the correlation network", Slice::Mst},
      {"multiplex", "cross-layer centrality tables", Slice::Multiplex},
      {"regress", "per-year cross-sectional tables", Slice::Regress},
      {"panel", "FE/RE panel estimates with Hausman test", Slice::Panel},
      {"iv", "2SLS and LIML tables", Slice::Iv},
      {"var", "per-entity VAR(2) tables", Slice::Var},
  };

  for (const auto& spec : slices) {
    CLI::App* cmd = app.add_subcommand(spec.name, spec.help);
    add_input_flags(cmd, opt, spec.slice != Slice::Returns && spec.slice != Slice::Corr);
    add_common_flags(cmd, opt);
    Slice slice = spec.slice;
    cmd->callback([&opt, slice] { cmd_slice(opt, slice); });
  }

  CLI::App* sim = app.add_subcommand("gravity-sim", "export a synthetic economy to CSV");
  add_input_flags(sim, opt, true);
  add_common_flags(sim, opt);
  sim->callback([&opt] {
    opt.config.gravity_mode = true;
    cmd_gravity_sim(opt);
  });

  CLI::App* rep = app.add_subcommand("report", "end-to-end analysis report");
  add_input_flags(rep, opt, true);
  add_common_flags(rep, opt);
  rep->callback([&opt] { cmd_report(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const macronet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return macronet::errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
