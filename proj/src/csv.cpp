#include "macronet/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "macronet/errors.hpp"

namespace macronet {

namespace {

struct CsvReader {
  std::string path;
  std::ifstream stream;
  std::size_t line_no = 0;

  explicit CsvReader(const std::string& p) : path(p), stream(p) {
    if (!stream) raise(errc::parse_error, path + ": cannot open file");
  }

  [[noreturn]] void fail(std::size_t column, const std::string& message) const {
    raise(errc::parse_error,
          path + ":" + std::to_string(line_no) + ":" + std::to_string(column) + ": " + message);
  }

  // One record split on commas; returns false at end of input.
  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(stream, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
          fields.push_back(line.substr(start));
          break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
      }
      return true;
    }
    return false;
  }

  double parse_number(const std::string& field, std::size_t column) const {
    const char* begin = field.data();
    const char* end = begin + field.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) fail(column, "not a number: '" + field + "'");
    return value;
  }
};

bool is_missing(const std::string& field) { return field.empty() || field == "NA"; }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) raise(errc::config_error, "cannot write " + path);
  return out;
}

}  // namespace

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PricePanel read_price_csv(const std::string& path) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  if (!reader.next(fields)) raise(errc::parse_error, path + ": empty file");
  if (fields.size() < 2 || fields[0] != "date") {
    reader.fail(1, "header must start with 'date' and name at least one entity");
  }
  std::vector<std::string> entities(fields.begin() + 1, fields.end());
  std::vector<RawSeries> series(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) series[i].entity = entities[i];

  while (reader.next(fields)) {
    if (fields.size() != entities.size() + 1) {
      reader.fail(fields.size(), "expected " + std::to_string(entities.size() + 1) + " fields");
    }
    const std::string& date = fields[0];
    for (std::size_t i = 0; i < entities.size(); ++i) {
      const std::string& cell = fields[i + 1];
      if (is_missing(cell)) continue;
      double price = reader.parse_number(cell, i + 2);
      series[i].observations.emplace_back(date, price);
    }
  }
  return align_panel(series);
}

void write_price_csv(const std::string& path, const PricePanel& panel) {
  std::ofstream out = open_out(path);
  out << "date";
  for (const auto& e : panel.entities) out << ',' << e;
  out << '\n';
  for (Eigen::Index t = 0; t < panel.n_periods(); ++t) {
    out << panel.periods[t];
    for (Eigen::Index i = 0; i < panel.n_entities(); ++i) out << ',' << fmt_full(panel.prices(i, t));
    out << '\n';
  }
}

std::map<std::string, LayerMatrix> read_flow_csv(const std::string& path, LayerKind kind) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  if (!reader.next(fields)) raise(errc::parse_error, path + ": empty file");
  if (fields.size() != 4 || fields[0] != "year" || fields[1] != "src" || fields[2] != "dst" ||
      fields[3] != "flow") {
    reader.fail(1, "header must be year,src,dst,flow");
  }

  struct Record {
    std::string src;
    std::string dst;
    double flow;
  };
  std::map<std::string, std::vector<Record>> by_year;
  std::map<std::string, std::set<std::string>> entities_by_year;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> seen;
  while (reader.next(fields)) {
    if (fields.size() != 4) reader.fail(fields.size(), "expected 4 fields");
    if (fields[1] == fields[2]) reader.fail(3, "self-flow not allowed");
    double flow = reader.parse_number(fields[3], 4);
    if (flow < 0.0) reader.fail(4, "negative flow");
    if (!seen[fields[0]].insert({fields[1], fields[2]}).second) {
      reader.fail(2, "duplicate pair " + fields[1] + "->" + fields[2] + " in year " + fields[0]);
    }
    by_year[fields[0]].push_back({fields[1], fields[2], flow});
    entities_by_year[fields[0]].insert(fields[1]);
    entities_by_year[fields[0]].insert(fields[2]);
  }

  std::map<std::string, LayerMatrix> out;
  for (const auto& [year, records] : by_year) {
    const auto& ents = entities_by_year[year];
    std::vector<std::string> entities(ents.begin(), ents.end());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(entities.size(), entities.size());
    auto index = [&](const std::string& e) {
      return static_cast<Eigen::Index>(
          std::lower_bound(entities.begin(), entities.end(), e) - entities.begin());
    };
    for (const auto& rec : records) w(index(rec.src), index(rec.dst)) = rec.flow;
    out.emplace(year, LayerMatrix(entities, kind, std::move(w)));
  }
  return out;
}

void write_flow_csv(const std::string& path,
                    const std::vector<std::pair<std::string, const LayerMatrix*>>& years) {
  std::ofstream out = open_out(path);
  out << "year,src,dst,flow\n";
  for (const auto& [year, layer] : years) {
    for (Eigen::Index i = 0; i < layer->size(); ++i) {
      for (Eigen::Index j = 0; j < layer->size(); ++j) {
        if (i == j) continue;
        out << year << ',' << layer->entities[i] << ',' << layer->entities[j] << ','
            << fmt_full(layer->weights(i, j)) << '\n';
      }
    }
  }
}

std::optional<double> CovariateTable::get(const std::string& year, const std::string& name,
                                          const std::string& entity) const {
  auto y = values.find(year);
  if (y == values.end()) return std::nullopt;
  auto v = y->second.find(name);
  if (v == y->second.end()) return std::nullopt;
  auto e = v->second.find(entity);
  if (e == v->second.end()) return std::nullopt;
  return e->second;
}

CovariateTable read_covariates_csv(const std::string& path) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  if (!reader.next(fields)) raise(errc::parse_error, path + ": empty file");
  if (fields.size() < 3 || fields[0] != "entity" || fields[1] != "year") {
    reader.fail(1, "header must be entity,year,<covariate>...");
  }
  CovariateTable table;
  table.names.assign(fields.begin() + 2, fields.end());
  while (reader.next(fields)) {
    if (fields.size() != table.names.size() + 2) {
      reader.fail(fields.size(), "expected " + std::to_string(table.names.size() + 2) + " fields");
    }
    for (std::size_t c = 0; c < table.names.size(); ++c) {
      const std::string& cell = fields[c + 2];
      if (is_missing(cell)) continue;
      table.values[fields[1]][table.names[c]][fields[0]] = reader.parse_number(cell, c + 3);
    }
  }
  return table;
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& entities,
                      const Eigen::MatrixXd& m) {
  std::ofstream out = open_out(path);
  out << "entity";
  for (const auto& e : entities) out << ',' << e;
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << entities[i];
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << fmt_full(m(i, j));
    out << '\n';
  }
}

void write_returns_csv(const std::string& path, const ReturnPanel& panel) {
  std::ofstream out = open_out(path);
  out << "date";
  for (const auto& e : panel.entities) out << ',' << e;
  out << '\n';
  for (Eigen::Index t = 0; t < panel.n_observations(); ++t) {
    out << panel.periods[t];
    for (Eigen::Index i = 0; i < panel.n_entities(); ++i) out << ',' << fmt_full(panel.returns(i, t));
    out << '\n';
  }
}

void write_edge_list_csv(const std::string& path, const SpanningTree& tree) {
  std::ofstream out = open_out(path);
  out << "src,dst,weight\n";
  for (const auto& e : tree.edges) {
    out << tree.entities[e.i] << ',' << tree.entities[e.j] << ',' << fmt_full(e.weight) << '\n';
  }
}

void write_centrality_csv(const std::string& path, const CentralityVector& c) {
  std::ofstream out = open_out(path);
  out << "entity,value\n";
  for (Eigen::Index i = 0; i < c.values.size(); ++i) {
    out << c.entities[i] << ',' << fmt_full(c.values(i)) << '\n';
  }
}

void write_cross_layer_csv(const std::string& path, const CrossLayerTable& table) {
  std::ofstream out = open_out(path);
  out << "entity,year";
  for (const auto& [name, values] : table.columns) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < table.entities.size(); ++i) {
    out << table.entities[i] << ',' << table.year;
    for (const auto& [name, values] : table.columns) {
      out << ',' << fmt_full(values(static_cast<Eigen::Index>(i)));
    }
    out << '\n';
  }
}

void write_pair_table_csv(const std::string& path, const std::string& origin,
                          const std::vector<PairRow>& rows) {
  std::ofstream out = open_out(path);
  out << "origin,partner,corr,log10_trade\n";
  for (const auto& row : rows) {
    out << origin << ',' << row.partner << ',' << fmt_full(row.corr_with_origin) << ',';
    out << (row.log10_trade ? fmt_full(*row.log10_trade) : "NA") << '\n';
  }
}

void write_tree_dot(const std::string& path, const SpanningTree& tree,
                    const std::vector<Band>& bands) {
  std::ofstream out = open_out(path);
  out << "graph mst {\n";
  for (std::size_t i = 0; i < tree.entities.size(); ++i) {
    out << "  \"" << tree.entities[i] << "\" [band=" << band_name(bands[i]) << "];\n";
  }
  for (const auto& e : tree.edges) {
    out << "  \"" << tree.entities[e.i] << "\" -- \"" << tree.entities[e.j] << "\" [weight="
        << fmt_full(e.weight) << "];\n";
  }
  out << "}\n";
}

void export_economy(const std::string& directory, const SyntheticEconomy& economy,
                    const std::string& year_tag) {
  write_price_csv(directory + "/prices.csv", economy.prices);
  write_flow_csv(directory + "/trade.csv", {{year_tag, &economy.trade}});
  write_flow_csv(directory + "/fdi.csv", {{year_tag, &economy.fdi}});
}

}  // namespace macronet
