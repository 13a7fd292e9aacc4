#include "macronet/tables.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace macronet {

namespace {

std::string fmt_coef(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string fmt_t(double v) {
  char buf[32];
  if (!std::isfinite(v)) return v > 0 ? "(+inf)" : "(-inf)";
  std::snprintf(buf, sizeof(buf), "(%.2f)", v);
  return buf;
}

void pad_to(std::string& s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
}

// Coefficient names in first-appearance order across specs, _cons last.
std::vector<std::string> merged_names(const std::vector<const RegressionResult*>& specs) {
  std::vector<std::string> names;
  bool any_cons = false;
  for (const auto* r : specs) {
    for (const auto& name : r->names) {
      if (name == "_cons") {
        any_cons = true;
        continue;
      }
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
  }
  if (any_cons) names.emplace_back("_cons");
  return names;
}

int find_term(const RegressionResult& r, const std::string& name) {
  auto it = std::find(r.names.begin(), r.names.end(), name);
  return it == r.names.end() ? -1 : static_cast<int>(it - r.names.begin());
}

constexpr std::size_t kLabelWidth = 12;
constexpr std::size_t kCellWidth = 16;

void append_coefficient_rows(std::ostringstream& out,
                             const std::vector<const RegressionResult*>& specs,
                             const std::vector<std::string>& names) {
  for (const auto& name : names) {
    std::string row1 = name;
    pad_to(row1, kLabelWidth);
    std::string row2(kLabelWidth, ' ');
    for (const auto* r : specs) {
      int j = find_term(*r, name);
      std::string c1;
      std::string c2;
      if (j >= 0) {
        c1 = fmt_coef(r->beta(j)) + significance_stars(r->p(j));
        c2 = fmt_t(r->t(j));
      }
      pad_to(c1, kCellWidth);
      pad_to(c2, kCellWidth);
      row1 += c1;
      row2 += c2;
    }
    out << row1 << '\n' << row2 << '\n';
  }
}

std::string rule(std::size_t columns) {
  return std::string(kLabelWidth + columns * kCellWidth, '-');
}

}  // namespace

std::string regression_table_text(const std::string& title,
                                  const std::string& dependent_label,
                                  const std::vector<const RegressionResult*>& specs) {
  std::ostringstream out;
  out << title << '\n' << rule(specs.size()) << '\n';

  std::string head(kLabelWidth, ' ');
  std::string sub(kLabelWidth, ' ');
  for (std::size_t c = 0; c < specs.size(); ++c) {
    std::string num = "(" + std::to_string(c + 1) + ")";
    std::string dep = dependent_label;
    pad_to(num, kCellWidth);
    pad_to(dep, kCellWidth);
    head += num;
    sub += dep;
  }
  out << head << '\n' << sub << '\n' << rule(specs.size()) << '\n';

  append_coefficient_rows(out, specs, merged_names(specs));

  out << rule(specs.size()) << '\n';
  std::string nrow = "N";
  pad_to(nrow, kLabelWidth);
  std::string r2row = "adj. R-sq";
  pad_to(r2row, kLabelWidth);
  for (const auto* r : specs) {
    std::string ncell = std::to_string(r->n);
    // Random-effects GLS has no meaningful adjusted R-squared to print.
    std::string rcell = r->estimator == Estimator::RE ? "" : fmt_coef(r->r2_adj);
    pad_to(ncell, kCellWidth);
    pad_to(rcell, kCellWidth);
    nrow += ncell;
    r2row += rcell;
  }
  out << nrow << '\n' << r2row << '\n' << rule(specs.size()) << '\n';
  out << "t statistics in parentheses\n";
  out << "* p<0.05, ** p<0.01, *** p<0.001\n";
  return out.str();
}

std::string var_table_text(const std::string& title, const VarResult& v) {
  std::ostringstream out;
  out << title << '\n' << rule(1) << '\n';

  auto block = [&](const std::string& depname, const RegressionResult& eq) {
    std::string head = depname;
    pad_to(head, kLabelWidth);
    out << head << '\n';
    append_coefficient_rows(out, {&eq}, merged_names({&eq}));
  };
  block(v.name_first, v.eq_first);
  out << rule(1) << '\n';
  block(v.name_second, v.eq_second);
  out << rule(1) << '\n';
  std::string nrow = "N";
  pad_to(nrow, kLabelWidth);
  out << nrow << v.n_used << '\n' << rule(1) << '\n';
  out << "t statistics in parentheses\n";
  out << "* p<0.05, ** p<0.01, *** p<0.001\n";
  return out.str();
}

std::string hausman_text(const HausmanResult& h) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "Hausman test: chi2(%d) = %.4f, p = %.4f -> %s effect model preferred%s\n", h.df,
                h.statistic, h.p, h.p < 0.05 ? "fixed" : "random",
                h.pseudo_inverse_used ? " (pseudo-inverse used)" : "");
  return buf;
}

std::string regression_table_csv(const std::vector<const RegressionResult*>& specs) {
  std::ostringstream out;
  out << "spec,estimator,term,coef,se,t,p,stars,n,adj_r2\n";
  for (std::size_t c = 0; c < specs.size(); ++c) {
    const auto* r = specs[c];
    for (std::size_t j = 0; j < r->names.size(); ++j) {
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%zu,%s,%s,%.17g,%.17g,%.17g,%.17g,%s,%ld,%.17g\n", c + 1,
                    estimator_name(r->estimator), r->names[j].c_str(), r->beta(j), r->se(j),
                    r->t(j), r->p(j), significance_stars(r->p(j)), r->n, r->r2_adj);
      out << buf;
    }
  }
  return out.str();
}

Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json regression_json(const RegressionResult& r) {
  Json terms = Json::array();
  for (std::size_t j = 0; j < r.names.size(); ++j) {
    terms.push_back({{"name", r.names[j]},
                     {"coef", json_number(r.beta(j))},
                     {"se", json_number(r.se(j))},
                     {"t", json_number(r.t(j))},
                     {"p", json_number(r.p(j))},
                     {"stars", significance_stars(r.p(j))}});
  }
  Json out{{"estimator", estimator_name(r.estimator)},
           {"n", r.n},
           {"df_resid", json_number(r.df_resid)},
           {"r2_adj", json_number(r.r2_adj)},
           {"exact_fit", r.exact_fit},
           {"terms", terms}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

Json var_json(const VarResult& v) {
  return Json{{"first", v.name_first},
              {"second", v.name_second},
              {"n", v.n_used},
              {"eq_first", regression_json(v.eq_first)},
              {"eq_second", regression_json(v.eq_second)},
              {"resid_cov",
               {json_number(v.resid_cov(0, 0)), json_number(v.resid_cov(0, 1)),
                json_number(v.resid_cov(1, 1))}},
              {"granger",
               {{"second_to_first",
                 {{"f", json_number(v.granger_second_to_first.f)},
                  {"p", json_number(v.granger_second_to_first.p)}}},
                {"first_to_second",
                 {{"f", json_number(v.granger_first_to_second.f)},
                  {"p", json_number(v.granger_first_to_second.p)}}}}}};
}

Json hausman_json(const HausmanResult& h) {
  return Json{{"statistic", json_number(h.statistic)},
              {"df", h.df},
              {"p", json_number(h.p)},
              {"pseudo_inverse_used", h.pseudo_inverse_used}};
}

}  // namespace macronet
