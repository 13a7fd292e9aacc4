#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "macronet/panel.hpp"
#include "macronet/regress.hpp"
#include "macronet/var.hpp"

namespace macronet {

using Json = nlohmann::ordered_json;

/// Plain-text regression table: one column per specification, coefficient
/// rows with significance stars and t statistics in parentheses, N and
/// adjusted R-squared, then the star legend.
std::string regression_table_text(const std::string& title,
                                  const std::string& dependent_label,
                                  const std::vector<const RegressionResult*>& specs);

/// Two stacked equation blocks, one per dependent variable.
std::string var_table_text(const std::string& title, const VarResult& v);

std::string hausman_text(const HausmanResult& h);

/// Long-format CSV mirror: spec,term,coef,se,t,p,stars per row.
std::string regression_table_csv(const std::vector<const RegressionResult*>& specs);

Json regression_json(const RegressionResult& r);
Json var_json(const VarResult& v);
Json hausman_json(const HausmanResult& h);

/// JSON-safe double: non-finite values map to null.
Json json_number(double v);

}  // namespace macronet
