#include "macronet/errors.hpp"

namespace macronet {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::parse_error: return "ParseError";
    case errc::config_error: return "ConfigError";
    case errc::empty_intersection: return "EmptyIntersection";
    case errc::non_positive_price: return "NonPositivePrice";
    case errc::too_short: return "TooShort";
    case errc::too_few_nodes: return "TooFewNodes";
    case errc::too_few_observations: return "TooFewObservations";
    case errc::entity_mismatch: return "EntityMismatch";
    case errc::unknown_entity: return "UnknownEntity";
    case errc::name_mismatch: return "NameMismatch";
    case errc::invalid_params: return "InvalidParams";
    case errc::invalid_df: return "InvalidDf";
    case errc::degenerate_variance: return "DegenerateVariance";
    case errc::no_convergence: return "NoConvergence";
    case errc::degenerate_dominant_pair: return "DegenerateDominantPair";
    case errc::rank_deficient: return "RankDeficient";
    case errc::no_within_variation: return "NoWithinVariation";
    case errc::under_identified: return "UnderIdentified";
    case errc::near_singular_design: return "NearSingularDesign";
    case errc::internal_error: return "InternalError";
  }
  return "UnknownError";
}

int errc_exit_code(errc code) noexcept {
  switch (code) {
    case errc::parse_error:
      return 2;
    case errc::config_error:
    case errc::invalid_params:
      return 4;
    default:
      return 3;
  }
}

}  // namespace macronet
