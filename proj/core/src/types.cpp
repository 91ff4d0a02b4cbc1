#include "parafis/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parafis {

ForgettingFactor::ForgettingFactor(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ConfigError("forgetting factor must be in (0, 1]");
  if (alpha == 1.0) {
    tmax_ = std::numeric_limits<std::int64_t>::max();
  } else {
    tmax_ = std::max<std::int64_t>(2, std::llround(1.0 / (1.0 - alpha)));
  }
}

void HyperParams::validate() const {
  if (!(alpha2 > 0.0) || alpha2 > alpha1 || alpha1 > 1.0)
    throw ConfigError("forgetting factors must satisfy 0 < alpha2 <= alpha1 <= 1");
  if (n_min < 1) throw ConfigError("n_min must be >= 1");
  if (!(omega > 0.0)) throw ConfigError("omega must be > 0");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be > 0");
  if (!(m_exp > 0.0)) throw ConfigError("m_exp must be > 0");
  if (init_method == InitMethod::kAnticipationPromotion &&
      creation_rule != CreationRule::kSeparabilityConditions)
    throw ConfigError("anticipation promotion requires the separability detector");
}

}  // namespace parafis
