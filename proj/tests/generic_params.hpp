#ifndef SIGRESP_TESTS_GENERIC_PARAMS_HPP
#define SIGRESP_TESTS_GENERIC_PARAMS_HPP

#include <cmath>
#include <initializer_list>
#include <random>

#include "sigresp/game.hpp"

namespace sigresp::testing {

// True when no tabulated equilibrium condition is within margin of binding.
inline bool is_generic(const GameParams& p, double margin = 1e-9) {
  const double R = p.reward, pn = p.need_prob;
  for (double slack : {p.comm_cost - (R + p.unmet_cost), pn * R - p.trip_cost,
                       pn * R - pn * p.trip_cost,
                       R - (p.comm_cost - p.unmet_cost), R - p.trip_cost,
                       p.comm_cost}) {
    if (std::abs(slack) <= margin) return false;
  }
  return true;
}

// Strictly positive costs and reward, need_prob in (0.05, 0.95), rejecting
// draws near a boundary.
inline GameParams draw_generic(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> cost(1e-3, 3.0);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  for (;;) {
    GameParams p{cost(gen), cost(gen), cost(gen), cost(gen), prob(gen)};
    if (p.need_prob > 0.05 && is_generic(p)) return p;
  }
}

}  // namespace sigresp::testing

#endif  // SIGRESP_TESTS_GENERIC_PARAMS_HPP
