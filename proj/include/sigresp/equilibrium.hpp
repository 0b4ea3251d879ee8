#ifndef SIGRESP_EQUILIBRIUM_HPP
#define SIGRESP_EQUILIBRIUM_HPP

#include <compare>
#include <set>
#include <vector>

#include "sigresp/game.hpp"

namespace sigresp {

struct StrategyPair {
  SignalerStrategy s = SignalerStrategy::S0;
  ResponderStrategy r = ResponderStrategy::R0;

  auto operator<=>(const StrategyPair&) const = default;
};

std::string to_string(const StrategyPair& pair);

using PairSet = std::set<StrategyPair>;

std::string to_string(const PairSet& pairs);

inline constexpr double kDefaultNashTolerance = 1e-12;

// Weak pure Nash equilibria: no unilateral deviation improves a player's
// expected payoff by more than tol.
PairSet pure_nash_brute_force(const GameParams& p,
                              double tol = kDefaultNashTolerance);

// Tabulated equilibrium conditions. Equality conditions on comm_cost compare
// the stored value exactly.
PairSet pure_nash_closed_form(const GameParams& p);

struct EquilibriumEntry {
  StrategyPair pair;
  // True when some unilateral deviation is payoff-neutral within tol.
  bool weak = false;
};

struct EquilibriumReport {
  PairSet pure_equilibria;
  std::vector<EquilibriumEntry> entries;  // same pairs, with tie flags
  PayoffMatrix matrix{};
  double tolerance = kDefaultNashTolerance;
  PairSet closed_form;
  PairSet only_brute_force;   // found by search, not by the conditions
  PairSet only_closed_form;   // met the conditions, rejected by search

  bool agrees() const {
    return only_brute_force.empty() && only_closed_form.empty();
  }
};

EquilibriumReport equilibrium_report(const GameParams& p,
                                     double tol = kDefaultNashTolerance);

}  // namespace sigresp

#endif  // SIGRESP_EQUILIBRIUM_HPP
