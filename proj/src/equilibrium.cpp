#include "sigresp/equilibrium.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace sigresp {

std::string to_string(const StrategyPair& pair) {
  std::string out = "(";
  out += to_string(pair.s);
  out += ",";
  out += to_string(pair.r);
  out += ")";
  return out;
}

std::string to_string(const PairSet& pairs) {
  std::string out = "{";
  bool first = true;
  for (const auto& pair : pairs) {
    if (!first) out += ", ";
    out += to_string(pair);
    first = false;
  }
  out += "}";
  return out;
}

namespace {

bool is_best_response(const PayoffMatrix& m, StrategyPair pair, double tol) {
  const double own_s = m[index(pair.s)][index(pair.r)].signaler;
  for (auto alt : kSignalerStrategies) {
    if (m[index(alt)][index(pair.r)].signaler > own_s + tol) return false;
  }
  const double own_r = m[index(pair.s)][index(pair.r)].responder;
  for (auto alt : kResponderStrategies) {
    if (m[index(pair.s)][index(alt)].responder > own_r + tol) return false;
  }
  return true;
}

bool has_neutral_deviation(const PayoffMatrix& m, StrategyPair pair,
                           double tol) {
  const double own_s = m[index(pair.s)][index(pair.r)].signaler;
  for (auto alt : kSignalerStrategies) {
    if (alt != pair.s &&
        m[index(alt)][index(pair.r)].signaler >= own_s - tol) {
      return true;
    }
  }
  const double own_r = m[index(pair.s)][index(pair.r)].responder;
  for (auto alt : kResponderStrategies) {
    if (alt != pair.r &&
        m[index(pair.s)][index(alt)].responder >= own_r - tol) {
      return true;
    }
  }
  return false;
}

PairSet set_difference(const PairSet& a, const PairSet& b) {
  PairSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

}  // namespace

PairSet pure_nash_brute_force(const GameParams& p, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
  const PayoffMatrix m = payoff_matrix(p);
  PairSet out;
  for (auto s : kSignalerStrategies) {
    for (auto r : kResponderStrategies) {
      if (is_best_response(m, {s, r}, tol)) out.insert({s, r});
    }
  }
  return out;
}

PairSet pure_nash_closed_form(const GameParams& p) {
  using S = SignalerStrategy;
  using R = ResponderStrategy;
  const double reward = p.reward;
  const double pn = p.need_prob;
  const bool free_signal = p.comm_cost == 0.0;

  PairSet out;
  out.insert({S::S0, R::R0});
  if (p.comm_cost >= reward + p.unmet_cost) out.insert({S::S0, R::R1});
  if (free_signal && pn * reward - p.trip_cost <= 0.0) {
    out.insert({S::S1, R::R0});
  }
  if (free_signal && pn * reward - p.trip_cost >= 0.0) {
    out.insert({S::S1, R::R1});
  }
  if (free_signal && pn * reward - pn * p.trip_cost <= 0.0) {
    out.insert({S::S2, R::R0});
  }
  if (reward >= p.comm_cost - p.unmet_cost && reward >= p.trip_cost) {
    out.insert({S::S2, R::R1});
  }
  if (free_signal) out.insert({S::S3, R::R0});
  // (s3, r1) is never listed.
  return out;
}

EquilibriumReport equilibrium_report(const GameParams& p, double tol) {
  EquilibriumReport report;
  report.tolerance = tol;
  report.matrix = payoff_matrix(p);
  report.pure_equilibria = pure_nash_brute_force(p, tol);
  for (const auto& pair : report.pure_equilibria) {
    report.entries.push_back(
        {pair, has_neutral_deviation(report.matrix, pair, tol)});
  }
  report.closed_form = pure_nash_closed_form(p);
  report.only_brute_force =
      set_difference(report.pure_equilibria, report.closed_form);
  report.only_closed_form =
      set_difference(report.closed_form, report.pure_equilibria);
  return report;
}

}  // namespace sigresp
