#include "sigresp/game.hpp"

#include <cmath>
#include <stdexcept>

namespace sigresp {

namespace {

void require_nonnegative(double value, const char* field) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument(std::string(field) +
                                " must be a finite nonnegative number");
  }
}

}  // namespace

void validate(const GameParams& p) {
  require_nonnegative(p.reward, "reward");
  require_nonnegative(p.unmet_cost, "unmet_cost");
  require_nonnegative(p.trip_cost, "trip_cost");
  require_nonnegative(p.comm_cost, "comm_cost");
  if (!std::isfinite(p.need_prob) || p.need_prob < 0.0 || p.need_prob > 1.0) {
    throw std::invalid_argument("need_prob must lie in [0, 1]");
  }
}

std::string_view to_string(SignalerStrategy s) {
  static constexpr std::array<std::string_view, 4> kNames = {"s0", "s1", "s2",
                                                             "s3"};
  return kNames[index(s)];
}

std::string_view to_string(ResponderStrategy r) {
  return r == ResponderStrategy::R0 ? "r0" : "r1";
}

std::optional<SignalerStrategy> parse_signaler(std::string_view text) {
  for (auto s : kSignalerStrategies) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<ResponderStrategy> parse_responder(std::string_view text) {
  for (auto r : kResponderStrategies) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

double signal_rate(SignalerStrategy s, double need_prob) {
  switch (s) {
    case SignalerStrategy::S0: return 0.0;
    case SignalerStrategy::S1: return 1.0;
    case SignalerStrategy::S2: return need_prob;
    case SignalerStrategy::S3: return 1.0 - need_prob;
  }
  return 0.0;
}

PayoffPair realized_rewards(const GameParams& p, bool need, bool signaled,
                            bool responded) {
  if (responded && !signaled) {
    throw std::logic_error("realized_rewards: response without a signal");
  }
  const bool met = need && signaled && responded;
  PayoffPair out;
  if (met) {
    out.signaler += p.reward;
    out.responder += p.reward;
  } else if (need) {
    out.signaler -= p.unmet_cost;
  }
  if (signaled) out.signaler -= p.comm_cost;
  if (responded) out.responder -= p.trip_cost;
  return out;
}

PayoffPair expected_payoffs(const GameParams& p, SignalerStrategy s,
                            ResponderStrategy r) {
  const double pn = p.need_prob;
  const bool responds = r == ResponderStrategy::R1;
  switch (s) {
    case SignalerStrategy::S0:
      return {-pn * p.unmet_cost, 0.0};
    case SignalerStrategy::S1:
      if (!responds) return {-p.comm_cost - pn * p.unmet_cost, 0.0};
      return {-p.comm_cost + pn * p.reward, pn * p.reward - p.trip_cost};
    case SignalerStrategy::S2:
      if (!responds) return {-pn * p.comm_cost - pn * p.unmet_cost, 0.0};
      return {-pn * p.comm_cost + pn * p.reward,
              pn * p.reward - pn * p.trip_cost};
    case SignalerStrategy::S3: {
      // Signals only arrive when there is no need, so responding never pays.
      const double signaler = -(1.0 - pn) * p.comm_cost - pn * p.unmet_cost;
      if (!responds) return {signaler, 0.0};
      return {signaler, -(1.0 - pn) * p.trip_cost};
    }
  }
  return {};
}

PayoffMatrix payoff_matrix(const GameParams& p) {
  PayoffMatrix m{};
  for (auto s : kSignalerStrategies) {
    for (auto r : kResponderStrategies) {
      m[index(s)][index(r)] = expected_payoffs(p, s, r);
    }
  }
  return m;
}

}  // namespace sigresp
