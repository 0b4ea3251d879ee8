#include "sigresp/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sigresp {

void validate(const BetaBelief& b, const char* field) {
  const bool ok = std::isfinite(b.alpha) && std::isfinite(b.beta) &&
                  b.alpha > 0.0 && b.beta > 0.0;
  if (!ok) {
    throw std::invalid_argument(std::string(field) +
                                ": alpha and beta must be positive");
  }
}

double belief_sample(const BetaBelief& b, Rng& rng) {
  // Beta as a ratio of independent unit-scale gammas.
  std::gamma_distribution<double> success(b.alpha, 1.0);
  std::gamma_distribution<double> failure(b.beta, 1.0);
  const double x = success(rng);
  const double y = failure(rng);
  const double total = x + y;
  if (total <= 0.0) return b.mean();
  return x / total;
}

bool ties(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kTieRelTolerance * scale;
}

std::vector<std::size_t> argmax_set(std::span<const double> values) {
  std::vector<std::size_t> out;
  if (values.empty()) return out;
  const double best = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (ties(values[i], best)) out.push_back(i);
  }
  return out;
}

std::size_t argmax_split_ties(std::span<const double> values, Rng& rng) {
  if (values.empty()) throw std::invalid_argument("argmax of empty range");
  const auto best = argmax_set(values);
  if (best.size() == 1) return best.front();
  std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
  return best[pick(rng)];
}

std::array<double, 4> signaler_expected_rewards(double theta_need,
                                                double theta_response,
                                                const GameParams& p) {
  const double met = p.reward * theta_need * theta_response;
  const double unmet = p.unmet_cost * theta_need * (1.0 - theta_response);
  return {
      -p.unmet_cost * theta_need,
      met - unmet - p.comm_cost,
      met - unmet - p.comm_cost * theta_need,
      -p.unmet_cost * theta_need - p.comm_cost * (1.0 - theta_need),
  };
}

std::array<double, 2> responder_expected_rewards(double theta_need_given_signal,
                                                 const GameParams& p) {
  return {0.0, p.reward * theta_need_given_signal - p.trip_cost};
}

SignalerStrategy signaler_select(const SignalerAgent& agent,
                                 const GameParams& p, Rng& rng) {
  const double theta_need = belief_sample(agent.belief_need, rng);
  const double theta_response = belief_sample(agent.belief_response, rng);
  const auto rewards = signaler_expected_rewards(theta_need, theta_response, p);
  return kSignalerStrategies[argmax_split_ties(rewards, rng)];
}

void signaler_observe(SignalerAgent& agent, bool need, bool signaled,
                      bool responded) {
  if (responded && !signaled) {
    throw std::logic_error("signaler_observe: response without a signal");
  }
  agent.belief_need = belief_update(agent.belief_need, need);
  if (signaled) {
    agent.belief_response = belief_update(agent.belief_response, responded);
  }
}

ResponderStrategy responder_select(const ResponderAgent& agent,
                                   const GameParams& p, Rng& rng) {
  const double theta = belief_sample(agent.belief_need_given_signal, rng);
  const auto rewards = responder_expected_rewards(theta, p);
  return kResponderStrategies[argmax_split_ties(rewards, rng)];
}

void responder_observe(ResponderAgent& agent, bool signaled, bool responded,
                       bool need_observed) {
  if (responded && !signaled) {
    throw std::logic_error("responder_observe: response without a signal");
  }
  if (signaled && responded) {
    agent.belief_need_given_signal =
        belief_update(agent.belief_need_given_signal, need_observed);
  }
}

void reset_beliefs(SignalerAgent& agent) {
  agent.belief_need = agent.prior_need;
  agent.belief_response = agent.prior_response;
}

void reset_beliefs(ResponderAgent& agent) {
  agent.belief_need_given_signal = agent.prior;
}

}  // namespace sigresp
