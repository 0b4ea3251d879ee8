#ifndef SIGRESP_BANDIT_HPP
#define SIGRESP_BANDIT_HPP

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "sigresp/game.hpp"

namespace sigresp {

// Every random draw in the library comes from one of these, seeded per run.
using Rng = std::mt19937_64;

// Beta(alpha, beta) posterior over a Bernoulli success probability.
struct BetaBelief {
  double alpha = 2.0;
  double beta = 2.0;

  double mean() const { return alpha / (alpha + beta); }
  double count() const { return alpha + beta; }

  bool operator==(const BetaBelief&) const = default;
};

// Throws std::invalid_argument unless alpha and beta are finite and positive.
void validate(const BetaBelief& b, const char* field = "belief");

double belief_sample(const BetaBelief& b, Rng& rng);

constexpr BetaBelief belief_update(BetaBelief b, bool success) {
  if (success) {
    b.alpha += 1.0;
  } else {
    b.beta += 1.0;
  }
  return b;
}

// a and b tie when |a - b| <= kTieRelTolerance * max(1, |a|, |b|).
inline constexpr double kTieRelTolerance = 1e-12;

bool ties(double a, double b);

// Indices whose value ties with the maximum, in ascending order.
std::vector<std::size_t> argmax_set(std::span<const double> values);

// An argmax of values; a uniform draw picks among tied maxima. The draw is
// consumed only when more than one index ties.
std::size_t argmax_split_ties(std::span<const double> values, Rng& rng);

// Expected signaler reward of each strategy given need probability theta_need
// and response probability theta_response.
std::array<double, 4> signaler_expected_rewards(double theta_need,
                                                double theta_response,
                                                const GameParams& p);

// Expected responder reward of ignoring / responding given the probability
// that a signal comes with a need.
std::array<double, 2> responder_expected_rewards(double theta_need_given_signal,
                                                 const GameParams& p);

struct SignalerAgent {
  BetaBelief belief_need;
  BetaBelief belief_response;
  BetaBelief prior_need;
  BetaBelief prior_response;

  SignalerAgent() = default;
  SignalerAgent(BetaBelief need_prior, BetaBelief response_prior)
      : belief_need(need_prior),
        belief_response(response_prior),
        prior_need(need_prior),
        prior_response(response_prior) {}
};

struct ResponderAgent {
  BetaBelief belief_need_given_signal;
  BetaBelief prior;

  ResponderAgent() = default;
  explicit ResponderAgent(BetaBelief prior_belief)
      : belief_need_given_signal(prior_belief), prior(prior_belief) {}
};

// Thompson step: draws theta_need then theta_response, then a tie-break draw
// if needed.
SignalerStrategy signaler_select(const SignalerAgent& agent,
                                 const GameParams& p, Rng& rng);

// The need belief moves every round; the response belief only when a signal
// was sent. Throws std::logic_error if responded without signaled.
void signaler_observe(SignalerAgent& agent, bool need, bool signaled,
                      bool responded);

ResponderStrategy responder_select(const ResponderAgent& agent,
                                   const GameParams& p, Rng& rng);

// The responder sees the need only after answering a signal; other rounds
// leave its belief unchanged.
void responder_observe(ResponderAgent& agent, bool signaled, bool responded,
                       bool need_observed);

void reset_beliefs(SignalerAgent& agent);
void reset_beliefs(ResponderAgent& agent);

}  // namespace sigresp

#endif  // SIGRESP_BANDIT_HPP
