#ifndef SIGRESP_GAME_HPP
#define SIGRESP_GAME_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sigresp {

// One payoff environment. Rewards and costs are deterministic and known to
// both agents; need_prob is hidden from them and only drives the need draw.
struct GameParams {
  double reward = 1.0;       // R, paid to both agents when a need is met
  double unmet_cost = 0.5;   // rho_um, charged to the signaler
  double trip_cost = 0.8;    // rho_t, charged to the responder per response
  double comm_cost = 0.5;    // rho_com, charged to the signaler per signal
  double need_prob = 0.8;    // p_n

  bool operator==(const GameParams&) const = default;
};

// Throws std::invalid_argument naming the first offending field.
void validate(const GameParams& p);

enum class SignalerStrategy { S0, S1, S2, S3 };
enum class ResponderStrategy { R0, R1 };

inline constexpr std::array<SignalerStrategy, 4> kSignalerStrategies = {
    SignalerStrategy::S0, SignalerStrategy::S1, SignalerStrategy::S2,
    SignalerStrategy::S3};
inline constexpr std::array<ResponderStrategy, 2> kResponderStrategies = {
    ResponderStrategy::R0, ResponderStrategy::R1};

constexpr std::size_t index(SignalerStrategy s) {
  return static_cast<std::size_t>(s);
}
constexpr std::size_t index(ResponderStrategy r) {
  return static_cast<std::size_t>(r);
}

std::string_view to_string(SignalerStrategy s);
std::string_view to_string(ResponderStrategy r);
std::optional<SignalerStrategy> parse_signaler(std::string_view text);
std::optional<ResponderStrategy> parse_responder(std::string_view text);

struct PayoffPair {
  double signaler = 0.0;
  double responder = 0.0;

  bool operator==(const PayoffPair&) const = default;
};

using PayoffMatrix = std::array<std::array<PayoffPair, 2>, 4>;

// s0 never signals, s1 always, s2 iff need, s3 iff no need.
constexpr bool signal_emitted(SignalerStrategy s, bool need) {
  switch (s) {
    case SignalerStrategy::S0: return false;
    case SignalerStrategy::S1: return true;
    case SignalerStrategy::S2: return need;
    case SignalerStrategy::S3: return !need;
  }
  return false;
}

// Long-run fraction of rounds in which strategy s signals.
double signal_rate(SignalerStrategy s, double need_prob);

// Payoffs of one played round. Throws std::logic_error when responded is set
// without a signal.
PayoffPair realized_rewards(const GameParams& p, bool need, bool signaled,
                            bool responded);

// Closed-form expectation over need ~ Bernoulli(p.need_prob).
PayoffPair expected_payoffs(const GameParams& p, SignalerStrategy s,
                            ResponderStrategy r);

PayoffMatrix payoff_matrix(const GameParams& p);

}  // namespace sigresp

#endif  // SIGRESP_GAME_HPP
