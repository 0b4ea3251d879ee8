#ifndef SIGRESP_SIM_HPP
#define SIGRESP_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sigresp/bandit.hpp"
#include "sigresp/equilibrium.hpp"
#include "sigresp/game.hpp"

namespace sigresp {

// Iterations are numbered from 1.
using Iteration = std::int64_t;

struct Segment {
  Iteration start = 1;
  GameParams params;

  bool operator==(const Segment&) const = default;
};

// Piecewise-constant parameters. Segment k covers [start_k, start_{k+1}).
struct Schedule {
  std::vector<Segment> segments;

  static Schedule constant(const GameParams& p) { return {{{1, p}}}; }

  bool operator==(const Schedule&) const = default;
};

void validate(const Schedule& schedule);

struct ActiveSegment {
  std::size_t segment_id;  // 1-based
  const GameParams& params;
};

// The segment with the largest start <= t. Throws std::out_of_range for
// t before the first segment.
ActiveSegment active_params(const Schedule& schedule, Iteration t);

struct SimConfig {
  Iteration horizon = 20000;
  Schedule schedule = Schedule::constant(GameParams{});
  BetaBelief prior_need{2.0, 2.0};
  BetaBelief prior_response{2.0, 2.0};
  BetaBelief prior_need_given_signal{2.0, 2.0};
  bool reset_on_change = false;
  std::uint64_t seed = 1;
  Iteration trace_every = 1;

  bool operator==(const SimConfig&) const = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const SimConfig& config);

// Belief columns hold the state each agent selected with in round t, i.e.
// after any reset and before the round's own update.
struct RoundRecord {
  Iteration t = 0;
  std::size_t segment_id = 0;
  bool need = false;
  bool signaled = false;
  bool responded = false;
  SignalerStrategy s_strategy = SignalerStrategy::S0;
  ResponderStrategy r_strategy = ResponderStrategy::R0;
  double signaler_reward = 0.0;
  double responder_reward = 0.0;
  double alpha_A = 0.0, beta_A = 0.0;
  double alpha_B = 0.0, beta_B = 0.0;
  double alpha_C = 0.0, beta_C = 0.0;

  StrategyPair pair() const { return {s_strategy, r_strategy}; }
  bool operator==(const RoundRecord&) const = default;
};

using Trace = std::vector<RoundRecord>;

// splitmix64 finalizer; turns a run seed into the generator seed.
std::uint64_t mix_seed(std::uint64_t seed);

// Stepwise driver for one run. Per round the draw order is: need, signaler
// selection (theta_A, theta_B, tie-break), responder selection (theta_C,
// tie-break).
class Simulation {
 public:
  explicit Simulation(SimConfig config);

  bool done() const { return next_t_ > config_.horizon; }
  Iteration next_iteration() const { return next_t_; }
  RoundRecord step();

  const SignalerAgent& signaler() const { return signaler_; }
  const ResponderAgent& responder() const { return responder_; }
  const SimConfig& config() const { return config_; }

 private:
  SimConfig config_;
  Rng rng_;
  SignalerAgent signaler_;
  ResponderAgent responder_;
  Iteration next_t_ = 1;
  std::size_t current_segment_ = 0;
};

Trace run(const SimConfig& config);

struct StrategyFrequencies {
  std::array<double, 4> signaler{};
  std::array<double, 2> responder{};
};

struct WindowFrequencies {
  Iteration first_t = 0;
  Iteration last_t = 0;
  StrategyFrequencies freq;
};

struct SegmentDominance {
  std::size_t segment_id = 0;
  Iteration start_t = 0;
  Iteration end_t = 0;
  // Iterations from the segment start until a single pair first holds at
  // least the dominance threshold over a trailing window lying inside the
  // segment. Empty if that never happens.
  std::optional<Iteration> time_to_dominance;
  std::optional<StrategyPair> dominant_pair;
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::size_t window = 0;
  std::vector<WindowFrequencies> windows;
  StrategyFrequencies final_window;
  StrategyPair final_dominant_pair;
  double final_dominant_frequency = 0.0;
  double cumulative_signaler_reward = 0.0;
  double cumulative_responder_reward = 0.0;
  std::vector<SegmentDominance> segments;
};

inline constexpr std::size_t kDefaultWindow = 500;
inline constexpr double kDominanceThreshold = 0.9;

StrategyFrequencies frequencies(std::span<const RoundRecord> records);

// Frequencies over the last min(n, size) records.
StrategyFrequencies tail_frequencies(const Trace& trace, std::size_t n);

// Most frequent joint pair over records, with its frequency; the lowest pair
// wins ties.
std::pair<StrategyPair, double> dominant_pair(
    std::span<const RoundRecord> records);

// Half-open index range [begin, end) of each segment's records in trace.
std::vector<std::pair<std::size_t, std::size_t>> segment_ranges(
    const Trace& trace);

// Iterations from records[begin] until the trailing window of length
// `window` inside [begin, end) first has at least `threshold` of its
// records in `target`.
std::optional<Iteration> time_to_target(const Trace& trace, std::size_t begin,
                                        std::size_t end, const PairSet& target,
                                        std::size_t window,
                                        double threshold = kDominanceThreshold);

RunSummary summarize(const Trace& trace, std::size_t window = kDefaultWindow);

// Called once per run with (run index, run seed, trace), possibly from
// several threads at once.
using TraceSink =
    std::function<void(std::size_t, std::uint64_t, const Trace&)>;

// Runs seeds config.seed, config.seed + 1, ... in parallel. Summaries come
// back in seed order.
std::vector<RunSummary> run_batch(const SimConfig& config, std::size_t n_seeds,
                                  std::size_t window = kDefaultWindow,
                                  const TraceSink& sink = {},
                                  std::size_t max_threads = 0);

}  // namespace sigresp

#endif  // SIGRESP_SIM_HPP
