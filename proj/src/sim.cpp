#include "sigresp/sim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace sigresp {

void validate(const Schedule& schedule) {
  if (schedule.segments.empty()) {
    throw std::invalid_argument("schedule must have at least one segment");
  }
  if (schedule.segments.front().start != 1) {
    throw std::invalid_argument("schedule[0].start must be 1");
  }
  for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
    const auto& seg = schedule.segments[i];
    if (i > 0 && seg.start <= schedule.segments[i - 1].start) {
      throw std::invalid_argument("schedule[" + std::to_string(i) +
                                  "].start must be strictly increasing");
    }
    try {
      validate(seg.params);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("schedule[" + std::to_string(i) +
                                  "].params." + e.what());
    }
  }
}

ActiveSegment active_params(const Schedule& schedule, Iteration t) {
  const auto& segs = schedule.segments;
  if (segs.empty() || t < segs.front().start) {
    throw std::out_of_range("iteration precedes the first schedule segment");
  }
  auto it = std::upper_bound(
      segs.begin(), segs.end(), t,
      [](Iteration value, const Segment& seg) { return value < seg.start; });
  const auto id = static_cast<std::size_t>(std::distance(segs.begin(), it));
  return {id, segs[id - 1].params};
}

void validate(const SimConfig& config) {
  validate(config.schedule);
  if (config.horizon < 1) {
    throw std::invalid_argument("horizon must be positive");
  }
  if (config.horizon < config.schedule.segments.back().start) {
    throw std::invalid_argument(
        "horizon must reach the start of the last schedule segment");
  }
  if (config.trace_every < 1) {
    throw std::invalid_argument("trace_every must be at least 1");
  }
  validate(config.prior_need, "priors.need");
  validate(config.prior_response, "priors.response");
  validate(config.prior_need_given_signal, "priors.need_given_signal");
}

std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Simulation::Simulation(SimConfig config)
    : config_(std::move(config)),
      rng_(mix_seed(config_.seed)),
      signaler_(config_.prior_need, config_.prior_response),
      responder_(config_.prior_need_given_signal) {
  validate(config_);
}

RoundRecord Simulation::step() {
  if (done()) throw std::logic_error("simulation horizon exhausted");
  const Iteration t = next_t_++;
  const auto [segment_id, params] = active_params(config_.schedule, t);
  if (segment_id != current_segment_) {
    // Change oracle: both agents learn of the new segment at its first round.
    if (current_segment_ != 0 && config_.reset_on_change) {
      reset_beliefs(signaler_);
      reset_beliefs(responder_);
    }
    current_segment_ = segment_id;
  }

  RoundRecord rec;
  rec.t = t;
  rec.segment_id = segment_id;
  rec.alpha_A = signaler_.belief_need.alpha;
  rec.beta_A = signaler_.belief_need.beta;
  rec.alpha_B = signaler_.belief_response.alpha;
  rec.beta_B = signaler_.belief_response.beta;
  rec.alpha_C = responder_.belief_need_given_signal.alpha;
  rec.beta_C = responder_.belief_need_given_signal.beta;

  rec.need = std::bernoulli_distribution(params.need_prob)(rng_);
  rec.s_strategy = signaler_select(signaler_, params, rng_);
  rec.signaled = signal_emitted(rec.s_strategy, rec.need);
  rec.r_strategy = responder_select(responder_, params, rng_);
  rec.responded = rec.signaled && rec.r_strategy == ResponderStrategy::R1;

  const auto payoff =
      realized_rewards(params, rec.need, rec.signaled, rec.responded);
  rec.signaler_reward = payoff.signaler;
  rec.responder_reward = payoff.responder;

  signaler_observe(signaler_, rec.need, rec.signaled, rec.responded);
  responder_observe(responder_, rec.signaled, rec.responded, rec.need);
  return rec;
}

Trace run(const SimConfig& config) {
  Simulation sim(config);
  Trace trace;
  trace.reserve(static_cast<std::size_t>(config.horizon));
  while (!sim.done()) trace.push_back(sim.step());
  return trace;
}

namespace {

constexpr std::size_t pair_index(StrategyPair p) {
  return index(p.s) * 2 + index(p.r);
}

constexpr StrategyPair pair_at(std::size_t i) {
  return {kSignalerStrategies[i / 2], kResponderStrategies[i % 2]};
}

// Slides a window of length `window` over [begin, end) and returns the offset
// (1-based, from begin) of the first window end where accept(counts) holds.
template <typename Accept>
std::optional<Iteration> first_window(const Trace& trace, std::size_t begin,
                                      std::size_t end, std::size_t window,
                                      Accept accept) {
  if (window == 0 || end > trace.size() || end < begin ||
      end - begin < window) {
    return std::nullopt;
  }
  std::array<std::size_t, 8> counts{};
  for (std::size_t i = begin; i < end; ++i) {
    ++counts[pair_index(trace[i].pair())];
    if (i >= begin + window) --counts[pair_index(trace[i - window].pair())];
    if (i + 1 >= begin + window && accept(counts)) {
      return static_cast<Iteration>(i - begin + 1);
    }
  }
  return std::nullopt;
}

}  // namespace

StrategyFrequencies frequencies(std::span<const RoundRecord> records) {
  StrategyFrequencies f;
  if (records.empty()) return f;
  for (const auto& rec : records) {
    f.signaler[index(rec.s_strategy)] += 1.0;
    f.responder[index(rec.r_strategy)] += 1.0;
  }
  const double n = static_cast<double>(records.size());
  for (auto& v : f.signaler) v /= n;
  for (auto& v : f.responder) v /= n;
  return f;
}

StrategyFrequencies tail_frequencies(const Trace& trace, std::size_t n) {
  const std::size_t take = std::min(n, trace.size());
  return frequencies(std::span(trace).last(take));
}

std::pair<StrategyPair, double> dominant_pair(
    std::span<const RoundRecord> records) {
  std::array<std::size_t, 8> counts{};
  for (const auto& rec : records) ++counts[pair_index(rec.pair())];
  const auto best = std::max_element(counts.begin(), counts.end());
  const auto i = static_cast<std::size_t>(best - counts.begin());
  const double freq =
      records.empty() ? 0.0
                      : static_cast<double>(*best) /
                            static_cast<double>(records.size());
  return {pair_at(i), freq};
}

std::vector<std::pair<std::size_t, std::size_t>> segment_ranges(
    const Trace& trace) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= trace.size(); ++i) {
    if (i == trace.size() || trace[i].segment_id != trace[begin].segment_id) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

std::optional<Iteration> time_to_target(const Trace& trace, std::size_t begin,
                                        std::size_t end, const PairSet& target,
                                        std::size_t window, double threshold) {
  const double needed = threshold * static_cast<double>(window);
  return first_window(trace, begin, end, window, [&](const auto& counts) {
    std::size_t hits = 0;
    for (const auto& p : target) hits += counts[pair_index(p)];
    return static_cast<double>(hits) >= needed;
  });
}

RunSummary summarize(const Trace& trace, std::size_t window) {
  if (window == 0) throw std::invalid_argument("window must be at least 1");
  if (trace.empty()) throw std::invalid_argument("cannot summarize empty trace");

  RunSummary summary;
  summary.window = window;
  const std::span<const RoundRecord> all(trace);
  for (std::size_t begin = 0; begin < trace.size(); begin += window) {
    const auto chunk = all.subspan(begin, std::min(window, trace.size() - begin));
    summary.windows.push_back(
        {chunk.front().t, chunk.back().t, frequencies(chunk)});
  }

  const auto last = all.last(std::min(window, trace.size()));
  summary.final_window = frequencies(last);
  std::tie(summary.final_dominant_pair, summary.final_dominant_frequency) =
      dominant_pair(last);

  for (const auto& rec : trace) {
    summary.cumulative_signaler_reward += rec.signaler_reward;
    summary.cumulative_responder_reward += rec.responder_reward;
  }

  const double needed = kDominanceThreshold * static_cast<double>(window);
  for (const auto& [begin, end] : segment_ranges(trace)) {
    SegmentDominance seg;
    seg.segment_id = trace[begin].segment_id;
    seg.start_t = trace[begin].t;
    seg.end_t = trace[end - 1].t;
    std::optional<StrategyPair> winner;
    seg.time_to_dominance =
        first_window(trace, begin, end, window, [&](const auto& counts) {
          for (std::size_t i = 0; i < counts.size(); ++i) {
            if (static_cast<double>(counts[i]) >= needed) {
              winner = pair_at(i);
              return true;
            }
          }
          return false;
        });
    seg.dominant_pair = winner;
    summary.segments.push_back(seg);
  }
  return summary;
}

std::vector<RunSummary> run_batch(const SimConfig& config, std::size_t n_seeds,
                                  std::size_t window, const TraceSink& sink,
                                  std::size_t max_threads) {
  if (n_seeds == 0) throw std::invalid_argument("n_seeds must be at least 1");
  validate(config);

  std::vector<RunSummary> summaries(n_seeds);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_seeds; i = next++) {
      try {
        SimConfig cfg = config;
        cfg.seed = config.seed + i;
        const Trace trace = run(cfg);
        summaries[i] = summarize(trace, window);
        summaries[i].seed = cfg.seed;
        if (sink) sink(i, cfg.seed, trace);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  std::size_t threads = max_threads != 0
                            ? max_threads
                            : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_seeds);
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return summaries;
}

}  // namespace sigresp
