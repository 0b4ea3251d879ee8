#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sigresp/sim.hpp"

using namespace sigresp;
using S = SignalerStrategy;
using R = ResponderStrategy;

namespace {

const GameParams kDefaults{1.0, 0.5, 0.8, 0.5, 0.8};

Schedule four_segment_schedule() {
  return {{{1, kDefaults},
           {10001, kDefaults},
           {20001, {1.0, 0.8, 0.8, 0.5, 0.8}},
           {30001, {1.0, 0.5, 2.0, 0.0, 0.8}}}};
}

SimConfig short_config(std::uint64_t seed = 3) {
  SimConfig cfg;
  cfg.horizon = 3000;
  cfg.seed = seed;
  cfg.schedule = {{{1, kDefaults},
                   {1001, {1.0, 0.5, 2.0, 0.0, 0.8}},
                   {2001, {1.0, 0.8, 0.8, 0.5, 0.3}}}};
  return cfg;
}

Trace synthetic(std::initializer_list<StrategyPair> pattern, std::size_t n) {
  Trace trace;
  auto it = pattern.begin();
  for (std::size_t i = 0; i < n; ++i) {
    RoundRecord r;
    r.t = static_cast<Iteration>(i + 1);
    r.segment_id = 1;
    r.s_strategy = it->s;
    r.r_strategy = it->r;
    trace.push_back(r);
    if (++it == pattern.end()) it = pattern.begin();
  }
  return trace;
}

}  // namespace

TEST_CASE("active_params") {
  const Schedule sched = four_segment_schedule();
  CHECK(active_params(sched, 15000).segment_id == 2);
  CHECK(active_params(sched, 1).segment_id == 1);
  CHECK(active_params(sched, 10000).segment_id == 1);
  CHECK(active_params(sched, 10001).segment_id == 2);
  CHECK(active_params(sched, 30001).segment_id == 4);
  CHECK(active_params(sched, 30001).params.trip_cost == 2.0);
  CHECK(active_params(sched, 999999).segment_id == 4);

  const Schedule single = Schedule::constant(kDefaults);
  for (Iteration t : {1, 2, 500, 40000}) {
    CHECK(active_params(single, t).segment_id == 1);
  }
  CHECK_THROWS_AS(active_params(single, 0), std::out_of_range);
}

TEST_CASE("invalid configs are rejected before running") {
  SimConfig cfg = short_config();
  cfg.horizon = 1500;  // last segment starts at 2001
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = short_config();
  cfg.trace_every = 0;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = short_config();
  cfg.schedule.segments[0].start = 2;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = short_config();
  cfg.schedule.segments[2].start = 1001;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = short_config();
  cfg.schedule.segments[1].params.need_prob = -0.1;
  CHECK_THROWS_WITH_AS(run(cfg), doctest::Contains("need_prob"),
                       std::invalid_argument);

  cfg = short_config();
  cfg.prior_response = {0.0, 1.0};
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);

  cfg = short_config();
  cfg.schedule.segments.clear();
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("run is deterministic for a fixed seed") {
  const SimConfig cfg = short_config(17);
  CHECK(run(cfg) == run(cfg));
  SimConfig other = cfg;
  other.seed = 18;
  CHECK(run(cfg) != run(other));
}

TEST_CASE("records satisfy the round invariants") {
  for (bool reset : {false, true}) {
    SimConfig cfg = short_config(5);
    cfg.reset_on_change = reset;
    const Trace trace = run(cfg);
    REQUIRE(trace.size() == 3000);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto& r = trace[i];
      CHECK(r.t == static_cast<Iteration>(i + 1));
      const auto active = active_params(cfg.schedule, r.t);
      CHECK(r.segment_id == active.segment_id);
      CHECK((!r.responded || r.signaled));
      CHECK(r.signaled == signal_emitted(r.s_strategy, r.need));
      CHECK(r.responded == (r.signaled && r.r_strategy == R::R1));
      const auto pay =
          realized_rewards(active.params, r.need, r.signaled, r.responded);
      CHECK(r.signaler_reward == pay.signaler);
      CHECK(r.responder_reward == pay.responder);

      if (i + 1 == trace.size()) continue;
      const auto& n = trace[i + 1];
      if (reset && n.segment_id != r.segment_id) {
        CHECK(BetaBelief{n.alpha_A, n.beta_A} == cfg.prior_need);
        CHECK(BetaBelief{n.alpha_B, n.beta_B} == cfg.prior_response);
        CHECK(BetaBelief{n.alpha_C, n.beta_C} == cfg.prior_need_given_signal);
        continue;
      }
      CHECK(n.alpha_A - r.alpha_A == (r.need ? 1.0 : 0.0));
      CHECK(n.beta_A - r.beta_A == (r.need ? 0.0 : 1.0));
      CHECK((n.alpha_B + n.beta_B) - (r.alpha_B + r.beta_B) ==
            (r.signaled ? 1.0 : 0.0));
      CHECK(n.alpha_B - r.alpha_B == (r.responded ? 1.0 : 0.0));
      CHECK((n.alpha_C + n.beta_C) - (r.alpha_C + r.beta_C) ==
            (r.responded ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("beliefs carry across boundaries without reset") {
  SimConfig cfg = short_config(6);
  cfg.reset_on_change = false;
  const Trace trace = run(cfg);
  // By iteration 1001 the need belief has absorbed 1000 observations.
  CHECK(trace[1000].alpha_A + trace[1000].beta_A == 1004.0);
  CHECK(trace[0].alpha_A == 2.0);
}

TEST_CASE("Simulation exposes final agent state") {
  SimConfig cfg = short_config(7);
  Simulation sim(cfg);
  RoundRecord last;
  while (!sim.done()) last = sim.step();
  CHECK(sim.signaler().belief_need.count() == last.alpha_A + last.beta_A + 1);
  CHECK_THROWS_AS(sim.step(), std::logic_error);
}

TEST_CASE("static scenarios settle where the analysis predicts") {
  SUBCASE("prohibitive costs: silence and no response") {
    SimConfig cfg;
    cfg.schedule = Schedule::constant({1.0, 0.5, 2.0, 2.0, 0.8});
    cfg.horizon = 5000;
    const auto f = tail_frequencies(run(cfg), 2000);
    CHECK(f.signaler[index(S::S0)] >= 0.95);
    CHECK(f.responder[index(R::R0)] >= 0.95);
  }
  SUBCASE("free signals, costly trip: even s1/s2 mix, no response") {
    SimConfig cfg;
    cfg.schedule = Schedule::constant({1.0, 0.5, 2.0, 0.0, 0.8});
    cfg.horizon = 8000;
    const auto f = tail_frequencies(run(cfg), 5000);
    CHECK(f.responder[index(R::R0)] == 1.0);
    CHECK(f.signaler[index(S::S1)] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(f.signaler[index(S::S2)] == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("summarize") {
  SUBCASE("constant strategy") {
    const Trace trace = synthetic({{S::S2, R::R1}}, 1200);
    const auto sum = summarize(trace, 500);
    REQUIRE(sum.windows.size() == 3);
    for (const auto& w : sum.windows) {
      CHECK(w.freq.signaler[index(S::S2)] == 1.0);
      CHECK(w.freq.responder[index(R::R1)] == 1.0);
    }
    CHECK(sum.windows[2].first_t == 1001);
    CHECK(sum.windows[2].last_t == 1200);
    CHECK(sum.final_dominant_pair == StrategyPair{S::S2, R::R1});
    CHECK(sum.final_dominant_frequency == 1.0);
    REQUIRE(sum.segments.size() == 1);
    CHECK(sum.segments[0].time_to_dominance == 500);
  }
  SUBCASE("alternating s1 / s2") {
    const Trace trace = synthetic({{S::S1, R::R0}, {S::S2, R::R0}}, 1000);
    const auto sum = summarize(trace, 100);
    for (const auto& w : sum.windows) {
      CHECK(w.freq.signaler[index(S::S1)] == 0.5);
      CHECK(w.freq.signaler[index(S::S2)] == 0.5);
    }
    CHECK_FALSE(sum.segments[0].time_to_dominance.has_value());
    const auto hit = time_to_target(trace, 0, trace.size(),
                                    {{S::S1, R::R0}, {S::S2, R::R0}}, 100);
    CHECK(hit == 100);
  }
  SUBCASE("window rows sum to one") {
    SimConfig cfg = short_config(9);
    const auto sum = summarize(run(cfg), 333);
    for (const auto& w : sum.windows) {
      double s = 0, r = 0;
      for (double v : w.freq.signaler) s += v;
      for (double v : w.freq.responder) r += v;
      CHECK(s == doctest::Approx(1.0));
      CHECK(r == doctest::Approx(1.0));
    }
    CHECK(sum.segments.size() == 3);
    CHECK(sum.segments[1].start_t == 1001);
    CHECK(sum.segments[1].end_t == 2000);
  }
  SUBCASE("rejects degenerate input") {
    CHECK_THROWS_AS(summarize({}, 10), std::invalid_argument);
    CHECK_THROWS_AS(summarize(synthetic({{S::S0, R::R0}}, 5), 0),
                    std::invalid_argument);
  }
}

TEST_CASE("time_to_target measures from the segment start") {
  Trace trace = synthetic({{S::S0, R::R0}}, 300);
  for (std::size_t i = 150; i < 300; ++i) trace[i].s_strategy = S::S2;
  for (auto& r : trace) r.r_strategy = R::R1;
  // Window of 50 first holds >= 45 (s2, r1) records at index 194.
  CHECK(time_to_target(trace, 0, 300, {{S::S2, R::R1}}, 50) == 195);
  CHECK(time_to_target(trace, 150, 300, {{S::S2, R::R1}}, 50) == 50);
  CHECK_FALSE(time_to_target(trace, 0, 40, {{S::S0, R::R1}}, 50).has_value());
}

TEST_CASE("run_batch") {
  const SimConfig cfg = short_config(21);

  SUBCASE("one seed matches run plus summarize") {
    const auto batch = run_batch(cfg, 1, 250);
    REQUIRE(batch.size() == 1);
    const auto direct = summarize(run(cfg), 250);
    CHECK(batch[0].seed == cfg.seed);
    CHECK(batch[0].final_dominant_pair == direct.final_dominant_pair);
    CHECK(batch[0].cumulative_signaler_reward ==
          direct.cumulative_signaler_reward);
    CHECK(batch[0].windows.size() == direct.windows.size());
  }
  SUBCASE("seed order and determinism regardless of threading") {
    const auto a = run_batch(cfg, 6, 250, {}, 1);
    const auto b = run_batch(cfg, 6, 250, {}, 4);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].seed == cfg.seed + i);
      CHECK(a[i].seed == b[i].seed);
      CHECK(a[i].cumulative_signaler_reward == b[i].cumulative_signaler_reward);
      CHECK(a[i].cumulative_responder_reward ==
            b[i].cumulative_responder_reward);
      CHECK(a[i].final_dominant_pair == b[i].final_dominant_pair);
    }
  }
  SUBCASE("sink sees every trace once") {
    std::vector<int> seen(5, 0);
    run_batch(cfg, 5, 250, [&](std::size_t i, std::uint64_t seed, const Trace& t) {
      seen[i] += 1;
      CHECK(seed == cfg.seed + i);
      CHECK(t.size() == 3000);
    });
    for (int s : seen) CHECK(s == 1);
  }
  SUBCASE("zero seeds rejected") {
    CHECK_THROWS_AS(run_batch(cfg, 0), std::invalid_argument);
  }
}

TEST_CASE("mix_seed spreads neighbouring seeds") {
  CHECK(mix_seed(1) != mix_seed(2));
  CHECK(mix_seed(0) != 0);
}
