#include "sigresp/commands.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace sigresp {

namespace {

std::string cell(const PayoffPair& p) {
  return "(" + format_real(p.signaler) + "; " + format_real(p.responder) + ")";
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: invalid " << e.field() << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace

std::string compact(const PairSet& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    if (!out.empty()) out += '|';
    out += to_string(p.s);
    out += to_string(p.r);
  }
  return out.empty() ? "-" : out;
}

void print_report(std::ostream& os, const GameParams& p,
                  const EquilibriumReport& report) {
  os << "params: R=" << format_real(p.reward)
     << " unmet_cost=" << format_real(p.unmet_cost)
     << " trip_cost=" << format_real(p.trip_cost)
     << " comm_cost=" << format_real(p.comm_cost)
     << " need_prob=" << format_real(p.need_prob) << '\n';
  os << "payoff matrix (signaler; responder):\n";
  os << "    " << std::left << std::setw(24) << "r0" << "r1\n";
  for (auto s : kSignalerStrategies) {
    os << to_string(s) << "  " << std::setw(24)
       << cell(report.matrix[index(s)][0]) << cell(report.matrix[index(s)][1])
       << '\n';
  }
  os << std::right;
  os << "pure NE (best-response search): " << to_string(report.pure_equilibria)
     << '\n';
  os << "pure NE (closed-form conditions): " << to_string(report.closed_form)
     << '\n';
  PairSet weak;
  for (const auto& e : report.entries) {
    if (e.weak) weak.insert(e.pair);
  }
  os << "weak (tied) equilibria: " << to_string(weak) << '\n';
  if (report.agrees()) {
    os << "finders agree\n";
  } else {
    os << "DISAGREEMENT: only search " << to_string(report.only_brute_force)
       << ", only closed form " << to_string(report.only_closed_form) << '\n';
  }
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    ExperimentConfig cfg = load_config(opts.config);
    if (opts.out_dir) cfg.output_dir = *opts.out_dir;
    if (opts.seeds) {
      if (*opts.seeds == 0) throw ConfigError("seeds", "must be at least 1");
      cfg.n_seeds = *opts.seeds;
    }
    std::filesystem::create_directories(cfg.output_dir);

    // Traces are written from worker threads; each seed owns its own file.
    std::vector<std::string> failures(cfg.n_seeds);
    const auto runs = run_batch(
        cfg.sim, cfg.n_seeds, cfg.window,
        [&](std::size_t i, std::uint64_t seed, const Trace& trace) {
          const auto path =
              cfg.output_dir / ("trace_" + std::to_string(seed) + ".csv");
          try {
            write_trace_csv(path, trace, cfg.sim.trace_every);
          } catch (const IoError& e) {
            failures[i] = e.what();
          }
        });
    for (const auto& f : failures) {
      if (!f.empty()) throw IoError(f);
    }
    write_text_file(cfg.output_dir / "summary.json",
                    batch_summary_to_json(cfg, runs).dump(2) + "\n");

    for (const auto& r : runs) {
      out << "seed " << r.seed << ": final pair "
          << to_string(r.final_dominant_pair) << " at "
          << format_real(r.final_dominant_frequency) << '\n';
    }
    out << "wrote " << runs.size() << " trace(s) and summary.json to "
        << cfg.output_dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_equilibria(const EquilibriaOptions& opts, std::ostream& out,
                   std::ostream& err) {
  return guarded(err, [&] {
    if (opts.config.has_value() == opts.params.has_value()) {
      throw ConfigError("params", "give exactly one of --config or --params");
    }
    std::vector<GameParams> envs;
    if (opts.params) {
      envs.push_back(parse_params_list(*opts.params));
    } else {
      for (const auto& seg : load_config(*opts.config).sim.schedule.segments) {
        envs.push_back(seg.params);
      }
    }
    for (std::size_t i = 0; i < envs.size(); ++i) {
      if (envs.size() > 1) out << "segment " << i + 1 << '\n';
      print_report(out, envs[i], equilibrium_report(envs[i]));
    }
    return kExitOk;
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepSpec spec = load_sweep(opts.spec);
    std::ostringstream table;
    table << "reward,unmet_cost,trip_cost,comm_cost,need_prob,closed_form_ne,"
             "brute_force_ne";
    if (opts.simulate) {
      table << ",dominant_pair,dominant_frequency,s0,s1,s2,s3,r0,r1";
    }
    table << '\n';

    for (const auto& p : spec.expand()) {
      const auto report = equilibrium_report(p);
      table << format_real(p.reward) << ',' << format_real(p.unmet_cost) << ','
            << format_real(p.trip_cost) << ',' << format_real(p.comm_cost)
            << ',' << format_real(p.need_prob) << ','
            << compact(report.closed_form) << ','
            << compact(report.pure_equilibria);
      if (opts.simulate) {
        SimConfig sim;
        sim.horizon = spec.simulation.horizon;
        sim.seed = spec.simulation.seed;
        sim.schedule = Schedule::constant(p);
        sim.prior_need = sim.prior_response = sim.prior_need_given_signal =
            spec.simulation.prior;
        const Trace trace = run(sim);
        const auto tail = std::span(trace).last(
            std::min(spec.simulation.window, trace.size()));
        const auto [pair, freq] = dominant_pair(tail);
        const auto f = frequencies(tail);
        table << ',' << to_string(pair.s) << to_string(pair.r) << ','
              << format_real(freq);
        for (double v : f.signaler) table << ',' << format_real(v);
        for (double v : f.responder) table << ',' << format_real(v);
      }
      table << '\n';
    }

    if (opts.out_file) {
      write_text_file(*opts.out_file, table.str());
    } else {
      out << table.str();
    }
    return kExitOk;
  });
}

}  // namespace sigresp
