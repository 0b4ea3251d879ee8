#ifndef SIGRESP_IO_HPP
#define SIGRESP_IO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigresp/sim.hpp"

namespace sigresp {

// Schema violation in a config or sweep document. field() is a dotted path
// such as "schedule[1].params.need_prob".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  SimConfig sim;
  std::string scenario = "unnamed";
  std::filesystem::path output_dir = "out";
  std::size_t n_seeds = 1;
  std::size_t window = kDefaultWindow;

  bool operator==(const ExperimentConfig&) const = default;
};

GameParams params_from_json(const nlohmann::json& j,
                            const std::string& field = "params");
nlohmann::json params_to_json(const GameParams& p);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);
ExperimentConfig load_config(const std::filesystem::path& path);

// "R,um,t,com,pn", e.g. "1,0.5,0.8,0.5,0.8".
GameParams parse_params_list(const std::string& text);

// Trace CSV. Columns, in order: t, segment_id, need, s_strategy, r_strategy,
// signaled, responded, signaler_reward, responder_reward, alpha_A, beta_A,
// alpha_B, beta_B, alpha_C, beta_C. Reals use 9 significant digits.
inline constexpr const char* kTraceHeader =
    "t,segment_id,need,s_strategy,r_strategy,signaled,responded,"
    "signaler_reward,responder_reward,alpha_A,beta_A,alpha_B,beta_B,alpha_C,"
    "beta_C";

// Writes records with (t - 1) % every == 0.
void write_trace_csv(std::ostream& os, const Trace& trace,
                     Iteration every = 1);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace,
                     Iteration every = 1);
// Throws ConfigError naming the line on malformed input.
Trace read_trace_csv(std::istream& is);
Trace read_trace_csv(const std::filesystem::path& path);

nlohmann::json summary_to_json(const RunSummary& summary);
nlohmann::json batch_summary_to_json(const ExperimentConfig& config,
                                     const std::vector<RunSummary>& runs);

struct SweepSimulation {
  Iteration horizon = 20000;
  std::uint64_t seed = 1;
  std::size_t window = 2000;
  BetaBelief prior{2.0, 2.0};
};

struct SweepSpec {
  std::vector<double> reward, unmet_cost, trip_cost, comm_cost, need_prob;
  std::vector<GameParams> points;  // explicit extra grid points
  SweepSimulation simulation;

  std::vector<GameParams> expand() const;  // cross product, then points
};

SweepSpec sweep_from_json(const nlohmann::json& j);
SweepSpec load_sweep(const std::filesystem::path& path);

std::string format_real(double value);

}  // namespace sigresp

#endif  // SIGRESP_IO_HPP
