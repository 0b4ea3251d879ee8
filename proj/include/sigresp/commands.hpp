#ifndef SIGRESP_COMMANDS_HPP
#define SIGRESP_COMMANDS_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "sigresp/equilibrium.hpp"
#include "sigresp/io.hpp"

namespace sigresp {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

struct SimulateOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::size_t> seeds;
};

// Writes trace_<seed>.csv per seed and summary.json.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);

struct EquilibriaOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> params;  // "R,um,t,com,pn"
};

int cmd_equilibria(const EquilibriaOptions& opts, std::ostream& out,
                   std::ostream& err);

struct SweepOptions {
  std::filesystem::path spec;
  bool simulate = false;
  std::optional<std::filesystem::path> out_file;  // stdout when empty
};

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

void print_report(std::ostream& os, const GameParams& p,
                  const EquilibriumReport& report);

// Pairs as "s0r0|s2r1", used in sweep tables.
std::string compact(const PairSet& pairs);

}  // namespace sigresp

#endif  // SIGRESP_COMMANDS_HPP
