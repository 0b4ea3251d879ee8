#include "sigresp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace sigresp {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "missing field");
  return *it;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

double get_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

std::int64_t get_positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1) {
    throw ConfigError(path, "expected a positive integer");
  }
  return j.get<std::int64_t>();
}

std::uint64_t get_seed(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

BetaBelief belief_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"alpha", "beta"}, path);
  BetaBelief b{get_real(require(j, "alpha", path), path + ".alpha"),
               get_real(require(j, "beta", path), path + ".beta")};
  if (b.alpha <= 0.0) throw ConfigError(path + ".alpha", "must be positive");
  if (b.beta <= 0.0) throw ConfigError(path + ".beta", "must be positive");
  return b;
}

json belief_to_json(const BetaBelief& b) {
  return {{"alpha", b.alpha}, {"beta", b.beta}};
}

json pair_to_json(const StrategyPair& p) {
  return {{"s", to_string(p.s)}, {"r", to_string(p.r)}};
}

json frequencies_to_json(const StrategyFrequencies& f) {
  json s = json::object();
  for (auto st : kSignalerStrategies) s[std::string(to_string(st))] = f.signaler[index(st)];
  json r = json::object();
  for (auto rt : kResponderStrategies) r[std::string(to_string(rt))] = f.responder[index(rt)];
  return {{"signaler", s}, {"responder", r}};
}

std::vector<double> value_list(const json& grid, const char* key) {
  const std::string path = std::string("grid.") + key;
  const json& list = require(grid, key, "grid");
  if (!list.is_array() || list.empty()) {
    throw ConfigError(path, "expected a nonempty list");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(get_real(list[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  // Avoid "-0" so that zero payoffs print identically.
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

GameParams params_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, {"reward", "unmet_cost", "trip_cost", "comm_cost", "need_prob"},
                 field);
  GameParams p;
  p.reward = get_real(require(j, "reward", field), field + ".reward");
  p.unmet_cost = get_real(require(j, "unmet_cost", field), field + ".unmet_cost");
  p.trip_cost = get_real(require(j, "trip_cost", field), field + ".trip_cost");
  p.comm_cost = get_real(require(j, "comm_cost", field), field + ".comm_cost");
  p.need_prob = get_real(require(j, "need_prob", field), field + ".need_prob");
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError(field + "." + what.substr(0, what.find(' ')), what);
  }
  return p;
}

json params_to_json(const GameParams& p) {
  return {{"reward", p.reward},
          {"unmet_cost", p.unmet_cost},
          {"trip_cost", p.trip_cost},
          {"comm_cost", p.comm_cost},
          {"need_prob", p.need_prob}};
}

ExperimentConfig config_from_json(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j,
                 {"scenario", "horizon", "seed", "n_seeds", "window",
                  "trace_every", "reset_on_change", "output_dir", "priors",
                  "params", "schedule"},
                 "");
  ExperimentConfig cfg;
  SimConfig& sim = cfg.sim;

  if (auto it = j.find("scenario"); it != j.end()) {
    if (!it->is_string()) throw ConfigError("scenario", "expected a string");
    cfg.scenario = it->get<std::string>();
  }
  if (auto it = j.find("output_dir"); it != j.end()) {
    if (!it->is_string()) throw ConfigError("output_dir", "expected a string");
    cfg.output_dir = it->get<std::string>();
  }
  if (auto it = j.find("horizon"); it != j.end()) sim.horizon = get_positive_int(*it, "horizon");
  if (auto it = j.find("seed"); it != j.end()) sim.seed = get_seed(*it, "seed");
  if (auto it = j.find("n_seeds"); it != j.end()) {
    cfg.n_seeds = static_cast<std::size_t>(get_positive_int(*it, "n_seeds"));
  }
  if (auto it = j.find("window"); it != j.end()) {
    cfg.window = static_cast<std::size_t>(get_positive_int(*it, "window"));
  }
  if (auto it = j.find("trace_every"); it != j.end()) {
    sim.trace_every = get_positive_int(*it, "trace_every");
  }
  if (auto it = j.find("reset_on_change"); it != j.end()) {
    sim.reset_on_change = get_bool(*it, "reset_on_change");
  }
  if (auto it = j.find("priors"); it != j.end()) {
    require_object(*it, "priors");
    reject_unknown(*it, {"need", "response", "need_given_signal"}, "priors");
    if (auto b = it->find("need"); b != it->end()) {
      sim.prior_need = belief_from_json(*b, "priors.need");
    }
    if (auto b = it->find("response"); b != it->end()) {
      sim.prior_response = belief_from_json(*b, "priors.response");
    }
    if (auto b = it->find("need_given_signal"); b != it->end()) {
      sim.prior_need_given_signal = belief_from_json(*b, "priors.need_given_signal");
    }
  }

  const bool has_params = j.contains("params");
  const bool has_schedule = j.contains("schedule");
  if (has_params == has_schedule) {
    throw ConfigError("schedule", "give exactly one of 'params' or 'schedule'");
  }
  if (has_params) {
    sim.schedule = Schedule::constant(params_from_json(j["params"], "params"));
  } else {
    const json& list = j["schedule"];
    if (!list.is_array() || list.empty()) {
      throw ConfigError("schedule", "expected a nonempty list of segments");
    }
    sim.schedule.segments.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "schedule[" + std::to_string(i) + "]";
      require_object(list[i], path);
      reject_unknown(list[i], {"start", "params"}, path);
      Segment seg;
      seg.start = get_positive_int(require(list[i], "start", path), path + ".start");
      seg.params = params_from_json(require(list[i], "params", path), path + ".params");
      if (i == 0 && seg.start != 1) throw ConfigError(path + ".start", "must be 1");
      if (i > 0 && seg.start <= sim.schedule.segments.back().start) {
        throw ConfigError(path + ".start", "must be strictly increasing");
      }
      sim.schedule.segments.push_back(seg);
    }
  }
  if (sim.horizon < sim.schedule.segments.back().start) {
    throw ConfigError("horizon", "must reach the start of the last segment");
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json schedule = json::array();
  for (const auto& seg : cfg.sim.schedule.segments) {
    schedule.push_back({{"start", seg.start}, {"params", params_to_json(seg.params)}});
  }
  return {{"scenario", cfg.scenario},
          {"horizon", cfg.sim.horizon},
          {"seed", cfg.sim.seed},
          {"n_seeds", cfg.n_seeds},
          {"window", cfg.window},
          {"trace_every", cfg.sim.trace_every},
          {"reset_on_change", cfg.sim.reset_on_change},
          {"output_dir", cfg.output_dir.generic_string()},
          {"priors",
           {{"need", belief_to_json(cfg.sim.prior_need)},
            {"response", belief_to_json(cfg.sim.prior_response)},
            {"need_given_signal", belief_to_json(cfg.sim.prior_need_given_signal)}}},
          {"schedule", schedule}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed: " + path.string());
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

GameParams parse_params_list(const std::string& text) {
  static constexpr const char* kFields[] = {"reward", "unmet_cost", "trip_cost",
                                            "comm_cost", "need_prob"};
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t i = values.size();
    const char* field = i < 5 ? kFields[i] : "params";
    double v = 0.0;
    const auto* first = item.data();
    const auto* last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ConfigError(field, "not a number: '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.size() != 5) {
    throw ConfigError("params", "expected 5 comma-separated values R,um,t,com,pn");
  }
  return params_from_json({{"reward", values[0]},
                           {"unmet_cost", values[1]},
                           {"trip_cost", values[2]},
                           {"comm_cost", values[3]},
                           {"need_prob", values[4]}},
                          "params");
}

void write_trace_csv(std::ostream& os, const Trace& trace, Iteration every) {
  if (every < 1) throw std::invalid_argument("trace_every must be at least 1");
  os << kTraceHeader << '\n';
  for (const auto& r : trace) {
    if ((r.t - 1) % every != 0) continue;
    os << r.t << ',' << r.segment_id << ',' << int{r.need} << ','
       << to_string(r.s_strategy) << ',' << to_string(r.r_strategy) << ','
       << int{r.signaled} << ',' << int{r.responded} << ','
       << format_real(r.signaler_reward) << ',' << format_real(r.responder_reward)
       << ',' << format_real(r.alpha_A) << ',' << format_real(r.beta_A) << ','
       << format_real(r.alpha_B) << ',' << format_real(r.beta_B) << ','
       << format_real(r.alpha_C) << ',' << format_real(r.beta_C) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace,
                     Iteration every) {
  std::ostringstream os;
  write_trace_csv(os, trace, every);
  write_text_file(path, os.str());
}

namespace {

template <typename T>
T parse_number(std::string_view cell, std::size_t line, const char* column) {
  T v{};
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw ConfigError("line " + std::to_string(line),
                      std::string("bad value in column ") + column);
  }
  return v;
}

bool parse_flag(std::string_view cell, std::size_t line, const char* column) {
  if (cell == "0") return false;
  if (cell == "1") return true;
  throw ConfigError("line " + std::to_string(line),
                    std::string("expected 0/1 in column ") + column);
}

}  // namespace

Trace read_trace_csv(std::istream& is) {
  std::string text;
  if (!std::getline(is, text) || text != kTraceHeader) {
    throw ConfigError("line 1", "unexpected trace header");
  }
  Trace trace;
  std::size_t line = 1;
  while (std::getline(is, text)) {
    ++line;
    if (text.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(text);
    for (;;) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 15) {
      throw ConfigError("line " + std::to_string(line), "expected 15 columns");
    }
    RoundRecord r;
    r.t = parse_number<Iteration>(cells[0], line, "t");
    r.segment_id = parse_number<std::size_t>(cells[1], line, "segment_id");
    r.need = parse_flag(cells[2], line, "need");
    const auto s = parse_signaler(cells[3]);
    const auto rs = parse_responder(cells[4]);
    if (!s || !rs) {
      throw ConfigError("line " + std::to_string(line), "unknown strategy name");
    }
    r.s_strategy = *s;
    r.r_strategy = *rs;
    r.signaled = parse_flag(cells[5], line, "signaled");
    r.responded = parse_flag(cells[6], line, "responded");
    r.signaler_reward = parse_number<double>(cells[7], line, "signaler_reward");
    r.responder_reward = parse_number<double>(cells[8], line, "responder_reward");
    r.alpha_A = parse_number<double>(cells[9], line, "alpha_A");
    r.beta_A = parse_number<double>(cells[10], line, "beta_A");
    r.alpha_B = parse_number<double>(cells[11], line, "alpha_B");
    r.beta_B = parse_number<double>(cells[12], line, "beta_B");
    r.alpha_C = parse_number<double>(cells[13], line, "alpha_C");
    r.beta_C = parse_number<double>(cells[14], line, "beta_C");
    trace.push_back(r);
  }
  return trace;
}

Trace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_trace_csv(in);
}

json summary_to_json(const RunSummary& s) {
  json windows = json::array();
  for (const auto& w : s.windows) {
    json entry = frequencies_to_json(w.freq);
    entry["first_t"] = w.first_t;
    entry["last_t"] = w.last_t;
    windows.push_back(entry);
  }
  json segments = json::array();
  for (const auto& seg : s.segments) {
    segments.push_back(
        {{"segment_id", seg.segment_id},
         {"start_t", seg.start_t},
         {"end_t", seg.end_t},
         {"time_to_dominance",
          seg.time_to_dominance ? json(*seg.time_to_dominance) : json(nullptr)},
         {"dominant_pair",
          seg.dominant_pair ? pair_to_json(*seg.dominant_pair) : json(nullptr)}});
  }
  return {{"seed", s.seed},
          {"window", s.window},
          {"final_window", frequencies_to_json(s.final_window)},
          {"final_dominant_pair", pair_to_json(s.final_dominant_pair)},
          {"final_dominant_frequency", s.final_dominant_frequency},
          {"cumulative_reward",
           {{"signaler", s.cumulative_signaler_reward},
            {"responder", s.cumulative_responder_reward}}},
          {"segments", segments},
          {"windows", windows}};
}

json batch_summary_to_json(const ExperimentConfig& cfg,
                           const std::vector<RunSummary>& runs) {
  json list = json::array();
  for (const auto& r : runs) list.push_back(summary_to_json(r));
  return {{"scenario", cfg.scenario},
          {"window", cfg.window},
          {"dominance_threshold", kDominanceThreshold},
          {"config", config_to_json(cfg)},
          {"runs", list}};
}

std::vector<GameParams> SweepSpec::expand() const {
  std::vector<GameParams> out;
  for (double r : reward)
    for (double um : unmet_cost)
      for (double t : trip_cost)
        for (double com : comm_cost)
          for (double pn : need_prob) out.push_back({r, um, t, com, pn});
  out.insert(out.end(), points.begin(), points.end());
  return out;
}

SweepSpec sweep_from_json(const json& j) {
  require_object(j, "<root>");
  reject_unknown(j, {"grid", "points", "simulation"}, "");
  if (!j.contains("grid") && !j.contains("points")) {
    throw ConfigError("grid", "give a 'grid', a 'points' list, or both");
  }
  SweepSpec spec;
  if (auto it = j.find("grid"); it != j.end()) {
    require_object(*it, "grid");
    reject_unknown(*it, {"reward", "unmet_cost", "trip_cost", "comm_cost", "need_prob"},
                   "grid");
    spec.reward = value_list(*it, "reward");
    spec.unmet_cost = value_list(*it, "unmet_cost");
    spec.trip_cost = value_list(*it, "trip_cost");
    spec.comm_cost = value_list(*it, "comm_cost");
    spec.need_prob = value_list(*it, "need_prob");
    for (const auto& p : spec.expand()) {
      // Reuse the per-field checks so the message names the grid list.
      params_from_json(params_to_json(p), "grid");
    }
  }
  if (auto it = j.find("points"); it != j.end()) {
    if (!it->is_array() || it->empty()) {
      throw ConfigError("points", "expected a nonempty list");
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.points.push_back(
          params_from_json((*it)[i], "points[" + std::to_string(i) + "]"));
    }
  }
  if (auto it = j.find("simulation"); it != j.end()) {
    require_object(*it, "simulation");
    reject_unknown(*it, {"horizon", "seed", "window", "prior"}, "simulation");
    auto& sim = spec.simulation;
    if (auto v = it->find("horizon"); v != it->end()) {
      sim.horizon = get_positive_int(*v, "simulation.horizon");
    }
    if (auto v = it->find("seed"); v != it->end()) sim.seed = get_seed(*v, "simulation.seed");
    if (auto v = it->find("window"); v != it->end()) {
      sim.window = static_cast<std::size_t>(get_positive_int(*v, "simulation.window"));
    }
    if (auto v = it->find("prior"); v != it->end()) {
      sim.prior = belief_from_json(*v, "simulation.prior");
    }
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  return sweep_from_json(read_json_file(path));
}

}  // namespace sigresp
