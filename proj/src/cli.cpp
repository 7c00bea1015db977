#include "choice_attach/cli.hpp"

#include "choice_attach/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace choice_attach::cli {

namespace {

std::string real_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool uses_model(const std::string& c) { return c != "threshold"; }
bool uses_kmax(const std::string& c) { return c == "pk" || c == "simulate" || c == "compare"; }
bool uses_tol(const std::string& c) { return c == "pk" || c == "cutoff" || c == "compare"; }
bool uses_sim(const std::string& c) { return c == "simulate" || c == "compare"; }

std::vector<Time> parse_checkpoint_list(const std::string& text) {
  std::vector<Time> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("bad checkpoint '" + item + "'");
    }
  }
  return out;
}

Table with_header(const RunConfig& config, std::vector<std::string> columns) {
  Table t;
  t.command_line = config.command_line();
  t.config = config.describe();
  t.columns = std::move(columns);
  return t;
}

}  // namespace

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"pk", "pstar", "threshold", "cutoff",
                                                 "classify", "simulate", "compare"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw ConfigError("unknown command '" + command + "'");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (uses_model(command)) params();
  if (command == "threshold") {
    if (s < 1) throw ConfigError("s must be >= 1");
    if (r_cap && *r_cap < 2 * s) throw ConfigError("r-cap must be >= 2s");
  }
  if (uses_kmax(command) && kmax < (command == "pk" ? 0 : 1)) throw ConfigError("kmax out of range");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (uses_sim(command)) {
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (seeds < 1) throw ConfigError("seeds must be >= 1");
  }
  if (command == "cutoff" && k_search_max < 1) throw ConfigError("k-search-max must be >= 1");
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> d;
  d.emplace_back("command", command);
  if (uses_model(command)) d.emplace_back("r", std::to_string(r));
  d.emplace_back("s", std::to_string(s));
  if (uses_model(command)) d.emplace_back("mode", std::string(to_string(mode)));
  if (uses_kmax(command)) d.emplace_back("kmax", std::to_string(kmax));
  if (uses_tol(command)) d.emplace_back("tol", real_text(tol));
  if (uses_sim(command)) {
    d.emplace_back("steps", std::to_string(steps));
    d.emplace_back("seeds", std::to_string(seeds));
    d.emplace_back("base-seed", std::to_string(base_seed));
  }
  if (command == "simulate" && !checkpoints.empty()) {
    std::string list;
    for (Time t : checkpoints) list += (list.empty() ? "" : ",") + std::to_string(t);
    d.emplace_back("checkpoints", list);
  }
  if (command == "cutoff") d.emplace_back("k-search-max", std::to_string(k_search_max));
  if (command == "threshold") d.emplace_back("r-cap", std::to_string(r_cap.value_or(default_threshold_cap(s))));
  d.emplace_back("format", format);
  return d;
}

std::string RunConfig::command_line() const {
  std::string line = "choice_attach " + command;
  for (const auto& [key, value] : describe())
    if (key != "command") line += " --" + key + " " + value;
  return line;
}

Table cmd_pk(const RunConfig& config) {
  const PkTable table = pk_sequence(config.params(), config.kmax, config.tol);
  Table t = with_header(config, {"k", "p_k", "q_k", "repr", "log_q", "residual"});
  for (const auto& e : table.entries) {
    const Cell residual = e.repr == EntryRepr::LogSpace ? Cell{} : real_cell(e.residual);
    t.rows.push_back({e.k, real_cell(e.p), real_cell(e.q), std::string(to_string(e.repr)), real_cell(e.log_q), residual});
  }
  return t;
}

Table cmd_pstar(const RunConfig& config) {
  const PStarResult res = pstar(config.params());
  Table t = with_header(config, {"r", "s", "kind", "value", "bracket_lo", "bracket_hi", "one_multiplicity",
                                 "sturm_at_zero", "sturm_at_one"});
  t.rows.push_back({std::int64_t{config.r}, std::int64_t{config.s}, std::string(to_string(res.kind)),
                    real_cell(res.value), exact_decimal(res.bracket_lo), exact_decimal(res.bracket_hi),
                    std::int64_t{res.one_multiplicity}, std::int64_t{res.sturm_variations_at_zero},
                    std::int64_t{res.sturm_variations_at_one}});
  return t;
}

Table cmd_threshold(const RunConfig& config) {
  const int r = threshold_r(config.s, config.r_cap);
  Table t = with_header(config, {"s", "r_threshold"});
  t.rows.push_back({std::int64_t{config.s}, std::int64_t{r}});
  return t;
}

Table cmd_cutoff(const RunConfig& config) {
  const CutoffResult res = cutoff_k0(config.params(), config.k_search_max, config.tol);
  Table t = with_header(config, {"r", "s", "k0", "p_k0", "q_k0", "bound_rhs"});
  t.rows.push_back({std::int64_t{config.r}, std::int64_t{config.s}, res.k0, real_cell(res.p_k0),
                    real_cell(res.q_k0), real_cell(res.bound_rhs)});
  return t;
}

Table cmd_classify(const RunConfig& config) {
  const ModelParams params = config.params();
  const PStarResult res = pstar(params);
  Table t = with_header(config, {"r", "s", "class", "pstar_kind", "pstar_value"});
  t.rows.push_back({std::int64_t{config.r}, std::int64_t{config.s}, std::string(to_string(classify_tail(params))),
                    std::string(to_string(res.kind)), real_cell(res.value)});
  return t;
}

Table cmd_simulate(const RunConfig& config) {
  const auto checkpoints = config.checkpoints.empty() ? default_checkpoints(config.steps) : config.checkpoints;
  const auto sims = run_sims(config.params(), config.steps, config.base_seed, config.seeds, checkpoints, config.kmax);
  Table t = with_header(config, {"m", "k", "F", "N", "max_degree", "pm_estimate", "seed"});
  for (const auto& sim : sims)
    for (const auto& cp : sim.checkpoints)
      for (std::int64_t k = 1; k <= cp.census.kmax(); ++k)
        t.rows.push_back({cp.census.m, k, cp.census.F[k], cp.census.N[k], cp.census.max_degree,
                          real_cell(cp.pm_estimate), static_cast<std::int64_t>(sim.seed)});
  return t;
}

Table cmd_compare(const RunConfig& config) {
  const ConvergenceReport rep =
      convergence_report(config.params(), config.steps, config.seeds, config.kmax, config.tol, config.base_seed);
  Table t = with_header(config, {"k", "p_theory", "p_empirical", "stderr", "gap"});
  for (const auto& row : rep.rows)
    t.rows.push_back({row.k, real_cell(row.p_theory), real_cell(row.p_empirical), real_cell(row.stderr_),
                      real_cell(row.gap)});
  return t;
}

namespace {

Table dispatch(const RunConfig& config) {
  const std::string& c = config.command;
  if (c == "pk") return cmd_pk(config);
  if (c == "pstar") return cmd_pstar(config);
  if (c == "threshold") return cmd_threshold(config);
  if (c == "cutoff") return cmd_cutoff(config);
  if (c == "classify") return cmd_classify(config);
  if (c == "simulate") return cmd_simulate(config);
  return cmd_compare(config);
}

void emit(const RunConfig& config, const Table& table, std::ostream& out) {
  const std::string text = config.format == "json" ? to_json(table) : to_csv(table);
  std::filesystem::path path = config.out;
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) {
    const std::filesystem::path name =
        config.out.empty() ? std::filesystem::path(config.command + "." + config.format) : path.filename();
    std::filesystem::create_directories(dir);
    path = std::filesystem::path(dir) / name;
  }
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + path.string());
  file << text;
  if (!file) throw ConfigError("failed writing " + path.string());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string mode = "with-replacement";
  std::string checkpoint_list;
  int r_cap = 0;

  CLI::App app{"Preferential attachment with choice: limit sequences, thresholds and simulation", "choice_attach"};
  app.require_subcommand(1);
  auto model = [&](CLI::App* sub) {
    sub->add_option("--r", config.r, "number of preferential samples")->required();
    sub->add_option("--s", config.s, "rank of the chosen sample (1 = highest degree)")->required();
    sub->add_option("--mode", mode, "with-replacement | without-replacement");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "csv | json");
    sub->add_option("--out", config.out, "output path (default stdout)");
  };
  auto sim = [&](CLI::App* sub) {
    sub->add_option("--steps", config.steps, "growth steps per run");
    sub->add_option("--seeds", config.seeds, "number of independent runs");
    sub->add_option("--base-seed", config.base_seed, "seed of the first run; runs use consecutive seeds");
  };

  auto* pk = app.add_subcommand("pk", "limit sequence p_k, q_k");
  model(pk);
  pk->add_option("--kmax", config.kmax);
  pk->add_option("--tol", config.tol);
  common(pk);

  auto* ps = app.add_subcommand("pstar", "limit of p_k with exact isolating bracket");
  model(ps);
  common(ps);

  auto* th = app.add_subcommand("threshold", "smallest r with p_* < 1 for given s");
  th->add_option("--s", config.s)->required();
  auto* cap_opt = th->add_option("--r-cap", r_cap, "search ceiling (default 4s+64)");
  common(th);

  auto* cu = app.add_subcommand("cutoff", "first k where the doubly-exponential bound starts");
  model(cu);
  cu->add_option("--k-search-max", config.k_search_max);
  cu->add_option("--tol", config.tol);
  common(cu);

  auto* cl = app.add_subcommand("classify", "tail class of a model");
  model(cl);
  common(cl);

  auto* si = app.add_subcommand("simulate", "grow trees and record degree censuses");
  model(si);
  sim(si);
  si->add_option("--kmax", config.kmax);
  si->add_option("--checkpoints", checkpoint_list, "comma-separated times m");
  common(si);

  auto* co = app.add_subcommand("compare", "simulated F_m(k)/2m against p_k");
  model(co);
  sim(co);
  co->add_option("--kmax", config.kmax);
  co->add_option("--tol", config.tol);
  common(co);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.mode = parse_sampling_mode(mode);
    if (cap_opt->count() > 0) config.r_cap = r_cap;
    if (!checkpoint_list.empty()) config.checkpoints = parse_checkpoint_list(checkpoint_list);
    config.validate();
    emit(config, dispatch(config), out);
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NotFound& e) {
    err << "not found: " << e.what() << "\n";
    return kAnalyticFailure;
  } catch (const NonConvergence& e) {
    err << "solver failure: " << e.what() << "\n";
    return kAnalyticFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kAnalyticFailure;
  } catch (const ResourceCap& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::bad_alloc&) {
    err << "resource cap: out of memory\n";
    return kResourceCap;
  }
}

}  // namespace choice_attach::cli
