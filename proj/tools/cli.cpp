#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "qwalk/bell.hpp"
#include "qwalk/circuit.hpp"
#include "qwalk/io.hpp"
#include "qwalk/logscheme.hpp"
#include "qwalk/stepwise.hpp"

namespace qwalk::cli {

namespace {

using io::json;

struct PreconditionError : Error {
  using Error::Error;
};

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kStepwise:
      return "stepwise";
    case Scheme::kLog:
      return "log";
    case Scheme::kBell:
      return "bell";
  }
  return "?";
}

TargetState load_or_generate_target(const RunConfig& cfg, json& metadata) {
  if (!cfg.target_path.empty()) {
    return io::target_from_json(io::read_json_file(cfg.target_path));
  }
  if (!cfg.random) throw InvalidInput("need --target FILE or --random");
  if (cfg.c < 1 || cfg.d < 1) throw InvalidInput("--c and --d must be positive");
  std::mt19937_64 rng(cfg.seed);
  metadata["seed"] = cfg.seed;
  metadata["random"] = true;
  return random_target(cfg.c, cfg.d, rng);
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  json metadata = {{"scheme", scheme_name(cfg.scheme)}};
  Schedule schedule;
  std::optional<TargetState> target;
  if (cfg.scheme == Scheme::kBell) {
    const BellParams params(cfg.d, cfg.n, cfg.m);
    metadata["n"] = params.n();
    metadata["m"] = params.m();
    if (cfg.literal_bell) metadata["literal"] = true;
    schedule = bell_coins(params, cfg.literal_bell ? BellPhaseFix::kLiteral
                                                   : BellPhaseFix::kApply);
    target = bell_target(params);
  } else {
    target = load_or_generate_target(cfg, metadata);
    if (cfg.scheme == Scheme::kLog) {
      if (target->party_count() != 2) throw PreconditionError("--scheme log needs c = 2");
      if (!is_power_of_two(target->dimension())) {
        throw PreconditionError("--scheme log needs d to be a power of two");
      }
      schedule = synthesize_scheme2(*target);
    } else {
      schedule = synthesize_scheme1(*target);
    }
  }
  if (!cfg.target_out_path.empty()) {
    io::write_text_file(cfg.target_out_path, io::dump(io::target_to_json(*target)));
  }
  write_or_print(cfg.out_path, io::dump(io::schedule_to_json(schedule, metadata)), out);
  if (!cfg.out_path.empty()) {
    out << "steps: " << schedule.steps.size()
        << "\nnon-identity blocks: " << schedule.non_identity_blocks()
        << "\nnon-identity coin layers: " << schedule.non_identity_coin_layers()
        << "\ntotal shift: " << schedule.total_shift() << "\n";
  }
  return kOk;
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const Schedule schedule = io::schedule_from_json(io::read_json_file(cfg.schedule_path));
  const WalkState final_state = run(schedule);
  write_or_print(cfg.out_path, io::dump(io::walk_state_to_json(final_state)), out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Schedule schedule = io::schedule_from_json(io::read_json_file(cfg.schedule_path));
  const TargetState target = io::target_from_json(io::read_json_file(cfg.target_path));
  if (schedule.party_count != target.party_count() ||
      schedule.dimension != target.dimension()) {
    throw InvalidInput("schedule and target have different (c, d)");
  }
  const double tol = cfg.tolerance.value_or(default_tolerance());
  std::vector<StepTrace> trace;
  const WalkState final_state = run(schedule, trace);
  const double f = fidelity(final_state, target);

  out << std::setprecision(17);
  out << "fidelity: " << f << "\n";
  out << "infidelity: " << 1.0 - f << "\n";
  out << "norm drift: " << std::abs(final_state.norm() - 1.0) << "\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << "step " << i << ": norm " << trace[i].norm << ", coin spread "
        << trace[i].coin_spread
        << (trace[i].coin_spread <= tol ? " (collapsed)" : " (NOT collapsed)") << "\n";
  }
  const double residual = final_state.off_origin_coin_mass();
  out << "final coin mass outside |0^c>: " << residual << "\n";
  const bool ok = f >= 1.0 - tol;
  out << "tolerance: " << tol << "\n" << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_cost(const RunConfig& cfg, std::ostream& out) {
  const Schedule schedule = io::schedule_from_json(io::read_json_file(cfg.schedule_path));
  if (schedule.party_count != 2) throw PreconditionError("cost accounting needs c = 2");
  const CostReport report = cost(schedule);
  if (!cfg.out_path.empty()) {
    io::write_text_file(cfg.out_path, io::dump(io::cost_report_to_json(report)));
  }
  if (!cfg.circuit_out_path.empty()) {
    io::write_text_file(cfg.circuit_out_path,
                        io::dump(io::circuit_to_json(lower_schedule(schedule))));
  }
  out << io::cost_report_table(report);
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sweep_min < 2 || cfg.sweep_max < cfg.sweep_min) {
    throw InvalidInput("need 2 <= --d-min <= --d-max");
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> ds;
  std::vector<double> counts;
  json rows = json::array();
  out << std::setw(6) << "d" << std::setw(16) << "long_distance" << "\n";
  for (int d = cfg.sweep_min; d <= cfg.sweep_max; ++d) {
    const CostReport report = cost(synthesize_scheme1(random_target(2, d, rng)));
    ds.push_back(d);
    counts.push_back(report.long_distance_cnots);
    rows.push_back({{"d", d}, {"long_distance_cnots", report.long_distance_cnots}});
    out << std::setw(6) << d << std::setw(16) << report.long_distance_cnots << "\n";
  }
  json summary = {{"seed", cfg.seed}, {"points", rows}};
  if (ds.size() >= 2) {
    const double slope = loglog_slope(ds, counts);
    summary["loglog_slope"] = slope;
    out << std::setprecision(6) << "log-log slope: " << slope << "\n";
  }
  if (!cfg.out_path.empty()) io::write_text_file(cfg.out_path, io::dump(summary));
  return kOk;
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("QWALK_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v >= 0.0) return v;
  }
  return kInputTol;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-walk state engineering: synthesis, simulation, costing"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::map<std::string, Scheme> schemes{
      {"stepwise", Scheme::kStepwise}, {"log", Scheme::kLog}, {"bell", Scheme::kBell}};

  auto* synth = app.add_subcommand("synth", "Synthesize a coin schedule");
  synth->add_option("--scheme", cfg.scheme, "stepwise | log | bell")
      ->transform(CLI::CheckedTransformer(schemes, CLI::ignore_case));
  synth->add_option("--target", cfg.target_path, "Target state JSON")->check(CLI::ExistingFile);
  synth->add_flag("--random", cfg.random, "Random target from --c, --d, --seed");
  synth->add_option("--c", cfg.c, "Party count");
  synth->add_option("--d", cfg.d, "Dimension");
  synth->add_option("--n", cfg.n, "Bell phase index");
  synth->add_option("--m", cfg.m, "Bell shift index");
  synth->add_option("--seed", cfg.seed, "Seed for --random");
  synth->add_flag("--literal", cfg.literal_bell, "Bell: tabulated coins without phase fix");
  synth->add_option("-o,--out", cfg.out_path, "Schedule output (stdout if omitted)");
  synth->add_option("--target-out", cfg.target_out_path, "Also write the target state");

  auto* bell = app.add_subcommand("bell", "Closed-form generalized Bell schedule");
  bell->add_option("--d", cfg.d, "Dimension")->required();
  bell->add_option("--n", cfg.n, "Phase index");
  bell->add_option("--m", cfg.m, "Shift index");
  bell->add_flag("--literal", cfg.literal_bell, "Tabulated coins without phase fix");
  bell->add_option("-o,--out", cfg.out_path, "Schedule output (stdout if omitted)");
  bell->add_option("--target-out", cfg.target_out_path, "Also write the target state");

  auto* run_cmd = app.add_subcommand("run", "Run a schedule and print the final state");
  run_cmd->add_option("--schedule", cfg.schedule_path, "Schedule JSON")->required();
  run_cmd->add_option("-o,--out", cfg.out_path, "Output (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Check a schedule against a target");
  verify->add_option("--schedule", cfg.schedule_path, "Schedule JSON")->required();
  verify->add_option("--target", cfg.target_path, "Target JSON")->required();
  verify->add_option("--tol", cfg.tolerance, "Infidelity tolerance (default 1e-10 or QWALK_TOL)");

  auto* cost_cmd = app.add_subcommand("cost", "Long-distance CNOT count of a schedule");
  cost_cmd->add_option("--schedule", cfg.schedule_path, "Schedule JSON")->required();
  cost_cmd->add_option("-o,--out", cfg.out_path, "Cost report JSON");
  cost_cmd->add_option("--circuit-out", cfg.circuit_out_path, "Lowered circuit JSON");

  auto* sweep = app.add_subcommand("sweep", "Cost scaling over random stepwise targets");
  sweep->add_option("--d-min", cfg.sweep_min, "Smallest d");
  sweep->add_option("--d-max", cfg.sweep_max, "Largest d");
  sweep->add_option("--seed", cfg.seed, "Seed");
  sweep->add_option("-o,--out", cfg.out_path, "Summary JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.subcommand == "bell") cfg.scheme = Scheme::kBell;

  try {
    if (cfg.subcommand == "synth" || cfg.subcommand == "bell") return cmd_synth(cfg, out);
    if (cfg.subcommand == "run") return cmd_run(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "cost") return cmd_cost(cfg, out);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionViolated;
  } catch (const NotBipartite& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionViolated;
  } catch (const NotPowerOfTwo& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionViolated;
  } catch (const NonFrontierBlock& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionViolated;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace qwalk::cli
