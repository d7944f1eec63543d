#include "bench_cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "onemax/experiment.hpp"

namespace onemax::cli {

namespace {

struct Options {
  std::vector<std::string> algos;
  std::int64_t n = 0;
  std::int64_t lambda = 0;
  std::int64_t runs = 100;
  std::uint64_t seed = 0;
  std::string p_min = "over-n";
  std::optional<std::string> mutation;
  std::optional<double> p;
  double increase = 2.0;
  double decrease = 0.5;
  double success_ratio = 0.05;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<std::int64_t> budget_gens;
  std::int64_t threads = 0;
  std::string out = ".";
  bool emit_runs = false;
  bool require_finished = false;

  std::optional<std::int64_t> horizon;
  std::int64_t stride = 1;

  std::string c1_grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.95";
  std::string c2_grid = "1.05,1.2,1.4,1.6,1.8,2.0,2.2,2.5,2.75,3.0";
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Variant parse_variant(std::string_view s) {
  if (s == "static") return Variant::StaticEA;
  if (s == "two-rate") return Variant::TwoRate;
  if (s == "ea-ab") return Variant::EaAb;
  if (s == "three-rate") return Variant::ThreeRate;
  throw UsageError("unknown --algo '" + std::string(s) +
                   "' (expected static, two-rate, ea-ab or three-rate)");
}

PMinRule parse_p_min(std::string_view s) {
  if (s == "over-n") return PMinRule::OverN;
  if (s == "over-n2") return PMinRule::OverNSquared;
  throw UsageError("unknown --p-min '" + std::string(s) +
                   "' (expected over-n or over-n2)");
}

OperatorKind parse_mutation(std::string_view s) {
  if (s == "shift") return OperatorKind::Shift;
  if (s == "standard") return OperatorKind::Standard;
  throw UsageError("unknown --mutation '" + std::string(s) +
                   "' (expected shift or standard)");
}

std::vector<double> parse_grid(const std::string& list, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (values.empty()) {
    throw UsageError(std::string(flag) + " must list at least one value");
  }
  return values;
}

std::size_t positive(std::int64_t v, const char* flag) {
  if (v < 1) {
    throw UsageError(std::string(flag) + " must be at least 1");
  }
  return static_cast<std::size_t>(v);
}

// "name" or "name:p-min", the suffix overriding --p-min for that entry.
AlgorithmConfig base_config(const Options& o, std::string_view token) {
  AlgorithmConfig c;
  std::string_view name = token;
  std::string_view p_min = o.p_min;
  if (const auto colon = token.find(':'); colon != std::string_view::npos) {
    name = token.substr(0, colon);
    p_min = token.substr(colon + 1);
  }
  c.variant = parse_variant(name);
  c.p_min_rule = parse_p_min(p_min);
  c.n = positive(o.n, "--n");
  c.lambda = positive(o.lambda, "--lambda");
  c.op = o.mutation ? parse_mutation(*o.mutation) : default_operator(c.variant);
  if (o.p) {
    if (c.variant != Variant::StaticEA) {
      throw UsageError("--p applies only to --algo static");
    }
    c.p_static = *o.p;
  }
  c.increase_factor = o.increase;
  c.decrease_factor = o.decrease;
  c.success_ratio = o.success_ratio;
  // --c1/--c2 default to (0.7, 1.4) for three-rate; for two-rate they replace
  // the (0.5, 2.0) multipliers only when given.
  if (o.c1) {
    c.three_rate_low = *o.c1;
    c.two_rate_low = *o.c1;
  }
  if (o.c2) {
    c.three_rate_high = *o.c2;
    c.two_rate_high = *o.c2;
  }
  if (o.budget_gens) {
    if (*o.budget_gens < 0) {
      throw UsageError("--budget-gens must not be negative");
    }
    c.budget_generations = static_cast<std::uint64_t>(*o.budget_gens);
  } else {
    c.budget_generations = std::max<std::uint64_t>(1, kDefaultEvaluationCap / c.lambda);
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::size_t thread_count(const Options& o) {
  if (o.threads < 0) {
    throw UsageError("--threads must not be negative");
  }
  if (o.threads == 0) {
    return std::max(1U, std::thread::hardware_concurrency());
  }
  return static_cast<std::size_t>(o.threads);
}

std::ofstream open_output(const Options& o, const char* file) {
  std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / file, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot open " + (dir / file).string() + " for writing");
  }
  return f;
}

struct Partition {
  std::vector<std::vector<RunRecord>> finished;
  std::size_t unfinished = 0;
};

Partition split_finished(const ExperimentSpec& spec, const std::vector<RunRecord>& records) {
  Partition part;
  part.finished.resize(spec.configs.size());
  for (const auto& r : records) {
    if (r.finished) {
      part.finished[r.config_id].push_back(r);
    } else {
      ++part.unfinished;
    }
  }
  return part;
}

// Returns false when the caller must exit with kExitRunFailure.
bool check_unfinished(const Options& o, const Partition& part, std::ostream& err) {
  if (part.unfinished == 0) {
    return true;
  }
  err << "onemax-bench: " << part.unfinished
      << " run(s) hit the generation budget before the optimum";
  if (o.require_finished) {
    err << "; failing because of --require-finished\n";
    return false;
  }
  err << "; they are excluded from the aggregates\n";
  return true;
}

int cmd_run(const Options& o, std::ostream& err) {
  ExperimentSpec spec;
  if (o.algos.empty()) {
    throw UsageError("--algo is required");
  }
  for (const auto& a : o.algos) {
    spec.configs.push_back(base_config(o, a));
  }
  spec.runs_per_config = positive(o.runs, "--runs");
  spec.base_seed = o.seed;
  const auto records = run_experiment(spec, thread_count(o));
  validate_records(spec, records);

  const Partition part = split_finished(spec, records);
  const bool ok = check_unfinished(o, part, err);
  {
    auto f = open_output(o, "runs.csv");
    write_runs_csv(f, spec.configs, records);
  }
  auto f = open_output(o, "aggregate.csv");
  write_aggregate_header(f);
  for (std::size_t i = 0; i < spec.configs.size(); ++i) {
    write_aggregate_row(f, spec.configs[i], part.finished[i]);
  }
  return ok ? kExitOk : kExitRunFailure;
}

int cmd_curve(const Options& o, std::ostream& /*err*/) {
  if (!o.horizon || *o.horizon < 0) {
    throw UsageError("--horizon must be given and not negative");
  }
  const auto horizon = static_cast<std::uint64_t>(*o.horizon);
  ExperimentSpec spec;
  if (o.algos.empty()) {
    throw UsageError("--algo is required");
  }
  for (const auto& a : o.algos) {
    AlgorithmConfig c = base_config(o, a);
    // Nothing past the horizon is reported, so the runs stop there.
    c.budget_generations = std::min(*c.budget_generations, horizon);
    spec.configs.push_back(c);
  }
  spec.runs_per_config = positive(o.runs, "--runs");
  spec.base_seed = o.seed;
  spec.record_trajectory = true;
  spec.trajectory_stride = positive(o.stride, "--stride");
  const auto records = run_experiment(spec, thread_count(o));
  validate_records(spec, records);

  if (o.emit_runs) {
    auto f = open_output(o, "runs.csv");
    write_runs_csv(f, spec.configs, records);
  }
  auto f = open_output(o, "curve.csv");
  write_curve_header(f);
  const std::size_t runs = spec.runs_per_config;
  for (std::size_t i = 0; i < spec.configs.size(); ++i) {
    const std::span<const RunRecord> mine(records.data() + i * runs, runs);
    write_curve_rows(f, spec.configs[i],
                     fixed_budget_curve(mine, horizon, spec.trajectory_stride));
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& err) {
  const auto c1s = parse_grid(o.c1_grid, "--c1-grid");
  const auto c2s = parse_grid(o.c2_grid, "--c2-grid");
  if (o.algos.size() > 1) {
    throw UsageError("sweep takes a single --algo");
  }
  const std::string algo = o.algos.empty() ? "three-rate" : o.algos.front();
  Options grid_point = o;
  ExperimentSpec spec;
  for (double c1 : c1s) {
    for (double c2 : c2s) {
      grid_point.c1 = c1;
      grid_point.c2 = c2;
      AlgorithmConfig c = base_config(grid_point, algo);
      if (c.variant != Variant::ThreeRate && c.variant != Variant::TwoRate) {
        throw UsageError("sweep needs --algo three-rate or two-rate");
      }
      spec.configs.push_back(c);
    }
  }
  spec.runs_per_config = positive(o.runs, "--runs");
  spec.base_seed = o.seed;
  const auto records = run_experiment(spec, thread_count(o));
  validate_records(spec, records);

  const Partition part = split_finished(spec, records);
  const bool ok = check_unfinished(o, part, err);
  if (o.emit_runs) {
    auto f = open_output(o, "runs.csv");
    write_runs_csv(f, spec.configs, records);
  }
  auto f = open_output(o, "sweep.csv");
  write_sweep_header(f);
  for (std::size_t i = 0; i < spec.configs.size(); ++i) {
    write_sweep_row(f, spec.configs[i], part.finished[i]);
  }
  return ok ? kExitOk : kExitRunFailure;
}

void add_run_flags(CLI::App* sub, Options& o) {
  sub->add_option("--algo", o.algos,
                  "static | two-rate | ea-ab | three-rate, optionally suffixed "
                  "with :over-n or :over-n2; repeat for several configurations");
  sub->add_option("--n", o.n, "Problem dimension")->required();
  sub->add_option("--lambda", o.lambda, "Offspring population size")->required();
  sub->add_option("--runs", o.runs, "Independent runs per configuration")
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  sub->add_option("--p-min", o.p_min, "Lower rate bound: over-n | over-n2")
      ->capture_default_str();
  sub->add_option("--mutation", o.mutation,
                  "shift | standard (default: standard for three-rate, else shift)");
  sub->add_option("--p", o.p, "Static mutation rate (default 1/n)");
  sub->add_option("--A", o.increase, "EA(A,b) increase factor")->capture_default_str();
  sub->add_option("--b", o.decrease, "EA(A,b) decrease factor")->capture_default_str();
  sub->add_option("--success-ratio", o.success_ratio,
                  "EA(A,b) share of offspring that must match the parent")
      ->capture_default_str();
  sub->add_option("--c1", o.c1, "Low multiplier (three-rate default 0.7, two-rate 0.5)");
  sub->add_option("--c2", o.c2, "High multiplier (three-rate default 1.4, two-rate 2.0)");
  sub->add_option("--budget-gens", o.budget_gens,
                  "Generation budget per run (default: 1e9 evaluations)");
  sub->add_option("--threads", o.threads, "Worker threads (default: logical cores)");
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_flag("--emit-runs", o.emit_runs, "Also write runs.csv (curve, sweep)");
  sub->add_flag("--require-finished", o.require_finished,
                "Exit with status 3 if any run misses the optimum");
}

}  // namespace

std::string_view algo_name(Variant v) {
  switch (v) {
    case Variant::StaticEA:
      return "static";
    case Variant::TwoRate:
      return "two-rate";
    case Variant::EaAb:
      return "ea-ab";
    case Variant::ThreeRate:
      return "three-rate";
  }
  return "?";
}

std::string_view p_min_name(PMinRule rule) {
  return rule == PMinRule::OverN ? "over-n" : "over-n2";
}

std::string_view mutation_name(OperatorKind kind) {
  return kind == OperatorKind::Shift ? "shift" : "standard";
}

std::string format_real(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_runs_csv(std::ostream& out, const std::vector<AlgorithmConfig>& configs,
                    const std::vector<RunRecord>& records) {
  out << "algo,n,lambda,p_min,mutation,run_index,seed,generations,evaluations,finished\n";
  for (const auto& r : records) {
    const auto& c = configs.at(r.config_id);
    out << algo_name(c.variant) << ',' << c.n << ',' << c.lambda << ','
        << p_min_name(c.p_min_rule) << ',' << mutation_name(c.op) << ','
        << r.run_index << ',' << r.seed << ',' << r.generations << ','
        << r.evaluations << ',' << (r.finished ? 1 : 0) << '\n';
  }
}

void write_aggregate_header(std::ostream& out) {
  out << "algo,n,lambda,p_min,mutation,runs,mean_generations,sd_generations,"
         "rdev_generations,mean_evaluations,sd_evaluations,rdev_evaluations\n";
}

void write_aggregate_row(std::ostream& out, const AlgorithmConfig& c,
                         const std::vector<RunRecord>& usable) {
  out << algo_name(c.variant) << ',' << c.n << ',' << c.lambda << ','
      << p_min_name(c.p_min_rule) << ',' << mutation_name(c.op) << ','
      << usable.size();
  if (usable.empty()) {
    out << ",nan,nan,nan,nan,nan,nan\n";
    return;
  }
  const auto g = aggregate(usable, Metric::Generations);
  const auto e = aggregate(usable, Metric::Evaluations);
  out << ',' << format_real(g.mean) << ',' << format_real(g.sd) << ','
      << format_real(g.rdev) << ',' << format_real(e.mean) << ','
      << format_real(e.sd) << ',' << format_real(e.rdev) << '\n';
}

void write_curve_header(std::ostream& out) {
  out << "algo,n,lambda,p_min,generation,mean_best_fitness\n";
}

void write_curve_rows(std::ostream& out, const AlgorithmConfig& c,
                      const FixedBudgetCurve& curve) {
  for (std::size_t i = 0; i < curve.generations.size(); ++i) {
    out << algo_name(c.variant) << ',' << c.n << ',' << c.lambda << ','
        << p_min_name(c.p_min_rule) << ',' << curve.generations[i] << ','
        << format_real(curve.mean_best_fitness[i]) << '\n';
  }
}

void write_sweep_header(std::ostream& out) {
  out << "c1,c2,n,lambda,runs,mean_evaluations,rdev_evaluations\n";
}

void write_sweep_row(std::ostream& out, const AlgorithmConfig& c,
                     const std::vector<RunRecord>& usable) {
  const bool three = c.variant == Variant::ThreeRate;
  out << format_real(three ? c.three_rate_low : c.two_rate_low) << ','
      << format_real(three ? c.three_rate_high : c.two_rate_high) << ',' << c.n
      << ',' << c.lambda << ',' << usable.size();
  if (usable.empty()) {
    out << ",nan,nan\n";
    return;
  }
  const auto e = aggregate(usable, Metric::Evaluations);
  out << ',' << format_real(e.mean) << ',' << format_real(e.rdev) << '\n';
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"(1+lambda) EA benchmarks on OneMax", "onemax-bench"};
  app.require_subcommand(1, 1);
  Options o;

  auto* run = app.add_subcommand("run", "Runtime statistics (runs.csv, aggregate.csv)");
  add_run_flags(run, o);

  auto* curve = app.add_subcommand("curve", "Fixed-budget curves (curve.csv)");
  add_run_flags(curve, o);
  curve->add_option("--horizon", o.horizon, "Last generation of the curve")->required();
  curve->add_option("--stride", o.stride, "Generation spacing of curve points")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "(c1, c2) grid for the multi-rate EAs (sweep.csv)");
  add_run_flags(sweep, o);
  sweep->add_option("--c1-grid", o.c1_grid, "Comma-separated c1 values")
      ->capture_default_str();
  sweep->add_option("--c2-grid", o.c2_grid, "Comma-separated c2 values")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "onemax-bench: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      return cmd_run(o, err);
    }
    if (curve->parsed()) {
      return cmd_curve(o, err);
    }
    return cmd_sweep(o, err);
  } catch (const UsageError& e) {
    err << "onemax-bench: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RunFailure& e) {
    err << "onemax-bench: " << e.what() << "\n  replay: config index "
        << e.config_index() << ", run index " << e.run_index() << ", seed "
        << e.seed() << '\n';
    return kExitRunFailure;
  } catch (const std::exception& e) {
    err << "onemax-bench: " << e.what() << '\n';
    return kExitRunFailure;
  }
}

}  // namespace onemax::cli
