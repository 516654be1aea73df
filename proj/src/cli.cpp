#include "ricciflow/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ricciflow/catalog.hpp"
#include "ricciflow/io.hpp"

namespace ricciflow::cli {

namespace {

using io::json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> table{
      {"info", Command::info},       {"nice", Command::nice},
      {"ricci", Command::ricci},     {"stably-diagonal", Command::stably_diagonal},
      {"soliton", Command::soliton}, {"flow", Command::flow},
      {"catalog", Command::catalog},
  };
  return table;
}

std::shared_ptr<spdlog::logger> logger() {
  static auto instance = [] {
    auto log = spdlog::get("ricciflow");
    if (!log) log = spdlog::stderr_logger_mt("ricciflow");
    const char* level = std::getenv("RICCIFLOW_LOG");
    log->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
    return log;
  }();
  return instance;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": malformed JSON (" + e.what() + ")");
  }
}

struct ResolvedInput {
  std::string name;
  LieAlgebra algebra;
};

ResolvedInput resolve_algebra(const std::string& input) {
  if (input.empty()) throw InvalidInput("--input: required for this command");
  constexpr std::string_view prefix = "catalog:";
  if (input.starts_with(prefix)) {
    auto entry = catalog::get(input.substr(prefix.size()));
    return {entry.name, std::move(entry.algebra)};
  }
  LieAlgebra algebra = io::algebra_from_json(read_json_file(input));
  io::require_lie_algebra(algebra);
  return {input, std::move(algebra)};
}

Metric resolve_metric(const std::string& text, int dim) {
  if (text.empty() || text == "canonical") return Metric::canonical(dim);
  if (text.starts_with("diag:")) {
    std::vector<double> values;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw InvalidInput("--metric: cannot parse '" + item + "'");
      }
    }
    return Metric::diagonal(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return io::metric_from_json(read_json_file(text));
}

void require_metric_dim(const Metric& metric, int dim) {
  if (metric.dim() != dim)
    throw InvalidInput("--metric: dimension " + std::to_string(metric.dim()) +
                       " does not match algebra dimension " + std::to_string(dim));
}

class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoFailure("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit(const json& report, const RunConfig& config, std::ostream& out) {
  Sink sink(config.output, out);
  sink.stream() << report.dump(2) << '\n';
}

json info_report(const ResolvedInput& in) {
  const auto& a = in.algebra;
  const auto series = lower_central_series(a);
  json type = series.nilpotent ? json(series.type) : json(nullptr);
  return {{"name", in.name},
          {"dim", a.dim()},
          {"jacobi_defect", jacobi_defect(a)},
          {"lower_central_series", series.dims},
          {"nilpotent", series.nilpotent},
          {"type", type},
          {"solvable", is_solvable(a)},
          {"unimodular", is_unimodular(a)},
          {"derivation_dim", derivation_algebra(a).size()},
          {"nice", is_nice_basis(a).nice}};
}

json nice_report(const ResolvedInput& in, const RunConfig& config) {
  json report = io::to_json(is_nice_basis(in.algebra));
  report["name"] = in.name;
  if (auto roots = nice_via_roots(in.algebra))
    report["root_criterion"] = io::to_json(*roots);
  else
    report["root_criterion"] = "not-applicable";
  if (is_nilpotent(in.algebra)) {
    SimpleDerivationOptions opts;
    opts.seed = config.seed;
    auto change = simple_derivation_nice_basis(in.algebra, opts);
    report["simple_derivation"] = {{"found", change.has_value()}, {"attempts", opts.attempts}, {"seed", opts.seed}};
    if (change) report["simple_derivation"]["basis_change"] = io::to_json(change->matrix());
  }
  return report;
}

json flow_summary(const ResolvedInput& in, const Metric& p0, const FlowTrajectory& traj) {
  json summary{{"name", in.name},
               {"status", to_string(traj.status)},
               {"message", traj.message},
               {"samples", traj.samples.size()},
               {"t_final", traj.samples.back().t},
               {"P_final", io::to_json(traj.samples.back().p)},
               {"soliton", io::to_json(detect_algebraic_soliton(in.algebra, p0))},
               {"flow_diagonal", nullptr}};
  if (traj.samples.size() >= 3) {
    const auto report = diagonality_report(traj);
    summary["diagonality"] = io::to_json(report);
    if (report.verdict == FlowDiagonality::diagonal) summary["flow_diagonal"] = true;
    if (report.verdict == FlowDiagonality::not_diagonal) summary["flow_diagonal"] = false;
  }
  return summary;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto log = logger();
  if (config.command == Command::catalog) {
    if (config.input.empty()) {
      json list = json::array();
      for (const auto& name : catalog::names()) {
        const auto entry = catalog::get(name);
        list.push_back({{"name", entry.name}, {"description", entry.description}, {"dim", entry.algebra.dim()}});
      }
      emit({{"entries", list}}, config, out);
      return kOk;
    }
    const std::string name = config.input.starts_with("catalog:") ? config.input.substr(8) : config.input;
    emit(io::to_json(catalog::get(name).algebra), config, out);
    return kOk;
  }

  const ResolvedInput in = resolve_algebra(config.input);
  log->info("loaded {} (dim {}, {} brackets)", in.name, in.algebra.dim(), in.algebra.entries().size());
  const int n = in.algebra.dim();

  switch (config.command) {
    case Command::info:
      emit(info_report(in), config, out);
      break;
    case Command::nice:
      emit(nice_report(in, config), config, out);
      break;
    case Command::ricci: {
      const Metric metric = resolve_metric(config.metric, n);
      require_metric_dim(metric, n);
      json report = io::to_json(ricci(in.algebra, metric));
      report["name"] = in.name;
      report["metric"] = io::to_json(metric);
      emit(report, config, out);
      break;
    }
    case Command::stably_diagonal: {
      if (config.samples < 0) throw InvalidInput("--samples: must be non-negative");
      SamplingOptions opts;
      opts.samples = config.samples;
      opts.seed = config.seed;
      json report{{"name", in.name}, {"numeric", io::to_json(stably_ricci_diagonal_numeric(in.algebra, opts), opts)}};
      if (is_nilpotent(in.algebra) && root_criterion_applicable(in.algebra))
        report["exact"] = io::to_json(stably_ricci_diagonal_exact(in.algebra));
      else
        report["exact"] = "not-applicable";
      emit(report, config, out);
      break;
    }
    case Command::soliton: {
      const Metric metric = resolve_metric(config.metric, n);
      require_metric_dim(metric, n);
      json report = io::to_json(detect_algebraic_soliton(in.algebra, metric));
      report["name"] = in.name;
      emit(report, config, out);
      break;
    }
    case Command::flow: {
      if (!(config.tol > 0)) throw InvalidInput("--tol: must be positive");
      const Metric p0 = resolve_metric(config.metric, n);
      require_metric_dim(p0, n);
      FlowOptions opts;
      opts.rtol = opts.atol = config.tol;
      opts.dt_init = config.dt_init;
      const auto traj = integrate_flow(in.algebra, p0, config.t_max, opts);
      log->info("flow finished: {} after {} samples", to_string(traj.status), traj.samples.size());
      const json summary = flow_summary(in, p0, traj);
      if (config.format == Format::csv) {
        Sink sink(config.output, out);
        io::write_trajectory_csv(sink.stream(), traj);
        (config.output.empty() ? err : out) << summary.dump(2) << '\n';
      } else {
        emit(summary, config, out);
      }
      break;
    }
    case Command::catalog:
      break;
  }
  return kOk;
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return execute(config, out, err);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NotFound& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const IoFailure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ricci curvature, nice bases and Ricci flow of left-invariant metrics", "ricciflow"};
  RunConfig config;
  std::string command;
  std::string format = "json";
  std::map<std::string, Command> commands = command_names();
  app.add_option("command", command, "info | nice | ricci | stably-diagonal | soliton | flow | catalog")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("--input", config.input, "catalog:<name> or algebra JSON file");
  app.add_option("--metric", config.metric, "canonical, diag:a1,...,an, or metric JSON file");
  app.add_option("--t-max", config.t_max, "flow end time (negative runs backward)");
  app.add_option("--dt-init", config.dt_init, "initial flow step (0 = automatic)");
  app.add_option("--tol", config.tol, "flow absolute/relative tolerance");
  app.add_option("--samples", config.samples, "random diagonal metrics for stably-diagonal");
  app.add_option("--seed", config.seed, "seed for all randomized searches");
  app.add_option("--output", config.output, "report file (default stdout)");
  app.add_option("--format", format, "json or csv (csv applies to flow)")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
  config.command = commands.at(command);
  config.format = format == "csv" ? Format::csv : Format::json;
  return run(config, out, err);
}

} // namespace ricciflow::cli
