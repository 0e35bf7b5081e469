#include "hardylab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "hardylab/conditions.hpp"
#include "hardylab/inequalities.hpp"
#include "hardylab/norm_solver.hpp"

namespace hardylab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  SweepTask task;
  double alpha;
  double p;
  std::size_t n;
};

GeneratorSpec cell_generator(const SweepConfig& cfg, const Cell& cell) {
  GeneratorSpec g = cfg.generator;
  if (g.kind == GeneratorKind::explicit_values) {
    if (cell.n > g.values.size()) throw InvalidArgument("N exceeds the number of explicit weights");
    g.values.resize(cell.n);
  } else {
    g.alpha = cell.alpha;
    g.beta = std::max(cfg.generator.beta, cell.alpha);
  }
  g.n = cell.n;
  return g;
}

double relative_room(double value, double bound) {
  if (!std::isfinite(bound) || !std::isfinite(value) || bound == 0.0) return kNaN;
  return (bound - value) / std::abs(bound);
}

SolverOptions solver_options(const SweepConfig& cfg) {
  SolverOptions opts;
  opts.seed = cfg.seed;
  opts.restarts = cfg.restarts;
  return opts;
}

void run_norm(const SweepConfig& cfg, const WeightSequence& w, const ExponentPair& e, SweepRow& row) {
  const NormResult r = e.negative() ? norm_negative_p(w, e, solver_options(cfg)) : operator_norm(w, e, solver_options(cfg));
  const ConditionReport cart = cartlidge(w, e);
  row.value = r.norm;
  row.bound = kNaN;
  if (cart.implied_bound) row.bound = e.negative() ? *cart.implied_bound : std::pow(*cart.implied_bound, 1.0 / e.p());
  row.verdict = r.converged ? "converged" : "not_converged";
  row.slack = relative_room(row.value, row.bound);
  row.residual = r.kkt_residual;
  row.iterations = r.iterations;
  row.details = json{{"result", r}, {"cartlidge", cart}};
}

void run_conditions(const WeightSequence& w, const ExponentPair& e, SweepRow& row) {
  const ConditionReport cart = cartlidge(w, e);
  row.value = cart.constant.value_or(kNaN);
  row.bound = cart.implied_bound.value_or(kNaN);
  row.verdict = cart.holds ? "holds" : "fails";
  row.slack = cart.margin.value_or(kNaN);
  row.residual = kNaN;
  json reports = json::array({cart});
  if (cart.implied_bound && w.size() >= 2) {
    reports.push_back(decreasing_determination(w, e, *cart.implied_bound, DeterminationForm::u_form));
  }
  row.details = json{{"reports", std::move(reports)},
                     {"inf_difference", finite_or_null(inf_difference(w))},
                     {"rows_decreasing", rows_decreasing(w)},
                     {"ratio_profile", to_string(ratio_profile(w).shape)}};
}

void run_schur(const SweepConfig& cfg, const Cell& cell, const ExponentPair& e, SweepRow& row) {
  const SchurCertificate cert = build_certificate(cfg.variant, cell.alpha, e, cell.n);
  const SchurReport rep = verify_schur(cert, e);
  row.value = std::max(rep.worst_row_slack, rep.worst_col_slack);
  row.bound = rep.bound;
  row.verdict = rep.holds ? "holds" : "fails";
  row.slack = -row.value;
  row.residual = kNaN;
  row.details = json{{"certificate", describe_certificate(cert)}, {"report", rep}};
}

void run_carleman(const SweepConfig& cfg, const Cell& cell, SweepRow& row) {
  const CarlemanProbe probe = carleman_probe(cell.alpha, cell.n, solver_options(cfg));
  row.value = probe.estimate;
  row.bound = probe.target;
  row.verdict = probe.within_target ? "within_target" : "exceeds_target";
  row.slack = relative_room(probe.estimate, probe.target);
  row.residual = probe.stationarity;
  row.iterations = probe.iterations;
  row.details = json{{"probe", probe}};
}

void run_inequalities(const SweepConfig& cfg, const Cell& cell, const ExponentPair& e, SweepRow& row) {
  if (e.negative()) throw InvalidArgument("inequalities task requires p > 1");
  const double beta = cfg.generator.kind == GeneratorKind::mean_power ? std::max(cfg.generator.beta, cell.alpha)
                                                                      : cell.alpha;
  const WeightSequence w = make_weights(GeneratorSpec::mean_power(cell.alpha, beta, cell.n));
  const NormResult r = operator_norm(w, e, solver_options(cfg));
  const MeanPowerFamilyResult fam = verify_mean_power_family(cell.alpha, beta, e, r.maximizer);
  row.beta = beta;
  row.value = fam.ratio;
  row.bound = fam.target;
  row.verdict = to_string(fam.verdict);
  row.slack = relative_room(fam.ratio, fam.target);
  row.residual = r.kkt_residual;
  row.iterations = r.iterations;
  row.details = json{{"family", "mean_power"}, {"result", fam}};
}

SweepRow evaluate_cell(const SweepConfig& cfg, const Cell& cell) {
  SweepRow row;
  row.task = to_string(cell.task);
  row.generator = to_string(cfg.generator.kind);
  row.alpha = cell.alpha;
  row.beta = cfg.generator.kind == GeneratorKind::mean_power ? std::max(cfg.generator.beta, cell.alpha) : kNaN;
  row.p = cell.p;
  row.n = cell.n;
  row.seed = cfg.seed;
  try {
    const ExponentPair e = ExponentPair::from_p(cell.p);
    switch (cell.task) {
      case SweepTask::norm: run_norm(cfg, make_weights(cell_generator(cfg, cell)), e, row); break;
      case SweepTask::conditions: run_conditions(make_weights(cell_generator(cfg, cell)), e, row); break;
      case SweepTask::schur: run_schur(cfg, cell, e, row); break;
      case SweepTask::carleman: run_carleman(cfg, cell, row); break;
      case SweepTask::inequalities: run_inequalities(cfg, cell, e, row); break;
    }
  } catch (const std::exception& ex) {
    row.value = row.bound = row.slack = row.residual = kNaN;
    row.iterations = 0;
    row.verdict = "error";
    row.error = ex.what();
    row.details = nullptr;
  }
  return row;
}

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config field '") + key + "': " + ex.what());
  }
}

}  // namespace

std::string to_string(SweepTask t) {
  switch (t) {
    case SweepTask::norm: return "norm";
    case SweepTask::conditions: return "conditions";
    case SweepTask::schur: return "schur";
    case SweepTask::carleman: return "carleman";
    case SweepTask::inequalities: return "inequalities";
  }
  return "unknown";
}

SweepTask sweep_task_from_string(const std::string& name) {
  for (SweepTask t : {SweepTask::norm, SweepTask::conditions, SweepTask::schur, SweepTask::carleman,
                      SweepTask::inequalities}) {
    if (to_string(t) == name) return t;
  }
  throw ConfigError("unknown task: " + name);
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format: " + name);
}

void SweepConfig::validate() const {
  if (p_grid.empty()) throw ConfigError("p_grid must not be empty");
  if (alpha_grid.empty()) throw ConfigError("alpha_grid must not be empty");
  if (n_grid.empty()) throw ConfigError("n_grid must not be empty");
  if (tasks.empty()) throw ConfigError("tasks must not be empty");
  for (double p : p_grid) {
    if (!std::isfinite(p) || (p >= 0.0 && p <= 1.0)) {
      throw ConfigError("p values must be finite and lie outside [0, 1]; got " + format_double(p));
    }
  }
  for (double a : alpha_grid) {
    if (!std::isfinite(a)) throw ConfigError("alpha values must be finite");
  }
  for (std::size_t n : n_grid) {
    if (n == 0) throw ConfigError("N values must be positive");
  }
  if (restarts == 0) throw ConfigError("restarts must be positive");
  if (variant != CertificateVariant::bennett && variant != CertificateVariant::improved) {
    throw ConfigError("sweep certificate variant must be bennett or improved");
  }
}

SweepConfig SweepConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {"generator", "p_grid", "alpha_grid", "n_grid", "tasks",
                                                 "output",    "seed",   "restarts",   "variant"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config field: " + key);
  }
  SweepConfig cfg;
  try {
    cfg.generator = j.at("generator").get<GeneratorSpec>();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config field 'generator': ") + ex.what());
  } catch (const InvalidArgument& ex) {
    throw ConfigError(std::string("config field 'generator': ") + ex.what());
  }
  cfg.p_grid = get_field<std::vector<double>>(j, "p_grid");
  cfg.alpha_grid = j.contains("alpha_grid") ? get_field<std::vector<double>>(j, "alpha_grid")
                                            : std::vector<double>{cfg.generator.alpha};
  cfg.n_grid = j.contains("n_grid") ? get_field<std::vector<std::size_t>>(j, "n_grid")
                                    : std::vector<std::size_t>{cfg.generator.n};
  for (const auto& t : get_field<std::vector<std::string>>(j, "tasks")) cfg.tasks.push_back(sweep_task_from_string(t));
  if (j.contains("output")) {
    const json& out = j.at("output");
    if (out.is_string()) {
      cfg.output_path = out.get<std::string>();
    } else if (out.is_object()) {
      if (out.contains("path")) cfg.output_path = get_field<std::string>(out, "path");
      if (out.contains("format")) cfg.format = output_format_from_string(get_field<std::string>(out, "format"));
    } else {
      throw ConfigError("config field 'output' must be a string or an object");
    }
  }
  if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("restarts")) cfg.restarts = get_field<std::size_t>(j, "restarts");
  if (j.contains("variant")) {
    try {
      cfg.variant = certificate_variant_from_string(get_field<std::string>(j, "variant"));
    } catch (const InvalidArgument& ex) {
      throw ConfigError(ex.what());
    }
  }
  return cfg;
}

json SweepConfig::to_json() const {
  json tasks_json = json::array();
  for (SweepTask t : tasks) tasks_json.push_back(to_string(t));
  return json{{"generator", generator},
              {"p_grid", p_grid},
              {"alpha_grid", alpha_grid},
              {"n_grid", n_grid},
              {"tasks", tasks_json},
              {"output", {{"path", output_path}, {"format", to_string(format)}}},
              {"seed", seed},
              {"restarts", restarts},
              {"variant", to_string(variant)}};
}

std::size_t sweep_workers() {
  if (const char* env = std::getenv("HARDYLAB_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::size_t(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> evaluate_sweep(const SweepConfig& cfg, std::size_t workers) {
  std::vector<Cell> cells;
  for (SweepTask t : cfg.tasks) {
    for (double a : cfg.alpha_grid) {
      for (double p : cfg.p_grid) {
        for (std::size_t n : cfg.n_grid) cells.push_back({t, a, p, n});
      }
    }
  }
  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) rows[k] = evaluate_cell(cfg, cells[k]);
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

namespace {

std::string csv_number(double x) { return std::isfinite(x) ? format_double(x) : std::string(); }

}  // namespace

void write_rows(std::ostream& out, const std::vector<SweepRow>& rows, OutputFormat format, const SweepConfig& cfg) {
  if (format == OutputFormat::csv) {
    out << csv_line(kSweepColumns) << '\n';
    for (const SweepRow& r : rows) {
      out << csv_line({r.task, r.generator, csv_number(r.alpha), csv_number(r.beta), csv_number(r.p),
                       std::to_string(r.n), csv_number(r.value), csv_number(r.bound), r.verdict,
                       csv_number(r.slack), csv_number(r.residual), std::to_string(r.iterations),
                       std::to_string(r.seed)})
          << '\n';
    }
    return;
  }
  json list = json::array();
  for (const SweepRow& r : rows) {
    json j{{"task", r.task},
           {"generator", r.generator},
           {"alpha", finite_or_null(r.alpha)},
           {"beta", finite_or_null(r.beta)},
           {"p", finite_or_null(r.p)},
           {"N", r.n},
           {"value", finite_or_null(r.value)},
           {"bound", finite_or_null(r.bound)},
           {"verdict", r.verdict},
           {"slack", finite_or_null(r.slack)},
           {"residual", finite_or_null(r.residual)},
           {"iterations", r.iterations},
           {"seed", r.seed}};
    if (!r.error.empty()) j["error"] = r.error;
    if (!r.details.is_null()) j["details"] = r.details;
    list.push_back(std::move(j));
  }
  out << json{{"config", cfg.to_json()}, {"rows", std::move(list)}}.dump(2) << '\n';
}

int run_sweep(const SweepConfig& cfg, std::ostream& diagnostics) {
  try {
    cfg.validate();
  } catch (const ConfigError& ex) {
    diagnostics << "config error: " << ex.what() << '\n';
    return kExitConfig;
  }
  const std::vector<SweepRow> rows = evaluate_sweep(cfg, sweep_workers());
  std::size_t failed = 0;
  for (const SweepRow& r : rows) {
    if (r.verdict == "error") {
      ++failed;
      diagnostics << "cell failed: task=" << r.task << " alpha=" << format_double(r.alpha)
                  << " p=" << format_double(r.p) << " N=" << r.n << ": " << r.error << '\n';
    }
  }
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    write_rows(std::cout, rows, cfg.format, cfg);
    std::cout.flush();
    if (!std::cout) return kExitIo;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      diagnostics << "cannot open output file: " << cfg.output_path << '\n';
      return kExitIo;
    }
    write_rows(file, rows, cfg.format, cfg);
    file.close();
    if (!file) {
      diagnostics << "failed writing output file: " << cfg.output_path << '\n';
      return kExitIo;
    }
  }
  return failed == 0 ? kExitOk : kExitCellFailures;
}

}  // namespace hardylab
