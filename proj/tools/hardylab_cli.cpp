// Command-line driver: single computations (norm, check, schur, carleman, ineq)
// and grid sweeps. Every subcommand takes --config <file.json> whose keys are
// the long option names; flags given on the command line win over the file.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardylab/conditions.hpp"
#include "hardylab/inequalities.hpp"
#include "hardylab/norm_solver.hpp"
#include "hardylab/schur.hpp"
#include "hardylab/serialize.hpp"
#include "hardylab/sweep.hpp"

using namespace hardylab;

namespace {

struct Common {
  std::string config;
  std::string format = "csv";
  std::string out;
};

struct GeneratorArgs {
  std::string kind = "constant";
  double alpha = 0.0;
  std::optional<double> beta;
  std::size_t n = 1;
  std::vector<double> values;

  GeneratorSpec spec() const {
    GeneratorSpec g;
    g.kind = generator_kind_from_string(kind);
    g.alpha = alpha;
    g.beta = beta.value_or(alpha);
    g.values = values;
    g.n = g.kind == GeneratorKind::explicit_values ? values.size() : n;
    return g;
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON file with option values");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "Output path (default stdout)");
}

void add_generator(CLI::App* sub, GeneratorArgs& g) {
  sub->add_option("--generator", g.kind, "constant|power|diff_power|mean_power|reference_prime|explicit");
  sub->add_option("--alpha", g.alpha, "Generator exponent");
  sub->add_option("--beta", g.beta, "Mean order for mean_power");
  sub->add_option("--n", g.n, "Section length N");
  sub->add_option("--values", g.values, "Weights for the explicit generator");
}

// Fills options the user did not pass on the command line from a JSON object.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + ex.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || key == "config") throw ConfigError("unknown config key: " + key);
    if (opt->count() > 0) continue;
    std::vector<std::string> results;
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      for (const auto& v : value) results.push_back(text(v));
    } else {
      results.push_back(text(value));
    }
    opt->add_result(results);
    opt->run_callback();
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  file << text;
  if (!file) throw std::ios_base::failure("cannot write " + c.out);
}

std::string num(double x) { return std::isfinite(x) ? format_double(x) : std::string(); }

template <class T>
std::string num(const std::optional<T>& x) {
  if (!x) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return num(*x);
  } else {
    return std::to_string(*x);
  }
}

std::vector<double> decay_sequence(std::size_t n, double decay) {
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = std::pow(double(k + 1), -decay);
  return a;
}

struct NormArgs {
  GeneratorArgs gen;
  double p = 2.0;
  std::string restrict_to = "none";
  SolverOptions opts;
};

std::string run_norm(const NormArgs& args, const std::string& format) {
  SolverOptions opts = args.opts;
  opts.monotone_restriction = monotone_restriction_from_string(args.restrict_to);
  const GeneratorSpec spec = args.gen.spec();
  const WeightSequence w = make_weights(spec);
  const ExponentPair e = ExponentPair::from_p(args.p);
  const NormResult r = e.negative() ? norm_negative_p(w, e, opts) : operator_norm(w, e, opts);
  const ConditionReport cart = cartlidge(w, e);
  double bound = std::nan("");
  if (cart.implied_bound) bound = e.negative() ? *cart.implied_bound : std::pow(*cart.implied_bound, 1.0 / e.p());
  if (format == "json") {
    return json{{"generator", spec},
                {"p", args.p},
                {"restriction", args.restrict_to},
                {"result", r},
                {"cartlidge_bound", finite_or_null(bound)}}
               .dump(2) +
           "\n";
  }
  return csv_line({"N", "p", "alpha", "norm", "bound", "residual", "iters"}) + "\n" +
         csv_line({std::to_string(w.size()), num(args.p), num(spec.alpha), num(r.norm), num(bound),
                   num(r.kkt_residual), std::to_string(r.iterations)}) +
         "\n";
}

struct CheckArgs {
  GeneratorArgs gen;
  double p = 2.0;
  std::optional<double> gao_l, det_u, det_l, mu, limit, aux_power;
  double u2 = 4.0;
  SolverOptions opts;
};

std::string run_check(const CheckArgs& args, const std::string& format) {
  const WeightSequence w = make_weights(args.gen.spec());
  const ExponentPair e = ExponentPair::from_p(args.p);
  std::vector<ConditionReport> reports;
  const ConditionReport cart = cartlidge(w, e);
  reports.push_back(cart);
  if (args.gao_l) reports.push_back(gao_condition(w, e, *args.gao_l));
  const std::optional<double> u = args.det_u ? args.det_u : cart.implied_bound;
  if (u && w.size() >= 2) reports.push_back(decreasing_determination(w, e, *u, DeterminationForm::u_form));
  if (args.det_l) reports.push_back(decreasing_determination(w, e, *args.det_l, DeterminationForm::l_form));

  ConditionReport inf;
  inf.id = ConditionId::inf_difference;
  inf.holds = true;
  inf.constant = inf_difference(w);
  inf.section_length = w.size();
  reports.push_back(inf);

  if (!e.negative()) {
    const double mu = args.mu ? *args.mu : operator_norm(w, e, args.opts).mu;
    reports.push_back(necessary_condition(w, mu));
  }
  if (args.limit) reports.push_back(concave_limit_condition(w, *args.limit));

  ConditionReport rows;
  rows.id = ConditionId::rows_decreasing;
  rows.holds = rows_decreasing(w);
  rows.section_length = w.size();
  reports.push_back(rows);

  if (args.aux_power && !e.negative()) {
    AuxSequence aux{decay_sequence(w.size(), -*args.aux_power), args.u2};
    reports.push_back(kaluza_szego_check(w, e, aux));
  }

  if (format == "json") return json(reports).dump(2) + "\n";
  std::string text = csv_line({"condition", "holds", "constant", "implied_bound", "first_failure_index", "margin"}) + "\n";
  for (const auto& r : reports) {
    text += csv_line({to_string(r.id), r.holds ? "true" : "false", num(r.constant), num(r.implied_bound),
                      num(r.first_failure_index), num(r.margin)}) +
            "\n";
  }
  return text;
}

struct SchurArgs {
  std::string variant = "bennett";
  double alpha = 1.0;
  double p = 2.0;
  std::size_t n = 100;
  double u2_scale = 1.0;
  std::optional<std::size_t> row_sum_i;
};

std::string run_schur(const SchurArgs& args, const std::string& format) {
  const ExponentPair e = ExponentPair::from_p(args.p);
  const CertificateVariant variant = certificate_variant_from_string(args.variant);
  SchurCertificate cert = build_certificate(variant, args.alpha, e, args.n);
  cert.u2 *= args.u2_scale;
  const SchurReport rep = verify_schur(cert, e);
  std::optional<RowSumEstimate> rs;
  if (args.row_sum_i) rs = row_sum_estimate(variant, args.alpha, e, *args.row_sum_i, args.n);
  if (format == "json") {
    json j{{"certificate", describe_certificate(cert)}, {"report", rep}};
    if (rs) j["row_sum"] = *rs;
    return j.dump(2) + "\n";
  }
  std::string text = csv_line({"variant", "alpha", "p", "N", "holds", "bound", "worst_row_slack", "worst_row_index",
                               "worst_col_slack", "worst_col_index", "row_sum_value", "row_sum_bound"}) +
                     "\n";
  text += csv_line({args.variant, num(args.alpha), num(args.p), std::to_string(args.n), rep.holds ? "true" : "false",
                    num(rep.bound), num(rep.worst_row_slack), std::to_string(rep.worst_row_index),
                    num(rep.worst_col_slack), std::to_string(rep.worst_col_index),
                    rs ? num(rs->value) : std::string(), rs ? num(rs->bound) : std::string()}) +
          "\n";
  return text;
}

struct CarlemanArgs {
  double alpha = 0.0;
  std::size_t n = 20;
  std::string restrict_to = "none";
  SolverOptions opts;
};

std::string run_carleman(const CarlemanArgs& args, const std::string& format) {
  SolverOptions opts = args.opts;
  opts.monotone_restriction = monotone_restriction_from_string(args.restrict_to);
  const CarlemanProbe probe = carleman_probe(args.alpha, args.n, opts);
  if (format == "json") {
    return json{{"alpha", args.alpha}, {"N", args.n}, {"restriction", args.restrict_to}, {"probe", probe}}.dump(2) +
           "\n";
  }
  return csv_line({"alpha", "N", "estimate", "target", "within_target", "stationarity", "iterations"}) + "\n" +
         csv_line({num(args.alpha), std::to_string(args.n), num(probe.estimate), num(probe.target),
                   probe.within_target ? "true" : "false", num(probe.stationarity), std::to_string(probe.iterations)}) +
         "\n";
}

struct IneqArgs {
  std::string family = "hardy";
  GeneratorArgs gen;
  double p = 2.0;
  double r = 3.0;
  double s = 2.0;
  double decay = 1.0;
  double u_scale = 1.0;
};

std::string run_ineq(const IneqArgs& args, const std::string& format) {
  const std::size_t n = args.gen.kind == "explicit" ? args.gen.values.size() : args.gen.n;
  const std::vector<double> a = decay_sequence(n, args.decay);
  const double nan = std::nan("");
  json params{{"N", n}, {"decay", args.decay}};
  json result;
  double lhs = nan, rhs = nan, slack = nan;
  std::string verdict;
  const std::string& f = args.family;

  if (f == "hardy" || f == "carleman") {
    const GeneratorSpec spec = args.gen.spec();
    const WeightSequence w = make_weights(spec);
    params["generator"] = spec;
    if (f == "hardy") {
      const ExponentPair e = ExponentPair::from_p(args.p);
      params["p"] = args.p;
      lhs = hardy_ratio(w, e, a);
      const ConditionReport cart = cartlidge(w, e);
      if (cart.implied_bound) rhs = *cart.implied_bound;
    } else {
      lhs = carleman_ratio(w, a);
      if (spec.kind == GeneratorKind::power) rhs = std::exp(1.0 / (spec.alpha + 1.0));
      if (spec.kind == GeneratorKind::constant) rhs = std::exp(1.0);
    }
    verdict = std::isfinite(rhs) ? (lhs <= rhs ? "pass" : "fail") : "unproven";
  } else if (f == "mean_power") {
    const ExponentPair e = ExponentPair::from_p(args.p);
    const double beta = args.gen.beta.value_or(args.gen.alpha);
    params.update({{"alpha", args.gen.alpha}, {"beta", beta}, {"p", args.p}});
    const MeanPowerFamilyResult r = verify_mean_power_family(args.gen.alpha, beta, e, a);
    result = r;
    lhs = r.ratio;
    rhs = r.target;
    verdict = to_string(r.verdict);
  } else if (f == "bliss") {
    params = json{{"r", args.r}, {"s", args.s}, {"alpha", args.gen.alpha}};
    lhs = bliss_constant({args.r, args.s, args.gen.alpha});
    verdict = "computed";
  } else if (f == "discrete_bliss") {
    const double alpha = args.gen.alpha;
    params.update({{"r", args.r}, {"s", args.s}, {"alpha", alpha}, {"u_scale", args.u_scale}});
    std::vector<double> u(n), v(n, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = double(k + 1);
      const double step = k == 0 ? 1.0 : -std::pow(x, args.s) * std::expm1(args.s * std::log1p(-1.0 / x));
      u[k] = args.u_scale * step / std::pow(x, alpha * args.r);
    }
    const BlissCheck r = verify_discrete_bliss(u, v, a, args.r, args.s, alpha);
    result = r;
    lhs = r.lhs;
    rhs = r.rhs;
    slack = r.slack;
    verdict = !r.hypothesis ? "hypothesis_fails" : (*r.conclusion ? "pass" : "fail");
  } else if (f == "carleman_type") {
    params.update({{"s", args.s}, {"alpha", args.gen.alpha}});
    const InequalityVerdict r = verify_carleman_type(std::vector<double>(n, 1.0), a, args.s, args.gen.alpha);
    lhs = r.lhs;
    rhs = r.rhs;
    slack = r.slack;
    verdict = r.holds ? "pass" : "fail";
  } else if (f == "duality") {
    params["alpha"] = args.gen.alpha;
    const DualityCheck r = duality_p2_check(args.gen.alpha, a, a);
    result = r;
    lhs = r.bilinear;
    rhs = r.bound;
    slack = r.slack;
    verdict = r.holds ? "pass" : "fail";
  } else {
    throw InvalidArgument("unknown inequality family: " + f);
  }
  if (std::isnan(slack) && std::isfinite(rhs) && rhs != 0.0) slack = (rhs - lhs) / rhs;

  if (format == "json") {
    json j{{"family", f},
           {"params", params},
           {"lhs", finite_or_null(lhs)},
           {"rhs", finite_or_null(rhs)},
           {"verdict", verdict},
           {"slack", finite_or_null(slack)}};
    if (!result.is_null()) j["details"] = result;
    return j.dump(2) + "\n";
  }
  return csv_line({"family", "lhs", "rhs", "verdict", "slack"}) + "\n" +
         csv_line({f, num(lhs), num(rhs), verdict, num(slack)}) + "\n";
}

void add_solver_options(CLI::App* sub, SolverOptions& o) {
  sub->add_option("--restarts", o.restarts, "Random restarts");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--tol", o.tol, "Relative convergence tolerance");
  sub->add_option("--max-iter", o.max_iter, "Iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted mean matrices: operator norms, sufficient conditions, Schur certificates and inequality checks"};
  app.require_subcommand(1);

  Common common;
  NormArgs norm_args;
  CheckArgs check_args;
  SchurArgs schur_args;
  CarlemanArgs carleman_args;
  IneqArgs ineq_args;

  auto* norm = app.add_subcommand("norm", "Finite-section operator norm");
  add_common(norm, common);
  add_generator(norm, norm_args.gen);
  norm->add_option("--p", norm_args.p, "Exponent (p > 1 or p < 0)");
  norm->add_option("--restrict", norm_args.restrict_to, "none|decreasing|increasing");
  add_solver_options(norm, norm_args.opts);

  auto* check = app.add_subcommand("check", "Condition matrix for one weight sequence");
  add_common(check, common);
  add_generator(check, check_args.gen);
  check->add_option("--p", check_args.p, "Exponent");
  check->add_option("--gao-L", check_args.gao_l, "Constant L for the per-n ratio condition");
  check->add_option("--det-U", check_args.det_u, "U for decreasing determination (default: the Cartlidge bound)");
  check->add_option("--det-L", check_args.det_l, "L for the (1-L/p)^p form of decreasing determination");
  check->add_option("--mu", check_args.mu, "Norm power for the necessary condition (default: solved)");
  check->add_option("--limit", check_args.limit, "lim Lambda_n/(n lambda_n) for the concave-limit condition");
  check->add_option("--aux-power", check_args.aux_power, "Kaluza-Szego auxiliary w_n = n^t");
  check->add_option("--u2", check_args.u2, "U2 for the Kaluza-Szego check");
  add_solver_options(check, check_args.opts);

  auto* schur = app.add_subcommand("schur", "Build and verify a Schur certificate");
  add_common(schur, common);
  schur->add_option("--variant", schur_args.variant, "bennett|improved");
  schur->add_option("--alpha", schur_args.alpha, "Certificate exponent");
  schur->add_option("--p", schur_args.p, "Exponent p > 1");
  schur->add_option("--n", schur_args.n, "Section length N");
  schur->add_option("--u2-scale", schur_args.u2_scale, "Multiply U2 before verifying");
  schur->add_option("--row-sum-i", schur_args.row_sum_i, "Also evaluate the scalar column-sum estimate at row i");

  auto* carleman = app.add_subcommand("carleman", "Search for the Carleman section constant with weights k^alpha");
  add_common(carleman, common);
  carleman->add_option("--alpha", carleman_args.alpha, "Weight exponent (> -1)");
  carleman->add_option("--n", carleman_args.n, "Section length N");
  carleman->add_option("--restrict", carleman_args.restrict_to, "none|decreasing|increasing");
  add_solver_options(carleman, carleman_args.opts);

  auto* ineq = app.add_subcommand("ineq", "Evaluate one inequality on a_n = n^-decay");
  add_common(ineq, common);
  ineq->add_option("--family", ineq_args.family, "hardy|carleman|mean_power|bliss|discrete_bliss|carleman_type|duality");
  add_generator(ineq, ineq_args.gen);
  ineq->add_option("--p", ineq_args.p, "Exponent");
  ineq->add_option("--r", ineq_args.r, "Bliss r");
  ineq->add_option("--s", ineq_args.s, "Bliss / Carleman-type s");
  ineq->add_option("--decay", ineq_args.decay, "Test sequence a_n = n^-decay");
  ineq->add_option("--u-scale", ineq_args.u_scale, "Scale of u in the discrete Bliss hypothesis");

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
  sweep->add_option("--config", sweep_config, "Sweep config (JSON)")->required();
  std::optional<std::string> sweep_format, sweep_out;
  sweep->add_option("--format", sweep_format, "Override output format")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sweep_out, "Override output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (sweep->parsed()) {
      SweepConfig cfg;
      try {
        std::ifstream in(sweep_config);
        if (!in) throw ConfigError("cannot read config file: " + sweep_config);
        json j;
        try {
          in >> j;
        } catch (const json::exception& ex) {
          throw ConfigError(std::string("invalid JSON: ") + ex.what());
        }
        cfg = SweepConfig::from_json(j);
        if (sweep_format) cfg.format = output_format_from_string(*sweep_format);
        if (sweep_out) cfg.output_path = *sweep_out;
      } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return kExitConfig;
      }
      return run_sweep(cfg, std::cerr);
    }

    for (CLI::App* sub : {norm, check, schur, carleman, ineq}) {
      if (sub->parsed() && !common.config.empty()) apply_config(sub, common.config);
    }
    std::string text;
    if (norm->parsed()) text = run_norm(norm_args, common.format);
    if (check->parsed()) text = run_check(check_args, common.format);
    if (schur->parsed()) text = run_schur(schur_args, common.format);
    if (carleman->parsed()) text = run_carleman(carleman_args, common.format);
    if (ineq->parsed()) text = run_ineq(ineq_args, common.format);
    emit(common, text);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& ex) {
    std::cerr << "i/o error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
