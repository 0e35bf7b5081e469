#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardylab/schur.hpp"
#include "hardylab/sequences.hpp"
#include "hardylab/serialize.hpp"

namespace hardylab {

enum class SweepTask { norm, conditions, schur, carleman, inequalities };
enum class OutputFormat { csv, json };

[[nodiscard]] std::string to_string(SweepTask t);
[[nodiscard]] SweepTask sweep_task_from_string(const std::string& name);
[[nodiscard]] std::string to_string(OutputFormat f);
[[nodiscard]] OutputFormat output_format_from_string(const std::string& name);

/// A malformed or inconsistent sweep configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid = tasks × alpha_grid × p_grid × n_grid, walked in that nesting order.
/// Each alpha replaces generator.alpha (and generator.beta when the template
/// leaves beta unset or below alpha); each N replaces generator.n.
struct SweepConfig {
  GeneratorSpec generator;
  std::vector<double> p_grid;
  std::vector<double> alpha_grid;
  std::vector<std::size_t> n_grid;
  std::vector<SweepTask> tasks;
  std::string output_path;  ///< empty or "-" means stdout
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 1;
  std::size_t restarts = 64;
  CertificateVariant variant = CertificateVariant::bennett;

  /// Throws ConfigError.
  void validate() const;
  [[nodiscard]] static SweepConfig from_json(const json& j);
  [[nodiscard]] json to_json() const;
};

/// One output row. Missing numbers are NaN (empty CSV field, JSON null).
/// `slack` is signed so that positive means room to spare.
struct SweepRow {
  std::string task;
  std::string generator;
  double alpha = 0.0;
  double beta = 0.0;
  double p = 0.0;
  std::size_t n = 0;
  double value = 0.0;
  double bound = 0.0;
  std::string verdict;
  double slack = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::string error;
  json details;
};

inline const std::vector<std::string> kSweepColumns = {"task",  "generator", "alpha",    "beta",       "p",
                                                       "N",     "value",     "bound",    "verdict",    "slack",
                                                       "residual", "iterations", "seed"};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitCellFailures = 2;
inline constexpr int kExitIo = 3;

/// Worker count: HARDYLAB_WORKERS when set to a positive integer, otherwise
/// the hardware concurrency.
[[nodiscard]] std::size_t sweep_workers();

/// Evaluates every cell; failures are recorded in the row (verdict "error")
/// and never stop the sweep. Rows come back in grid order.
[[nodiscard]] std::vector<SweepRow> evaluate_sweep(const SweepConfig& cfg, std::size_t workers);

void write_rows(std::ostream& out, const std::vector<SweepRow>& rows, OutputFormat format, const SweepConfig& cfg);

/// Validates, evaluates and writes the report. Returns kExitOk, kExitCellFailures,
/// kExitConfig or kExitIo.
[[nodiscard]] int run_sweep(const SweepConfig& cfg, std::ostream& diagnostics);

}  // namespace hardylab
