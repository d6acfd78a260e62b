#pragma once

// Seeded trial batches over an (n, p) grid. Trial i of a batch runs with seed
// config.seed + i; trials run on a worker pool and are folded in index order.

#include "hampack/pipeline.hpp"
#include "hampack/report.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hampack {

enum class Format { json, csv };
std::string_view to_string(Format f);
Format format_from_string(std::string_view s);

struct TrialConfig {
  std::vector<std::size_t> n_grid;
  std::vector<double> p_grid;
  std::uint64_t seed = 0;
  Mode mode = Mode::practical;
  std::size_t trials = 1;
  std::size_t retries = 3;
  std::optional<std::size_t> t_max;
  std::optional<double> q;
  std::optional<std::size_t> target;
  std::filesystem::path out_dir;
  Format format = Format::json;
  std::size_t threads = 0; ///< 0 means hardware concurrency
};

/// Rejects empty grids and p outside [0, 1].
void validate_config(const TrialConfig& config);

struct BatchSummary {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::size_t errors = 0;
  std::map<std::string, std::size_t> failures; ///< by failing stage
  double mean_delta = 0.0;
  std::uint32_t max_attempts_min = 0;
  double max_attempts_mean = 0.0;
  std::uint32_t max_attempts_max = 0;
  std::size_t verified = 0; ///< successes that passed the verifier

  friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BatchSummary, n, p, trials, successes, success_rate, errors, failures,
                                   mean_delta, max_attempts_min, max_attempts_mean, max_attempts_max,
                                   verified)

struct TrialRecord {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t index = 0;
  TrialReport report;
  double seconds = 0.0;
};

struct BatchResult {
  std::vector<BatchSummary> summaries; ///< one per (n, p), grid order
  std::vector<TrialRecord> trials;     ///< grid order, then trial index
};

BatchSummary summarize(std::size_t n, double p, std::span<const TrialRecord> records);

/// Runs every grid point. Summaries are independent of the thread count.
BatchResult run_trials(const TrialConfig& config);

std::string summary_json(std::span<const BatchSummary> summaries);
std::string summary_csv(std::span<const BatchSummary> summaries);
std::string trials_csv(std::span<const TrialRecord> trials);
std::string timing_csv(std::span<const TrialRecord> trials);
std::string report_file_name(const TrialRecord& record);

/// Writes summary.{json,csv}, trials.csv, timing.csv and, for json, reports/<name>.json.
/// Reports failing the shipped schema throw ConsistencyError.
void emit(const BatchResult& batch, Format format, const std::filesystem::path& out_dir);

} // namespace hampack
