#include "hampack/harness.hpp"

#include "hampack/errors.hpp"
#include "hampack/io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace hampack {

std::string_view to_string(Format f) { return f == Format::json ? "json" : "csv"; }

Format format_from_string(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw InvalidInputError("unknown format '" + std::string(s) + "' (expected json or csv)");
}

void validate_config(const TrialConfig& config) {
  if (config.n_grid.empty()) throw InvalidInputError("n grid is empty");
  if (config.p_grid.empty()) throw InvalidInputError("p grid is empty");
  for (double p : config.p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInputError("p must lie in [0, 1]");
  if (config.q && !(*config.q >= 0.0 && *config.q <= 1.0)) throw InvalidInputError("q must lie in [0, 1]");
}

BatchSummary summarize(std::size_t n, double p, std::span<const TrialRecord> records) {
  BatchSummary s;
  s.n = n;
  s.p = p;
  s.trials = records.size();
  if (records.empty()) return s;
  double delta_sum = 0.0, attempts_sum = 0.0;
  s.max_attempts_min = records.front().report.ledger_audit.max_attempts;
  for (const auto& r : records) {
    const auto& rep = r.report;
    if (rep.success()) {
      ++s.successes;
      if (rep.verification.passed) ++s.verified;
    } else {
      if (rep.outcome == "error") ++s.errors;
      ++s.failures[rep.failure_stage];
    }
    delta_sum += static_cast<double>(rep.delta);
    const auto m = rep.ledger_audit.max_attempts;
    attempts_sum += m;
    s.max_attempts_min = std::min(s.max_attempts_min, m);
    s.max_attempts_max = std::max(s.max_attempts_max, m);
  }
  const auto t = static_cast<double>(s.trials);
  s.success_rate = static_cast<double>(s.successes) / t;
  s.mean_delta = delta_sum / t;
  s.max_attempts_mean = attempts_sum / t;
  return s;
}

BatchResult run_trials(const TrialConfig& config) {
  validate_config(config);
  BatchResult batch;
  for (std::size_t n : config.n_grid)
    for (double p : config.p_grid)
      for (std::size_t i = 0; i < config.trials; ++i) batch.trials.push_back({n, p, i, {}, 0.0});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < batch.trials.size(); k = next++) {
      auto& rec = batch.trials[k];
      PipelineOptions opts;
      opts.n = rec.n;
      opts.p = rec.p;
      opts.seed = config.seed + rec.index;
      opts.mode = config.mode;
      opts.retries = config.retries;
      opts.t_max = config.t_max;
      opts.q = config.q;
      opts.target = config.target;
      const auto start = std::chrono::steady_clock::now();
      rec.report = full_pipeline(opts).report;
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, batch.trials.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::size_t offset = 0;
  for (std::size_t n : config.n_grid)
    for (double p : config.p_grid) {
      std::span<const TrialRecord> slice(batch.trials.data() + offset, config.trials);
      batch.summaries.push_back(summarize(n, p, slice));
      offset += config.trials;
    }
  return batch;
}

namespace {

std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

} // namespace

std::string summary_json(std::span<const BatchSummary> summaries) {
  Json out = Json::array();
  for (const auto& s : summaries) out.push_back(s);
  return out.dump(2) + "\n";
}

std::string summary_csv(std::span<const BatchSummary> summaries) {
  std::ostringstream out;
  out << "n,p,trials,successes,success_rate,verified,errors,fail_matchings,fail_step2,fail_step4,"
         "fail_step5,fail_other,mean_delta,max_attempts_min,max_attempts_mean,max_attempts_max\n";
  for (const auto& s : summaries) {
    auto get = [&](const char* k) {
      auto it = s.failures.find(k);
      return it == s.failures.end() ? std::size_t{0} : it->second;
    };
    std::size_t named = get("matchings") + get("step2") + get("step4") + get("step5");
    std::size_t total = 0;
    for (const auto& [k, v] : s.failures) total += v;
    out << s.n << ',' << num(s.p) << ',' << s.trials << ',' << s.successes << ',' << num(s.success_rate)
        << ',' << s.verified << ',' << s.errors << ',' << get("matchings") << ',' << get("step2") << ','
        << get("step4") << ',' << get("step5") << ',' << total - named << ',' << num(s.mean_delta) << ','
        << s.max_attempts_min << ',' << num(s.max_attempts_mean) << ',' << s.max_attempts_max << '\n';
  }
  return out.str();
}

std::string trials_csv(std::span<const TrialRecord> trials) {
  std::ostringstream out;
  out << "n,p,trial,seed,outcome,failure_stage,delta,hamilton_cycles,verified,max_attempts,"
         "total_attempts,violations\n";
  for (const auto& t : trials) {
    const auto& r = t.report;
    out << t.n << ',' << num(t.p) << ',' << t.index << ',' << r.params.seed << ',' << r.outcome << ','
        << r.failure_stage << ',' << r.delta << ',' << r.cycles.size() << ','
        << (r.verification.passed ? 1 : 0) << ',' << r.ledger_audit.max_attempts << ','
        << r.ledger_audit.total_attempts << ',' << r.ledger_audit.violations.size() << '\n';
  }
  return out.str();
}

std::string timing_csv(std::span<const TrialRecord> trials) {
  std::ostringstream out;
  out << "n,p,trial,seconds\n";
  for (const auto& t : trials) out << t.n << ',' << num(t.p) << ',' << t.index << ',' << num(t.seconds) << '\n';
  return out.str();
}

std::string report_file_name(const TrialRecord& record) {
  return "n" + std::to_string(record.n) + "_p" + short_num(record.p) + "_t" + std::to_string(record.index) +
         ".json";
}

void emit(const BatchResult& batch, Format format, const std::filesystem::path& out_dir) {
  if (format == Format::json) {
    const Json summary = Json::parse(summary_json(batch.summaries));
    if (auto errs = validate_schema(summary, batch_summary_schema()); !errs.empty())
      throw ConsistencyError("batch summary violates its schema: " + errs.front());
    save_text(out_dir / "summary.json", summary_json(batch.summaries));
    for (const auto& t : batch.trials) {
      const std::string text = dump_report(t.report);
      if (auto errs = validate_schema(Json::parse(text), trial_report_schema()); !errs.empty())
        throw ConsistencyError("trial report violates its schema: " + errs.front());
      save_text(out_dir / "reports" / report_file_name(t), text);
    }
  } else {
    save_text(out_dir / "summary.csv", summary_csv(batch.summaries));
  }
  save_text(out_dir / "trials.csv", trials_csv(batch.trials));
  save_text(out_dir / "timing.csv", timing_csv(batch.trials));
}

} // namespace hampack
