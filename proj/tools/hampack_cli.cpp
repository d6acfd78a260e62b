// hampack: drive each phase of the decomposition from the command line.

#include "hampack/errors.hpp"
#include "hampack/harness.hpp"
#include "hampack/io.hpp"
#include "hampack/matching.hpp"
#include "hampack/pipeline.hpp"
#include "hampack/report.hpp"
#include "hampack/stats.hpp"
#include "hampack/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace hampack;

namespace {

struct Common {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string mode = "practical";
  std::size_t retries = 3;
  std::optional<std::size_t> t_max;
  std::optional<double> q;
  std::optional<std::size_t> target;
  std::string out_dir = ".";
};

void add_seed(CLI::App* app, std::uint64_t& seed) {
  app->add_option("--seed", seed, "base seed (trial i uses seed + i)")->envname("HAMPACK_SEED");
}

void add_mode(CLI::App* app, std::string& mode) {
  app->add_option("--mode", mode, "strict or practical")->check(CLI::IsMember({"strict", "practical"}));
}

void add_run_options(CLI::App* app, Common& c) {
  add_mode(app, c.mode);
  app->add_option("--retries", c.retries, "merge retries per factor (practical mode)");
  app->add_option("--tmax", c.t_max, "rotation round cap");
  app->add_option("--q", c.q, "override the sprinkling probability q")->check(CLI::Range(0.0, 1.0));
  app->add_option("--target", c.target, "override the END-set target size");
}

PipelineOptions pipeline_options(const Common& c) {
  PipelineOptions o;
  o.n = c.n;
  o.p = c.p;
  o.seed = c.seed;
  o.mode = mode_from_string(c.mode);
  o.retries = c.retries;
  o.t_max = c.t_max;
  o.q = c.q;
  o.target = c.target;
  return o;
}

std::string with_newline_list(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "  " + l + "\n";
  return out;
}

std::string text_of(auto writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

int run_generate(const Common& c) {
  const Params params = derive_parameters(c.n, c.p, mode_from_string(c.mode));
  RngStreams rngs(c.seed);
  const auto phase1 = run_phase1(params, rngs);
  const std::filesystem::path dir = c.out_dir;
  save_text(dir / "bipartite.txt", text_of([&](std::ostream& o) { write_bipartite(o, phase1.bipartite); }));
  std::cout << "n=" << c.n << " p=" << c.p << " p0=" << params.p0 << " p1=" << params.p1
            << " x+=" << phase1.min_pair.x + 1 << " y-=" << phase1.min_pair.y + 1
            << " delta=" << phase1.matchings.delta << '\n';
  if (!phase1.matchings.success) {
    std::cout << "FAILURE: no " << phase1.matchings.delta << "-factor";
    if (phase1.matchings.witness)
      std::cout << " (e(A,B)=" << phase1.matchings.witness->edges_between << " < "
                << phase1.matchings.witness->required << ")";
    std::cout << '\n';
    return 0;
  }
  save_text(dir / "digraph.txt", text_of([&](std::ostream& o) { write_digraph(o, phase1.digraph); }));
  for (std::size_t i = 0; i < phase1.factors.size(); ++i) {
    const auto& f = phase1.factors[i];
    save_text(dir / ("factor_" + std::to_string(i + 1) + ".txt"),
              text_of([&](std::ostream& o) { write_cycles(o, f.cycles()); }));
    std::cout << "factor " << i + 1 << ": " << f.cycles().size() << " cycles, longest "
              << f.cycles().front().length() << '\n';
  }
  std::cout << "wrote " << dir.string() << '\n';
  return 0;
}

int run_decompose(const Common& c) {
  const auto result = full_pipeline(pipeline_options(c));
  const auto& report = result.report;
  const std::string text = dump_report(report);
  if (auto errs = validate_schema(Json::parse(text), trial_report_schema()); !errs.empty())
    throw ConsistencyError("trial report violates its schema:\n" + with_newline_list(errs));
  const std::filesystem::path dir = c.out_dir;
  save_text(dir / "report.json", text);
  if (result.artifacts.phase1 && report.outcome != "error") {
    save_text(dir / "digraph.txt",
              text_of([&](std::ostream& o) { write_digraph(o, result.artifacts.final_digraph); }));
    save_text(dir / "cycles.txt",
              text_of([&](std::ostream& o) { write_cycles(o, result.artifacts.hamilton_cycles); }));
  }
  std::cout << report.outcome;
  if (!report.failure_stage.empty()) std::cout << " at " << report.failure_stage;
  std::cout << ": delta=" << report.delta << " cycles=" << report.cycles.size();
  if (report.verification.performed) std::cout << " verified=" << (report.verification.passed ? "yes" : "no");
  std::cout << '\n';
  return 0;
}

int run_verify_report(const std::string& path) {
  const std::string original = load_text(path);
  const TrialReport stored = parse_report(original);
  const auto& rp = stored.params;
  PipelineOptions o;
  o.n = rp.n;
  o.p = rp.p;
  o.seed = rp.seed;
  o.mode = mode_from_string(rp.mode);
  o.retries = rp.retries;
  if (stored.outcome != "error" || stored.failure_stage != "parameters") {
    o.t_max = rp.t_max;
    o.target = rp.target;
    if (rp.q_overridden) o.q = rp.q_used;
  }
  const std::string replay = dump_report(full_pipeline(o).report);
  const bool same = replay == original;
  std::cout << "replay " << (same ? "identical" : "DIFFERS") << '\n';
  if (stored.success()) {
    std::cout << "stored verification " << (stored.verification.passed ? "passed" : "FAILED") << '\n';
  }
  return 0;
}

int run_verify_files(const std::string& digraph_path, const std::string& cycles_path) {
  const Digraph d = load_digraph(digraph_path);
  const auto cycles = load_cycles(cycles_path);
  const std::size_t dpm = delta_pm(d);
  const auto v = verify_packing(d, cycles, dpm);
  std::cout << "delta_pm=" << dpm << " cycles=" << cycles.size() << " hamiltonian=" << v.hamiltonian_ok
            << " disjoint=" << v.disjoint_ok << " subset=" << v.subset_ok << " count=" << v.count_ok << '\n'
            << (v.passed() ? "PASS" : "FAIL: " + v.witness) << '\n';
  return 0;
}

int run_oracle_digraph(const std::string& path) {
  const Digraph d = load_digraph(path);
  const auto psi = brute_force_psi(d);
  std::cout << "n=" << d.vertex_count() << " delta_pm=" << delta_pm(d) << " hamilton_cycles="
            << psi.hamilton_cycles << " psi=" << psi.psi << '\n';
  write_cycles(std::cout, psi.family);
  return 0;
}

int run_oracle_bipartite(const std::string& path, std::size_t r) {
  const BipartiteGraph b = load_bipartite(path);
  const auto search = search_r_factor(b, r);
  std::cout << "n=" << b.side_size() << " r=" << r << " r_factor=" << (search.factor ? "yes" : "no");
  if (b.side_size() <= 6) std::cout << " gale_ryser=" << (gale_ryser_bruteforce(b, r) ? "yes" : "no");
  std::cout << '\n';
  if (search.witness) {
    const auto& w = *search.witness;
    std::cout << "witness A=";
    for (Vertex v : w.a) std::cout << v + 1 << ' ';
    std::cout << "B=";
    for (Vertex v : w.b) std::cout << v + 1 << ' ';
    std::cout << "e(A,B)=" << w.edges_between << " < " << w.required << '\n';
  }
  if (search.factor) write_bipartite(std::cout, *search.factor);
  return 0;
}

int run_stats(const std::string& kind, const Common& c, std::uint64_t samples, const std::string& out) {
  std::vector<StatRow> rows;
  auto row = [&](const std::string& name, double value, std::uint64_t count) {
    rows.push_back({c.n, c.p, name, value, count, c.seed});
  };
  if (kind == "perm") {
    SeededRng rng(c.seed, Stream::permutation);
    const auto s = permutation_cycle_stats(c.n, samples, rng);
    row("mean_2_sigma", s.mean_2_sigma, s.samples);
    row("mean_sigma", s.mean_sigma, s.samples);
    row("tail_4logn", s.tail_4logn, s.samples);
  } else if (kind == "moment") {
    const auto m = designation_moment_estimate(c.n, c.p, samples, c.seed);
    row("inverse_cycle_cube", m.estimate, m.usable);
    row("ratio_to_p_log3n", m.ratio, m.usable);
  } else {
    const Params params = derive_parameters(c.n, c.p, Mode::practical);
    SeededRng rng(c.seed, Stream::phase1);
    const auto g = degree_gap_probe(c.n, params.p0, samples, rng);
    double mean = 0.0;
    for (const auto& [gap, count] : g.histogram) mean += static_cast<double>(gap * count);
    row("mean_gap", samples ? mean / static_cast<double>(samples) : 0.0, samples);
    row("gap_bound", g.bound, samples);
    row("fraction_meeting_bound", g.fraction_meeting_bound, samples);
  }
  const std::string text = text_of([&](std::ostream& o) { write_stat_rows(o, rows); });
  if (out.empty()) std::cout << text;
  else save_text(out, text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-disjoint Hamilton cycles in random digraphs"};
  app.require_subcommand(1);

  Common gen;
  auto* generate = app.add_subcommand("generate", "first phase only: B, D' and its 1-factors");
  generate->add_option("--n", gen.n)->required();
  generate->add_option("--p", gen.p)->required()->check(CLI::Range(0.0, 1.0));
  add_seed(generate, gen.seed);
  add_mode(generate, gen.mode);
  generate->add_option("--out-dir", gen.out_dir);

  Common dec;
  auto* decompose = app.add_subcommand("decompose", "one full trial; writes report.json");
  decompose->add_option("--n", dec.n)->required();
  decompose->add_option("--p", dec.p)->required()->check(CLI::Range(0.0, 1.0));
  add_seed(decompose, dec.seed);
  add_run_options(decompose, dec);
  decompose->add_option("--out-dir", dec.out_dir);

  std::string report_path, digraph_path, cycles_path;
  auto* verify = app.add_subcommand("verify", "replay a report, or check a cycle family against a digraph");
  auto* report_opt = verify->add_option("--report", report_path)->check(CLI::ExistingFile);
  auto* vd = verify->add_option("--digraph", digraph_path)->check(CLI::ExistingFile);
  auto* vc = verify->add_option("--cycles", cycles_path)->check(CLI::ExistingFile);
  vd->needs(vc);
  vc->needs(vd);
  report_opt->excludes(vd);

  std::string oracle_digraph, oracle_bipartite;
  std::size_t oracle_r = 0;
  auto* oracle = app.add_subcommand("oracle", "exact psi (n <= 8) or r-factor existence");
  auto* od = oracle->add_option("--digraph", oracle_digraph)->check(CLI::ExistingFile);
  auto* ob = oracle->add_option("--bipartite", oracle_bipartite)->check(CLI::ExistingFile);
  auto* orr = oracle->add_option("--r", oracle_r);
  ob->needs(orr);
  od->excludes(ob);

  Common st;
  std::string stat_kind = "perm", stat_out;
  std::uint64_t samples = 10000;
  auto* stats = app.add_subcommand("stats", "Monte Carlo probes as CSV rows");
  stats->add_option("kind", stat_kind, "perm, moment or gap")->check(CLI::IsMember({"perm", "moment", "gap"}));
  stats->add_option("--n", st.n)->required();
  stats->add_option("--p", st.p)->check(CLI::Range(0.0, 1.0));
  stats->add_option("--samples,--trials", samples);
  add_seed(stats, st.seed);
  stats->add_option("--out", stat_out, "CSV path (default stdout)");

  TrialConfig sw;
  std::string sw_mode = "practical", sw_format = "json", sw_out = "sweep";
  auto* sweep = app.add_subcommand("sweep", "seeded trial batches over an (n, p) grid");
  sweep->add_option("--n", sw.n_grid, "one or more sizes")->required()->delimiter(',');
  auto* swp = sweep->add_option("--p", sw.p_grid, "one or more edge probabilities")->delimiter(',');
  auto* swg = sweep->add_option("--p-grid", sw.p_grid, "comma-separated edge probabilities")->delimiter(',');
  swp->excludes(swg);
  add_seed(sweep, sw.seed);
  sweep->add_option("--trials", sw.trials);
  add_mode(sweep, sw_mode);
  sweep->add_option("--retries", sw.retries);
  sweep->add_option("--tmax", sw.t_max);
  sweep->add_option("--q", sw.q)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--target", sw.target);
  sweep->add_option("--threads", sw.threads, "worker threads (0 = all cores)");
  sweep->add_option("--out-dir", sw_out);
  sweep->add_option("--format", sw_format)->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen);
    if (*decompose) return run_decompose(dec);
    if (*verify) {
      if (!report_path.empty()) return run_verify_report(report_path);
      if (!digraph_path.empty()) return run_verify_files(digraph_path, cycles_path);
      std::cerr << "verify: give --report or --digraph with --cycles\n";
      return 2;
    }
    if (*oracle) {
      if (!oracle_digraph.empty()) return run_oracle_digraph(oracle_digraph);
      if (!oracle_bipartite.empty()) return run_oracle_bipartite(oracle_bipartite, oracle_r);
      std::cerr << "oracle: give --digraph or --bipartite with --r\n";
      return 2;
    }
    if (*stats) return run_stats(stat_kind, st, samples, stat_out);
    if (*sweep) {
      sw.mode = mode_from_string(sw_mode);
      sw.format = format_from_string(sw_format);
      sw.out_dir = sw_out;
      const auto batch = run_trials(sw);
      emit(batch, sw.format, sw.out_dir);
      for (const auto& s : batch.summaries)
        std::cout << "n=" << s.n << " p=" << s.p << " trials=" << s.trials << " successes=" << s.successes
                  << " verified=" << s.verified << " mean_delta=" << s.mean_delta << '\n';
      return 0;
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
