#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "parcc/bfs.hpp"
#include "parcc/generators.hpp"
#include "parcc/graph_model.hpp"
#include "parcc/hybrid.hpp"
#include "parcc/io.hpp"
#include "parcc/powerlaw.hpp"
#include "parcc/sv.hpp"
#include "parcc/team.hpp"

namespace parcc::cli {

namespace {

struct RunConfig {
  int workers = 4;
  std::string input;
  std::string format = "text";
  double tau = kDefaultTau;
  std::string force = "dynamic";
  std::uint64_t seed = 1;
  std::string output;
  std::string variant = "balanced";
  bool compare = false;
  bool instrument = false;
  int diameter_trials = 0;
  bool dedup = false;
  bool no_permute = false;

  std::string kind;
  GeneratorSpec gen;
};

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void add_common(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--workers", cfg.workers, "Worker team size")->check(CLI::Range(1, 4096));
  cmd.add_option("--input", cfg.input, "Edge list file");
  cmd.add_option("--format", cfg.format, "File format")->check(CLI::IsMember({"text", "bin"}));
  cmd.add_option("--seed", cfg.seed, "Seed for generators, BFS seed and diameter sampling");
  cmd.add_flag("--dedup", cfg.dedup, "Drop repeated undirected edges after loading");
}

void add_generator(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--kind", cfg.kind, "Generate input instead of reading it")
      ->check(CLI::IsMember({"rmat", "grid", "path", "er", "forest", "chunglu"}));
  cmd.add_option("--scale", cfg.gen.scale, "rmat: log2 of the vertex count");
  cmd.add_option("--edge-factor", cfg.gen.edge_factor, "rmat, chunglu: edges per vertex");
  cmd.add_option("--width", cfg.gen.width, "grid width");
  cmd.add_option("--height", cfg.gen.height, "grid height");
  cmd.add_option("--n", cfg.gen.n, "path, er, chunglu: vertex count");
  cmd.add_option("--p", cfg.gen.p, "er: edge probability");
  cmd.add_option("--components", cfg.gen.components, "forest: number of trees");
  cmd.add_option("--component-size", cfg.gen.component_size, "forest: vertices per tree");
  cmd.add_option("--exponent", cfg.gen.exponent, "chunglu: degree exponent");
}

void add_pipeline(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--tau", cfg.tau, "K-S threshold below which the graph counts as scale-free")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--force", cfg.force, "BFS decision")
      ->check(CLI::IsMember({"dynamic", "always_bfs", "never_bfs"}));
  cmd.add_option("--variant", cfg.variant, "SV variant")
      ->check(CLI::IsMember({"naive", "exclude", "balanced"}));
  cmd.add_flag("--no-permute", cfg.no_permute, "Skip the vertex id permutation");
}

HybridOptions hybrid_options(const RunConfig& cfg) {
  HybridOptions opts;
  opts.tau = cfg.tau;
  opts.force = parse_force_mode(cfg.force);
  opts.rng_seed = cfg.seed;
  opts.permute = !cfg.no_permute;
  opts.sv.variant = parse_sv_variant(cfg.variant);
  return opts;
}

// Checked before the team starts so bad parameters are usage errors.
void check_source(RunConfig& cfg) {
  if (cfg.input.empty() == cfg.kind.empty()) {
    throw std::invalid_argument("give exactly one of --input or --kind");
  }
  if (!cfg.kind.empty()) {
    cfg.gen.kind = parse_graph_kind(cfg.kind);
    cfg.gen.seed = cfg.seed;
    validate(cfg.gen);
  }
}

EdgeList load(TeamContext& ctx, const RunConfig& cfg) {
  std::vector<Edge> undirected = cfg.kind.empty()
                                     ? read_undirected_edges(ctx, cfg.input, parse_file_format(cfg.format))
                                     : generate_undirected(ctx, cfg.gen);
  if (cfg.dedup) undirected = dedup_undirected(ctx, std::move(undirected));
  return to_arc_pairs(ctx, undirected);
}

int cmd_connect(const RunConfig& cfg, std::ostream& out) {
  const auto opts = hybrid_options(cfg);
  auto reports = run_team(cfg.workers, [&](TeamContext& ctx) {
    const auto edges = load(ctx, cfg);
    auto result = run_hybrid(ctx, edges, opts);
    if (!cfg.output.empty()) write_labels(ctx, result.labeling, cfg.output, parse_file_format(cfg.format));
    return result.report;
  });
  const auto& rep = reports.front();
  out << rep.to_key_values();
  if (cfg.instrument) out << '\n' << rep.to_table();
  return kOk;
}

struct Stats {
  EdgeDiagnostics diag;
  DegreeHistogram hist;
  PowerLawFit fit;
  std::optional<std::uint64_t> diameter;
};

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  auto all = run_team(cfg.workers, [&](TeamContext& ctx) {
    Stats s;
    const auto edges = load(ctx, cfg);
    s.diag = validate_edge_list(ctx, edges);
    s.hist = degree_histogram(ctx, edges);
    s.fit = fit_power_law(s.hist);
    if (cfg.diameter_trials > 0 && s.diag.arcs > 0) {
      auto [dense, map] = relabel_vertices(ctx, edges);
      const auto adj = build_adjacency(ctx, dense, map.n);
      s.diameter = approx_diameter(ctx, adj, cfg.diameter_trials, cfg.seed);
    }
    return s;
  });
  const auto& s = all.front();
  const bool scale_free = classify_scale_free(s.fit, cfg.tau);
  out << "vertices=" << s.diag.vertices << '\n'
      << "arcs=" << s.diag.arcs << '\n'
      << "self_loops=" << s.diag.self_loops << '\n'
      << "max_degree=" << s.diag.max_degree << '\n'
      << "min_degree=" << (s.hist.counts.empty() ? 0 : s.hist.counts.begin()->first) << '\n'
      << "mean_degree="
      << fixed(s.hist.vertex_total ? static_cast<double>(s.hist.degree_sum()) / static_cast<double>(s.hist.vertex_total) : 0.0)
      << '\n'
      << "distinct_degrees=" << s.hist.counts.size() << '\n';
  // Log-binned histogram: degree_bin.<lo>-<hi>=vertices.
  for (std::uint64_t lo = 1; lo <= s.hist.max_degree; lo *= 2) {
    const std::uint64_t hi = lo * 2 - 1;
    std::uint64_t c = 0;
    for (auto it = s.hist.counts.lower_bound(lo); it != s.hist.counts.end() && it->first <= hi; ++it) c += it->second;
    out << "degree_bin." << lo << '-' << hi << '=' << c << '\n';
  }
  out << "alpha=" << fixed(s.fit.alpha) << '\n'
      << "x_min=" << s.fit.x_min << '\n'
      << "tail_size=" << s.fit.tail_size << '\n'
      << "ks_stat=" << fixed(s.fit.ks_stat) << '\n'
      << "tau=" << fixed(cfg.tau) << '\n'
      << "scale_free=" << (scale_free ? "true" : "false") << '\n'
      << "decision=" << (scale_free ? "bfs" : "sv") << '\n';
  if (s.diameter) out << "diameter_estimate=" << *s.diameter << '\n';
  return kOk;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  auto counts = run_team(cfg.workers, [&](TeamContext& ctx) {
    auto undirected = generate_undirected(ctx, cfg.gen);
    if (cfg.dedup) undirected = dedup_undirected(ctx, std::move(undirected));
    write_edges(ctx, undirected, cfg.output, parse_file_format(cfg.format));
    return ctx.all_reduce<std::uint64_t>(undirected.size(), ops::plus<std::uint64_t>());
  });
  out << "kind=" << to_string(cfg.gen.kind) << '\n' << "edges=" << counts.front() << '\n';
  return kOk;
}

void print_trace(std::ostream& out, const char* variant, const SvTrace& trace, const StageReport& rep,
                 int workers) {
  out << "# variant=" << variant << " workers=" << workers << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %10s %12s %10s %12s %10s %10s %10s %10s %10s %10s\n",
                "iteration", "min", "mean", "max", "total", "partitions", "vertex_s", "part_s",
                "double_s", "exclude_s", "balance_s");
  out << line;
  auto row = [&](const IterationRecord& r, bool final_row) {
    std::snprintf(line, sizeof line,
                  "%-9s %10llu %12.2f %10llu %12llu %10llu %10.4f %10.4f %10.4f %10.4f %10.4f\n",
                  final_row ? "final" : std::to_string(r.iteration).c_str(),
                  static_cast<unsigned long long>(r.active_min), r.active_mean,
                  static_cast<unsigned long long>(r.active_max),
                  static_cast<unsigned long long>(r.active_total),
                  static_cast<unsigned long long>(r.partitions), r.vertex_pass_seconds,
                  r.partition_pass_seconds, r.pointer_double_seconds, r.exclude_seconds,
                  r.rebalance_seconds);
    out << line;
  };
  for (const auto& r : trace.iterations) row(r, false);
  row(trace.final_state, true);
  out << rep.to_table();
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> variants{cfg.variant};
  if (cfg.compare) variants = {"naive", "exclude", "balanced"};
  for (std::size_t i = 0; i < variants.size(); ++i) {
    RunConfig c = cfg;
    c.variant = variants[i];
    const auto opts = hybrid_options(c);
    auto results = run_team(c.workers, [&](TeamContext& ctx) {
      const auto edges = load(ctx, c);
      auto r = run_hybrid(ctx, edges, opts);
      r.labeling = {};
      return r;
    });
    if (i > 0) out << '\n';
    print_trace(out, variants[i].c_str(), results.front().sv_trace, results.front().report, c.workers);
    if (cfg.instrument) out << results.front().report.to_key_values();
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributed connected components with a scale-free shortcut"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* connect = app.add_subcommand("connect", "Label connected components");
  add_common(*connect, cfg);
  add_generator(*connect, cfg);
  add_pipeline(*connect, cfg);
  connect->add_option("--output", cfg.output, "Label file (vertex label per line)");
  connect->add_flag("--instrument", cfg.instrument, "Append a per-stage timing table");

  auto* stats = app.add_subcommand("stats", "Degree distribution, power-law fit, diameter estimate");
  add_common(*stats, cfg);
  add_generator(*stats, cfg);
  stats->add_option("--tau", cfg.tau, "K-S threshold")->check(CLI::Range(0.0, 1.0));
  stats->add_option("--diameter-trials", cfg.diameter_trials, "BFS runs for the diameter estimate")
      ->check(CLI::NonNegativeNumber);

  auto* generate = app.add_subcommand("generate", "Write a synthetic edge list");
  add_common(*generate, cfg);
  add_generator(*generate, cfg);
  generate->add_option("--output", cfg.output, "Edge list path")->required();

  auto* bench = app.add_subcommand("bench", "Per-iteration working-set trace and stage timings");
  add_common(*bench, cfg);
  add_generator(*bench, cfg);
  add_pipeline(*bench, cfg);
  bench->add_flag("--compare", cfg.compare, "Run naive, exclude and balanced in turn");
  bench->add_flag("--instrument", cfg.instrument, "Also print the stage report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) {
      if (cfg.kind.empty()) throw std::invalid_argument("generate needs --kind");
      cfg.input.clear();
    }
    check_source(cfg);
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) {
      throw std::invalid_argument("tau must lie strictly between 0 and 1");
    }
    if (*connect) return cmd_connect(cfg, out);
    if (*stats) return cmd_stats(cfg, out);
    if (*generate) return cmd_generate(cfg, out);
    return cmd_bench(cfg, out);
  } catch (const InputError& e) {
    err << "parcc: input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    err << "parcc: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "parcc: contract violation: " << e.what() << '\n';
    return kInternal;
  } catch (const ProtocolFault& e) {
    err << "parcc: protocol fault: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "parcc: internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace parcc::cli
