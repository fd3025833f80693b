// Times the team SV against the sequential reference and union-find on a few
// generated graphs. Usage: parcc_bench [workers] [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "parcc/generators.hpp"
#include "parcc/sv.hpp"
#include "parcc/team.hpp"
#include "parcc/union_find.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int workers = argc > 1 ? std::atoi(argv[1]) : 4;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  struct Case {
    const char* name;
    parcc::GeneratorSpec spec;
  };
  std::vector<Case> cases;
  {
    parcc::GeneratorSpec s;
    s.kind = parcc::GraphKind::kRmat;
    s.scale = 14;
    s.edge_factor = 8;
    cases.push_back({"rmat-14-8", s});
  }
  {
    parcc::GeneratorSpec s;
    s.kind = parcc::GraphKind::kGrid;
    s.width = s.height = 256;
    cases.push_back({"grid-256", s});
  }
  {
    parcc::GeneratorSpec s;
    s.kind = parcc::GraphKind::kForest;
    s.components = 20000;
    s.component_size = 4;
    cases.push_back({"forest-20000x4", s});
  }

  std::printf("%-16s %10s %12s %12s %12s %8s\n", "graph", "arcs", "team_sv_s", "serial_sv_s",
              "union_find_s", "iters");
  for (const auto& c : cases) {
    auto shards = parcc::run_team(1, [&](parcc::TeamContext& ctx) { return parcc::generate(ctx, c.spec).arcs; });
    const auto& arcs = shards.front();

    std::uint64_t iterations = 0;
    const double team = best_of(repeats, [&] {
      parcc::run_team(workers, [&](parcc::TeamContext& ctx) {
        parcc::EdgeList local;
        const auto lo = parcc::block_begin(arcs.size(), ctx.size(), ctx.rank());
        const auto hi = parcc::block_begin(arcs.size(), ctx.size(), ctx.rank() + 1);
        local.arcs.assign(arcs.begin() + static_cast<std::ptrdiff_t>(lo), arcs.begin() + static_cast<std::ptrdiff_t>(hi));
        local.global_arc_count = arcs.size();
        const auto r = parcc::run_sv(ctx, local);
        if (ctx.rank() == 0) iterations = r.iterations;
      });
    });
    const double serial = best_of(repeats, [&] { parcc::reference::serial_sv(arcs); });
    const double uf = best_of(repeats, [&] { parcc::union_find_oracle(arcs); });
    std::printf("%-16s %10zu %12.4f %12.4f %12.4f %8llu\n", c.name, arcs.size(), team, serial, uf,
                static_cast<unsigned long long>(iterations));
  }
  return 0;
}
