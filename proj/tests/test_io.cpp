#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "parcc/io.hpp"
#include "parcc/union_find.hpp"
#include "support.hpp"

using namespace parcc;
using namespace parcc::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("parcc-io-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<Edge> read_all(const fs::path& p, FileFormat f, int rho) {
  return concat(run_team(rho, [&](TeamContext& ctx) { return read_undirected_edges(ctx, p, f); }));
}

}  // namespace

TEST_SUITE("graph_io_gen") {

TEST_CASE("text edge reads expand to arc pairs") {
  TempDir dir;
  write_file(dir / "one.txt", "0 1\n");
  auto arcs = concat(run_team(2, [&](TeamContext& ctx) { return read_edges(ctx, dir / "one.txt", FileFormat::kText).arcs; }));
  std::sort(arcs.begin(), arcs.end());
  CHECK(arcs == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("comments, blank lines, tabs, CRLF and a missing final newline") {
  TempDir dir;
  write_file(dir / "g.txt", "# header\n\n1 2\r\n3\t4  # trailing\n   \n18446744073709551615 0");
  for (int rho : {1, 2, 3, 5, 8}) {
    CHECK(read_all(dir / "g.txt", FileFormat::kText, rho) ==
          std::vector<Edge>{{1, 2}, {3, 4}, {~VertexId{0}, 0}});
  }
}

TEST_CASE("malformed lines report the global line number") {
  TempDir dir;
  std::string text;
  for (int i = 0; i < 500; ++i) text += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  text += "7 x\n";
  for (int i = 0; i < 500; ++i) text += "1 2\n";
  write_file(dir / "bad.txt", text);
  for (int rho : {1, 2, 4, 7}) {
    CHECK_THROWS_WITH_AS(read_all(dir / "bad.txt", FileFormat::kText, rho),
                         doctest::Contains("bad.txt:501: expected destination vertex id"), InputError);
  }
  write_file(dir / "bad2.txt", "1 2 3\n");
  CHECK_THROWS_WITH_AS(read_all(dir / "bad2.txt", FileFormat::kText, 2), doctest::Contains(":1: unexpected"),
                       InputError);
  write_file(dir / "bad3.txt", "1 2\n-4 5\n");
  CHECK_THROWS_WITH_AS(read_all(dir / "bad3.txt", FileFormat::kText, 1), doctest::Contains(":2:"), InputError);
  CHECK_THROWS_AS(read_all(dir / "missing.txt", FileFormat::kText, 2), InputError);
}

TEST_CASE("binary round trip and truncation") {
  TempDir dir;
  const std::vector<Edge> edges{{0, 1}, {~VertexId{0}, 7}, {1ULL << 40, 3}};
  for (int rho : {1, 2, 4}) {
    run_team(rho, [&](TeamContext& ctx) { write_edges(ctx, block_of(ctx, edges), dir / "g.bin", FileFormat::kBinary); });
    CHECK(fs::file_size(dir / "g.bin") == 48);
    CHECK(read_all(dir / "g.bin", FileFormat::kBinary, 3) == edges);
  }
  // Little-endian layout.
  const auto bytes = slurp(dir / "g.bin");
  CHECK(bytes[0] == 0);
  CHECK(bytes[8] == 1);
  CHECK(static_cast<unsigned char>(bytes[16]) == 0xff);

  write_file(dir / "t.bin", bytes.substr(0, 40));
  CHECK_THROWS_WITH_AS(read_all(dir / "t.bin", FileFormat::kBinary, 2),
                       doctest::Contains("8 trailing bytes at offset 32"), InputError);
}

TEST_CASE("large text file: shard union equals serial parse") {
  TempDir dir;
  std::mt19937_64 rng(5);
  std::vector<Edge> edges(1000000);
  for (auto& e : edges) e = {rng() % 100000000, rng()};
  run_team(4, [&](TeamContext& ctx) { write_edges(ctx, block_of(ctx, edges), dir / "big.txt", FileFormat::kText); });
  CHECK(read_all(dir / "big.txt", FileFormat::kText, 1) == edges);
  CHECK(read_all(dir / "big.txt", FileFormat::kText, 4) == edges);
}

TEST_CASE("label files are deterministic across team sizes") {
  TempDir dir;
  // Edge {7,3}: both vertices labeled 3.
  const auto labeling = union_find_oracle(arc_pairs({{7, 3}}));
  run_team(2, [&](TeamContext& ctx) {
    ComponentLabeling mine{block_of(ctx, labeling.entries), labeling.component_count};
    write_labels(ctx, mine, dir / "l.txt", FileFormat::kText);
  });
  CHECK(slurp(dir / "l.txt") == "3 3\n7 3\n");

  const auto big = union_find_oracle(generated_arcs(er_spec(3000, 1.0, 2)));
  std::vector<std::string> texts, bins;
  for (int rho : {1, 2, 4}) {
    run_team(rho, [&](TeamContext& ctx) {
      ComponentLabeling mine{block_of(ctx, big.entries), big.component_count};
      write_labels(ctx, mine, dir / "b.txt", FileFormat::kText);
      write_labels(ctx, mine, dir / "b.bin", FileFormat::kBinary);
    });
    texts.push_back(slurp(dir / "b.txt"));
    bins.push_back(slurp(dir / "b.bin"));
  }
  CHECK(texts[0] == texts[1]);
  CHECK(texts[0] == texts[2]);
  CHECK(bins[0] == bins[2]);
  CHECK(read_labels(dir / "b.txt", FileFormat::kText) == big.entries);
  CHECK(read_labels(dir / "b.bin", FileFormat::kBinary) == big.entries);
}

TEST_CASE("empty file and unwritable output") {
  TempDir dir;
  write_file(dir / "empty.txt", "");
  CHECK(read_all(dir / "empty.txt", FileFormat::kText, 3).empty());
  CHECK_THROWS_AS(run_team(2,
                           [&](TeamContext& ctx) {
                             write_edges(ctx, {}, dir / "no-such-dir" / "x.txt", FileFormat::kText);
                           }),
                  InputError);
  CHECK(parse_file_format("bin") == FileFormat::kBinary);
  CHECK_THROWS_AS(parse_file_format("csv"), std::invalid_argument);
}

}
