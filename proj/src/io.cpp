#include "parcc/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <optional>
#include <stdexcept>

namespace parcc {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRecordBytes = 16;

void put_le64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void put_text(std::string& out, std::uint64_t a, std::uint64_t b) {
  char buf[64];
  char* p = std::to_chars(buf, buf + 24, a).ptr;
  *p++ = ' ';
  p = std::to_chars(p, p + 24, b).ptr;
  *p++ = '\n';
  out.append(buf, p);
}

std::uint64_t file_size_or_throw(const fs::path& path) {
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) throw InputError("cannot open '" + path.string() + "': " + ec.message());
  return size;
}

std::string read_range(const fs::path& path, std::uint64_t begin, std::uint64_t end) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::string buf(end - begin, '\0');
  in.seekg(static_cast<std::streamoff>(begin));
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::uint64_t>(in.gcount()) != buf.size()) {
    throw InputError("short read from '" + path.string() + "' at offset " + std::to_string(begin));
  }
  return buf;
}

// Writes every rank's `bytes` at its exclusive-scan offset into one file.
void write_concatenated(TeamContext& ctx, const fs::path& path, const std::string& bytes) {
  const std::uint64_t size = bytes.size();
  const auto offset = ctx.exclusive_scan(size, ops::plus<std::uint64_t>());
  const auto total = ctx.all_reduce(size, ops::plus<std::uint64_t>());
  if (ctx.rank() == 0) {
    std::ofstream create(path, std::ios::binary | std::ios::trunc);
    if (!create) throw InputError("cannot create '" + path.string() + "'");
    create.close();
    std::error_code ec;
    fs::resize_file(path, total, ec);
    if (ec) throw InputError("cannot resize '" + path.string() + "': " + ec.message());
  }
  ctx.barrier();
  if (!bytes.empty()) {
    std::fstream out(path, std::ios::binary | std::ios::in | std::ios::out);
    out.seekp(static_cast<std::streamoff>(offset));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw InputError("write to '" + path.string() + "' failed");
  }
  ctx.barrier();
}

struct ParseError {
  std::uint64_t local_line = 0;
  std::string message;
};

// Parses "a b" with optional comment; returns nullopt for blank lines.
std::optional<Edge> parse_line(std::string_view line, std::string& error) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  auto skip_ws = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    return i;
  };
  std::size_t i = skip_ws(0);
  if (i == line.size()) return std::nullopt;
  std::uint64_t v[2];
  for (int f = 0; f < 2; ++f) {
    i = skip_ws(i);
    const auto* first = line.data() + i;
    const auto* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, v[f]);
    if (ec != std::errc{} || ptr == first) {
      error = f == 0 ? "expected source vertex id" : "expected destination vertex id";
      return std::nullopt;
    }
    i = static_cast<std::size_t>(ptr - line.data());
    if (f == 0 && (i == line.size() || (line[i] != ' ' && line[i] != '\t'))) {
      error = "expected whitespace after source vertex id";
      return std::nullopt;
    }
  }
  if (skip_ws(i) != line.size()) {
    error = "unexpected trailing characters";
    return std::nullopt;
  }
  return Edge{v[0], v[1]};
}

std::vector<Edge> read_text(TeamContext& ctx, const fs::path& path) {
  const std::uint64_t size = file_size_or_throw(path);
  const std::uint64_t begin = block_begin(size, ctx.size(), ctx.rank());
  const std::uint64_t end = block_begin(size, ctx.size(), ctx.rank() + 1);

  // A rank owns the lines that start inside [begin, end).
  std::string buf;
  std::uint64_t read_from = begin > 0 ? begin - 1 : 0;
  std::uint64_t read_to = std::min(size, end + 4096);
  buf = read_range(path, read_from, read_to);
  while (true) {
    const std::size_t need = static_cast<std::size_t>(end - read_from);
    if (need == 0 || buf.find('\n', need - 1) != std::string::npos || read_to == size) break;
    const std::uint64_t more = std::min(size, read_to + (read_to - read_from));
    buf += read_range(path, read_to, more);
    read_to = more;
  }

  std::size_t pos = 0;
  if (begin > 0) {
    if (buf[0] == '\n') {
      pos = 1;
    } else {
      auto nl = buf.find('\n', 1);
      pos = nl == std::string::npos ? buf.size() : nl + 1;
    }
  }
  const std::size_t owned_end = static_cast<std::size_t>(end - read_from);

  std::vector<Edge> edges;
  std::optional<ParseError> failure;
  std::uint64_t lines = 0;
  while (pos < owned_end && pos < buf.size()) {
    auto nl = buf.find('\n', pos);
    const std::size_t stop = nl == std::string::npos ? buf.size() : nl;
    std::string error;
    auto edge = parse_line(std::string_view(buf).substr(pos, stop - pos), error);
    if (edge) {
      edges.push_back(*edge);
    } else if (!error.empty() && !failure) {
      failure = ParseError{lines, std::move(error)};
    }
    ++lines;
    pos = stop + 1;
  }

  const auto first_line = ctx.exclusive_scan(lines, ops::plus<std::uint64_t>());
  if (failure) {
    throw InputError(path.string() + ":" + std::to_string(first_line + failure->local_line + 1) +
                     ": " + failure->message);
  }
  return edges;
}

std::vector<Edge> read_binary(TeamContext& ctx, const fs::path& path) {
  const std::uint64_t size = file_size_or_throw(path);
  if (size % kRecordBytes != 0) {
    throw InputError("truncated binary edge file '" + path.string() + "': " +
                     std::to_string(size % kRecordBytes) + " trailing bytes at offset " +
                     std::to_string(size - size % kRecordBytes));
  }
  const std::uint64_t records = size / kRecordBytes;
  const std::uint64_t first = block_begin(records, ctx.size(), ctx.rank());
  const std::uint64_t last = block_begin(records, ctx.size(), ctx.rank() + 1);
  const std::string buf = read_range(path, first * kRecordBytes, last * kRecordBytes);
  std::vector<Edge> edges;
  edges.reserve(last - first);
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  for (std::uint64_t i = 0; i < last - first; ++i, p += kRecordBytes) {
    edges.push_back({get_le64(p), get_le64(p + 8)});
  }
  return edges;
}

}  // namespace

FileFormat parse_file_format(const std::string& name) {
  if (name == "text") return FileFormat::kText;
  if (name == "bin" || name == "binary") return FileFormat::kBinary;
  throw std::invalid_argument("unknown file format '" + name + "' (expected text or bin)");
}

std::vector<Edge> read_undirected_edges(TeamContext& ctx, const fs::path& path, FileFormat format) {
  return format == FileFormat::kText ? read_text(ctx, path) : read_binary(ctx, path);
}

EdgeList read_edges(TeamContext& ctx, const fs::path& path, FileFormat format) {
  return to_arc_pairs(ctx, read_undirected_edges(ctx, path, format));
}

void write_edges(TeamContext& ctx, const std::vector<Edge>& undirected, const fs::path& path,
                 FileFormat format) {
  std::string bytes;
  bytes.reserve(undirected.size() * (format == FileFormat::kText ? 16 : kRecordBytes));
  for (const auto& e : undirected) {
    if (format == FileFormat::kText) {
      put_text(bytes, e.src, e.dst);
    } else {
      put_le64(bytes, e.src);
      put_le64(bytes, e.dst);
    }
  }
  write_concatenated(ctx, path, bytes);
}

void write_labels(TeamContext& ctx, const ComponentLabeling& labeling, const fs::path& path,
                  FileFormat format) {
  std::string bytes;
  for (const auto& e : labeling.entries) {
    if (format == FileFormat::kText) {
      put_text(bytes, e.vertex, e.label);
    } else {
      put_le64(bytes, e.vertex);
      put_le64(bytes, e.label);
    }
  }
  write_concatenated(ctx, path, bytes);
}

std::vector<LabelEntry> read_labels(const fs::path& path, FileFormat format) {
  std::vector<LabelEntry> out;
  auto edges = run_team(1, [&](TeamContext& ctx) { return read_undirected_edges(ctx, path, format); });
  for (const auto& e : edges.front()) out.push_back({e.src, e.dst});
  return out;
}

}  // namespace parcc
