#pragma once

// Edge and label files.
//
// text:   one record per line, ASCII decimal "a b"; '#' starts a comment,
//         blank lines are ignored.
// binary: consecutive little-endian uint64 pairs, 16 bytes per record.
//
// Edge files list every undirected edge once; reading expands to arc pairs.
// Label files hold one "vertex label" record per vertex sorted by vertex.

#include <filesystem>
#include <string>
#include <vector>

#include "parcc/graph_model.hpp"
#include "parcc/team.hpp"

namespace parcc {

enum class FileFormat { kText, kBinary };

FileFormat parse_file_format(const std::string& name);

/// Each rank parses its byte block of the file, aligned to record boundaries.
/// Returns the local undirected edges in file order.
std::vector<Edge> read_undirected_edges(TeamContext& ctx, const std::filesystem::path& path,
                                        FileFormat format);

/// read_undirected_edges expanded to arc pairs and block-distributed.
EdgeList read_edges(TeamContext& ctx, const std::filesystem::path& path, FileFormat format);

/// Writes the concatenation of all ranks' shards, in rank order.
void write_edges(TeamContext& ctx, const std::vector<Edge>& undirected,
                 const std::filesystem::path& path, FileFormat format);

void write_labels(TeamContext& ctx, const ComponentLabeling& labeling,
                  const std::filesystem::path& path, FileFormat format);

/// Serial reader for label files.
std::vector<LabelEntry> read_labels(const std::filesystem::path& path, FileFormat format);

}  // namespace parcc
