#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rumorsim/graph.hpp"

namespace rumorsim {

struct EdgeListLoad {
  Graph graph;
  /// original_ids[i] is the id node i carried in the file.
  std::vector<std::int64_t> original_ids;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges = 0;
};

/// Reads whitespace-separated "u v" pairs (SNAP style). Blank lines and lines
/// starting with '#' are skipped. Ids are remapped to 0..n-1 in first-seen
/// order; duplicates (either orientation) collapse; self-loops are dropped
/// and counted. Throws ParseError naming the offending line.
EdgeListLoad load_edge_list(std::istream& in);
EdgeListLoad load_edge_list(const std::filesystem::path& path);

/// One "u v" line per edge (u < v), preceded by a '#' header comment.
void write_edge_list(std::ostream& out, const Graph& g);

enum class GraphFormat { GraphML, Dot };

/// "graphml" or "dot" (case-insensitive); anything else is a ParameterError.
GraphFormat parse_graph_format(std::string_view name);

/// Writes a GraphML or DOT document; node labels come from Graph::labels().
void export_graph(std::ostream& out, const Graph& g, GraphFormat format);
std::string export_graph(const Graph& g, GraphFormat format);

/// Reads documents in the subset written by export_graph. Node order follows
/// declaration order.
Graph import_graph(std::istream& in, GraphFormat format);
Graph import_graph(std::string_view document, GraphFormat format);

/// Dispatches on extension: .graphml, .dot/.gv, anything else is an edge list.
Graph load_graph_file(const std::filesystem::path& path);

}  // namespace rumorsim
