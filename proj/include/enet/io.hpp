#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "enet/linalg.hpp"
#include "enet/network.hpp"

namespace enet {

enum class NetworkFormat { EdgeList, Json };

/// ".json" selects Json, anything else EdgeList.
NetworkFormat format_for_path(const std::filesystem::path& path);

// Edge-list text: one "x y c" per line, whitespace separated, '#' starts a
// comment, and an optional "base <label>" line. Vertex labels are integers;
// dense ids follow ascending label order. Without a base line the base point
// is the smallest label.
Network parse_edge_list(std::string_view text);
std::string format_edge_list(const Network& net);

// JSON: {"base": <label>, "edges": [[x, y, c], ...]}.
Network parse_network_json(std::string_view text);
std::string format_network_json(const Network& net);

/// Throws IoError when the file cannot be read, ValidationError on malformed
/// content or axiom violations.
Network load_network(const std::filesystem::path& path, NetworkFormat format);
Network load_network(const std::filesystem::path& path);
void save_network(const Network& net, const std::filesystem::path& path, NetworkFormat format);

/// Pair file: {"base": <network json>, "upper": <network json>}.
std::pair<Network, Network> parse_pair_json(std::string_view text);
std::pair<Network, Network> load_pair(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Matrix Market "coordinate real symmetric" (lower triangle, 1-based).
void write_matrix_market(std::ostream& out, const SparseMatrix& matrix);
SparseMatrix read_matrix_market(std::istream& in);

/// Dense comma separated rows.
void write_dense_csv(std::ostream& out, const Matrix& matrix);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace enet
