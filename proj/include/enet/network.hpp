#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enet {

/// Dense vertex index in 0..n-1.
using VertexId = std::size_t;

/// Vertex label as it appears in input files (may be negative, e.g. for
/// two-sided chains).
using Label = std::int64_t;

/// Undirected edge with conductance. Stored canonically with x < y.
struct Edge {
    VertexId x;
    VertexId y;
    double c;
};

struct Neighbor {
    VertexId vertex;
    double c;
    std::size_t edge;
};

enum class ViolationKind {
    Empty,
    InvalidVertex,
    InvalidBasePoint,
    SelfLoop,
    DuplicateEdge,
    NonpositiveConductance,
    IsolatedVertex,
    Disconnected,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Finite conductance network (V, E, c) with a distinguished base point o.
///
/// Instances are immutable. `build` enforces the network axioms (positive
/// symmetric conductance, no self-loops, no isolated vertices, connected);
/// `unchecked` skips them so that `validate_network` can report on arbitrary
/// input. Every numerical operation in the library assumes a built network.
class Network {
public:
    Network() = default;

    static Network build(std::size_t n_vertices, std::vector<Edge> edges, VertexId base_point = 0,
                         std::vector<Label> labels = {});

    static Network unchecked(std::size_t n_vertices, std::vector<Edge> edges, VertexId base_point = 0,
                             std::vector<Label> labels = {});

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_.at(i); }
    VertexId base_point() const noexcept { return base_; }

    bool contains(VertexId v) const noexcept { return v < n_; }
    Label label(VertexId v) const { return labels_.at(v); }
    std::span<const Label> labels() const noexcept { return labels_; }
    std::optional<VertexId> index_of(Label label) const;

    std::span<const Neighbor> neighbors(VertexId v) const;

    /// c(x): sum of the conductances incident to x. Throws on invalid x.
    double total_conductance(VertexId x) const;

    /// Conductance of the edge {x, y}, or 0 when x and y are not adjacent.
    double conductance(VertexId x, VertexId y) const;

    // Coordinates on V' = V \ {o}: reduced index r maps to vertex r, shifted
    // past the base point.
    std::size_t reduced_size() const noexcept { return n_ == 0 ? 0 : n_ - 1; }
    std::size_t reduced_index(VertexId v) const;
    VertexId vertex_at(std::size_t reduced) const noexcept { return reduced < base_ ? reduced : reduced + 1; }

    /// Same topology and base point with a new conductance per edge (indexed
    /// like `edges()`). The result is validated.
    Network with_conductances(std::span<const double> conductances) const;

    /// Same network with every conductance multiplied by `factor` > 0.
    Network scaled(double factor) const;

private:
    Network(std::size_t n, std::vector<Edge> edges, VertexId base, std::vector<Label> labels);

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    VertexId base_ = 0;
    std::vector<Label> labels_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adjacency_;
    std::vector<double> total_;
};

/// Checks the network axioms. An empty result means the network is valid.
std::vector<Violation> validate_network(const Network& net);

double total_conductance(const Network& net, VertexId x);

struct Transition {
    VertexId y;
    double p;
};

/// Row x of the Markov operator P: p_xy = c_xy / c(x).
std::vector<Transition> transition_weights(const Network& net, VertexId x);

struct ChainProfile {
    enum class Kind { Unit, Geometric, Linear, TwoSidedGeometric };

    Kind kind = Kind::Unit;
    double ratio = 1.0;  // A, for the geometric profiles

    static ChainProfile unit() { return {Kind::Unit, 1.0}; }
    static ChainProfile geometric(double a) { return {Kind::Geometric, a}; }
    static ChainProfile linear() { return {Kind::Linear, 1.0}; }
    static ChainProfile two_sided_geometric(double a) { return {Kind::TwoSidedGeometric, a}; }

    /// Parses "unit", "linear", "geometric:A" or "two_sided_geometric:A".
    static ChainProfile parse(std::string_view text);

    std::string to_string() const;

    /// Conductance of the edge (k, k+1) in the profile's own labeling.
    double conductance(std::int64_t k) const;
};

/// Nearest-neighbour path graph on n vertices.
///
/// unit: c = 1. geometric(A): c_{k,k+1} = A^k. linear: c_{k,k+1} = k + 1.
/// two_sided_geometric(A): labels -floor(n/2) .. ceil(n/2)-1 with
/// c_{k,k+1} = A^max(|k|,|k+1|). The base point is the vertex labelled 0.
Network generate_chain(std::size_t n, const ChainProfile& profile);

/// Seeded random connected network: a random spanning tree plus each
/// remaining pair with probability `extra_edge_probability`; conductances
/// uniform in [c_min, c_max]. Base point 0.
Network random_connected(std::size_t n, double extra_edge_probability, std::uint64_t seed, double c_min = 0.5,
                         double c_max = 2.0);

}  // namespace enet
