#include "enet/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "enet/error.hpp"
#include "enet/random.hpp"

namespace enet {

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Empty: return "empty";
        case ViolationKind::InvalidVertex: return "invalid-vertex";
        case ViolationKind::InvalidBasePoint: return "invalid-base-point";
        case ViolationKind::SelfLoop: return "self-loop";
        case ViolationKind::DuplicateEdge: return "duplicate-edge";
        case ViolationKind::NonpositiveConductance: return "nonpositive-conductance";
        case ViolationKind::IsolatedVertex: return "isolated-vertex";
        case ViolationKind::Disconnected: return "disconnected";
    }
    return "unknown";
}

Network::Network(std::size_t n, std::vector<Edge> edges, VertexId base, std::vector<Label> labels)
    : n_(n), edges_(std::move(edges)), base_(base), labels_(std::move(labels)) {
    for (auto& e : edges_) {
        if (e.x > e.y) {
            std::swap(e.x, e.y);
        }
    }
    std::stable_sort(edges_.begin(), edges_.end(),
                     [](const Edge& a, const Edge& b) { return std::pair(a.x, a.y) < std::pair(b.x, b.y); });
    if (labels_.empty()) {
        labels_.resize(n_);
        std::iota(labels_.begin(), labels_.end(), Label{0});
    }

    std::vector<std::size_t> degree(n_, 0);
    for (const auto& e : edges_) {
        if (e.x < n_ && e.y < n_) {
            ++degree[e.x];
            if (e.y != e.x) {
                ++degree[e.y];
            }
        }
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) {
        offsets_[v + 1] = offsets_[v] + degree[v];
    }
    adjacency_.resize(offsets_[n_]);
    total_.assign(n_, 0.0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.x >= n_ || e.y >= n_) {
            continue;
        }
        adjacency_[fill[e.x]++] = {e.y, e.c, i};
        total_[e.x] += e.c;
        if (e.y != e.x) {
            adjacency_[fill[e.y]++] = {e.x, e.c, i};
            total_[e.y] += e.c;
        }
    }
}

Network Network::unchecked(std::size_t n_vertices, std::vector<Edge> edges, VertexId base_point,
                           std::vector<Label> labels) {
    if (!labels.empty() && labels.size() != n_vertices) {
        throw ValidationError("label table size does not match vertex count");
    }
    return Network(n_vertices, std::move(edges), base_point, std::move(labels));
}

Network Network::build(std::size_t n_vertices, std::vector<Edge> edges, VertexId base_point,
                       std::vector<Label> labels) {
    Network net = unchecked(n_vertices, std::move(edges), base_point, std::move(labels));
    const auto violations = validate_network(net);
    if (!violations.empty()) {
        std::string msg = "invalid network:";
        for (const auto& v : violations) {
            msg += "\n  ";
            msg += v.message;
        }
        throw ValidationError(msg);
    }
    return net;
}

std::optional<VertexId> Network::index_of(Label label) const {
    // Labels are sorted for every network produced by the loaders and
    // generators, but not necessarily for hand-built ones.
    if (std::is_sorted(labels_.begin(), labels_.end())) {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it != labels_.end() && *it == label) {
            return static_cast<VertexId>(it - labels_.begin());
        }
        return std::nullopt;
    }
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<VertexId>(it - labels_.begin());
}

std::span<const Neighbor> Network::neighbors(VertexId v) const {
    if (v >= n_) {
        throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    }
    return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

double Network::total_conductance(VertexId x) const {
    if (x >= n_) {
        throw PreconditionError("vertex " + std::to_string(x) + " out of range");
    }
    return total_[x];
}

double Network::conductance(VertexId x, VertexId y) const {
    for (const auto& nb : neighbors(x)) {
        if (nb.vertex == y) {
            return nb.c;
        }
    }
    return 0.0;
}

std::size_t Network::reduced_index(VertexId v) const {
    if (v >= n_ || v == base_) {
        throw PreconditionError("vertex " + std::to_string(v) + " has no coordinate on V' (base point or out of range)");
    }
    return v < base_ ? v : v - 1;
}

Network Network::with_conductances(std::span<const double> conductances) const {
    if (conductances.size() != edges_.size()) {
        throw PreconditionError("conductance count does not match edge count");
    }
    std::vector<Edge> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i].c = conductances[i];
    }
    return build(n_, std::move(edges), base_, labels_);
}

Network Network::scaled(double factor) const {
    if (!(factor > 0.0)) {
        throw PreconditionError("scale factor must be positive");
    }
    std::vector<double> c(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        c[i] = edges_[i].c * factor;
    }
    return with_conductances(c);
}

std::vector<Violation> validate_network(const Network& net) {
    std::vector<Violation> out;
    const std::size_t n = net.num_vertices();
    if (n == 0) {
        out.push_back({ViolationKind::Empty, "network has no vertices"});
        return out;
    }
    if (net.base_point() >= n) {
        out.push_back({ViolationKind::InvalidBasePoint,
                       "base point " + std::to_string(net.base_point()) + " is not a vertex"});
    }

    auto describe = [&](const Edge& e) {
        std::ostringstream s;
        s << "(" << (e.x < n ? std::to_string(net.label(e.x)) : std::to_string(e.x)) << ", "
          << (e.y < n ? std::to_string(net.label(e.y)) : std::to_string(e.y)) << ", " << e.c << ")";
        return s.str();
    };

    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& e : net.edges()) {
        if (e.x >= n || e.y >= n) {
            out.push_back({ViolationKind::InvalidVertex, "edge " + describe(e) + " references a missing vertex"});
            continue;
        }
        if (e.x == e.y) {
            out.push_back({ViolationKind::SelfLoop, "self-loop at edge " + describe(e)});
        }
        if (!(e.c > 0.0) || !std::isfinite(e.c)) {
            out.push_back({ViolationKind::NonpositiveConductance, "nonpositive conductance at edge " + describe(e)});
        }
        if (!seen.insert({e.x, e.y}).second) {
            out.push_back({ViolationKind::DuplicateEdge, "duplicate edge " + describe(e)});
        }
    }

    for (VertexId v = 0; v < n; ++v) {
        bool has_neighbor = false;
        for (const auto& nb : net.neighbors(v)) {
            if (nb.vertex != v) {
                has_neighbor = true;
                break;
            }
        }
        if (!has_neighbor && n > 1) {
            out.push_back({ViolationKind::IsolatedVertex, "vertex " + std::to_string(net.label(v)) + " has no edges"});
        }
    }
    if (n == 1) {
        out.push_back({ViolationKind::IsolatedVertex, "single vertex network has no edges"});
    }

    // Connectivity by BFS from vertex 0.
    std::vector<char> visited(n, 0);
    std::vector<VertexId> queue{0};
    visited[0] = 1;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& nb : net.neighbors(queue[head])) {
            if (!visited[nb.vertex]) {
                visited[nb.vertex] = 1;
                ++reached;
                queue.push_back(nb.vertex);
            }
        }
    }
    if (reached != n) {
        out.push_back({ViolationKind::Disconnected, "network is disconnected: " + std::to_string(reached) + " of " +
                                                         std::to_string(n) + " vertices reachable from vertex " +
                                                         std::to_string(net.label(0))});
    }
    return out;
}

double total_conductance(const Network& net, VertexId x) { return net.total_conductance(x); }

std::vector<Transition> transition_weights(const Network& net, VertexId x) {
    const double cx = net.total_conductance(x);
    std::vector<Transition> out;
    for (const auto& nb : net.neighbors(x)) {
        out.push_back({nb.vertex, nb.c / cx});
    }
    std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) { return a.y < b.y; });
    return out;
}

namespace {

double parse_ratio(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw PreconditionError("invalid profile ratio '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

ChainProfile ChainProfile::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    if (name == "unit" && colon == std::string_view::npos) {
        return unit();
    }
    if (name == "linear" && colon == std::string_view::npos) {
        return linear();
    }
    if (colon != std::string_view::npos) {
        const double a = parse_ratio(text.substr(colon + 1));
        if (name == "geometric") {
            return geometric(a);
        }
        if (name == "two_sided_geometric") {
            return two_sided_geometric(a);
        }
    }
    throw PreconditionError("unknown chain profile '" + std::string(text) + "'");
}

std::string ChainProfile::to_string() const {
    std::ostringstream s;
    switch (kind) {
        case Kind::Unit: return "unit";
        case Kind::Linear: return "linear";
        case Kind::Geometric: s << "geometric:" << ratio; break;
        case Kind::TwoSidedGeometric: s << "two_sided_geometric:" << ratio; break;
    }
    return s.str();
}

double ChainProfile::conductance(std::int64_t k) const {
    switch (kind) {
        case Kind::Unit: return 1.0;
        case Kind::Linear: return static_cast<double>(k + 1);
        case Kind::Geometric: return std::pow(ratio, static_cast<double>(k));
        case Kind::TwoSidedGeometric: {
            const auto e = std::max(std::abs(k), std::abs(k + 1));
            return std::pow(ratio, static_cast<double>(e));
        }
    }
    return 1.0;
}

Network generate_chain(std::size_t n, const ChainProfile& profile) {
    if (n < 2) {
        throw PreconditionError("chain needs at least 2 vertices");
    }
    const bool geometric =
        profile.kind == ChainProfile::Kind::Geometric || profile.kind == ChainProfile::Kind::TwoSidedGeometric;
    if (geometric && !(profile.ratio > 1.0)) {
        throw PreconditionError("geometric profile needs A > 1");
    }

    const std::int64_t first =
        profile.kind == ChainProfile::Kind::TwoSidedGeometric ? -static_cast<std::int64_t>(n / 2) : 0;
    std::vector<Label> labels(n);
    std::iota(labels.begin(), labels.end(), first);

    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1, profile.conductance(labels[i])});
    }
    const auto base = static_cast<VertexId>(-first);
    return Network::build(n, std::move(edges), base, std::move(labels));
}

Network random_connected(std::size_t n, double extra_edge_probability, std::uint64_t seed, double c_min,
                         double c_max) {
    if (n < 2) {
        throw PreconditionError("random network needs at least 2 vertices");
    }
    Rng rng(seed);
    std::set<std::pair<VertexId, VertexId>> present;
    std::vector<Edge> edges;
    for (VertexId v = 1; v < n; ++v) {
        const auto u = static_cast<VertexId>(rng.index(v));
        present.insert({u, v});
        edges.push_back({u, v, rng.uniform(c_min, c_max)});
    }
    for (VertexId x = 0; x < n; ++x) {
        for (VertexId y = x + 1; y < n; ++y) {
            if (present.contains({x, y})) {
                continue;
            }
            if (rng.uniform() < extra_edge_probability) {
                edges.push_back({x, y, rng.uniform(c_min, c_max)});
            }
        }
    }
    return Network::build(n, std::move(edges), 0);
}

}  // namespace enet
