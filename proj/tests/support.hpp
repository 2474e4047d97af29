#pragma once

#include <vector>

#include "enet/energy.hpp"
#include "enet/network.hpp"
#include "enet/random.hpp"

namespace enet::testing {

inline Network unit_path3() { return generate_chain(3, ChainProfile::unit()); }

inline Network triangle() { return Network::build(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}, 0); }

inline Network single_edge(double c = 1.0) { return Network::build(2, {{0, 1, c}}, 0); }

// Weighted 4-vertex graph with a cycle; oracle values for it were computed
// in 50-digit arithmetic.
inline Network weighted4() {
    return Network::build(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 0.5}, {0, 2, 3.0}, {1, 3, 1.5}}, 0);
}

// weighted4() with conductances scaled by 1 on (0,1), 1.5 on (1,2), 2 on
// (2,3), 1.25 on (0,2) and 3 on (1,3).
inline Network weighted4_upper() {
    return Network::build(4, {{0, 1, 1.0}, {1, 2, 3.0}, {2, 3, 1.0}, {0, 2, 3.75}, {1, 3, 4.5}}, 0);
}

inline EnergyVector from_values(const Network& net, std::vector<double> v) {
    return EnergyVector::gauge_fixed(net, Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
}

inline EnergyVector random_energy(const Network& net, Rng& rng) {
    Vector v(static_cast<Eigen::Index>(net.num_vertices()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = rng.normal();
    }
    return EnergyVector::gauge_fixed(net, std::move(v));
}

// Same topology, each conductance multiplied by a factor in [1, 3].
inline Network random_upper(const Network& net, Rng& rng) {
    std::vector<double> c;
    for (const auto& e : net.edges()) {
        c.push_back(e.c * rng.uniform(1.0, 3.0));
    }
    return net.with_conductances(c);
}

}  // namespace enet::testing
