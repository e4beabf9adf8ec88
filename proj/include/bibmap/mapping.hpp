#pragma once

#include <cstdint>
#include <vector>

#include "bibmap/network.hpp"

namespace bibmap {

/// Node coordinates in a p-dimensional map, stored row-major.
struct Layout {
    int node_count = 0;
    int dimension = 0;
    std::vector<double> coords; // node_count * dimension

    Layout() = default;
    Layout(int n, int p) : node_count(n), dimension(p), coords(static_cast<size_t>(n) * p, 0.0) {}

    double& at(int i, int k) { return coords[static_cast<size_t>(i) * dimension + k]; }
    double at(int i, int k) const { return coords[static_cast<size_t>(i) * dimension + k]; }

    double distance(int i, int j) const;
};

struct MappingConfig {
    int dimension = 2;
    int restarts = 10;
    std::uint64_t seed = 42;
    int max_iterations = 1000;
    double relative_tolerance = 1e-8;
};

struct MappingResult {
    Layout layout;
    double objective = 0.0;
};

/// V = sum_{i<j} s_ij d_ij^2 - sum_{i<j} d_ij.
double mapping_objective(const Network& net, const Layout& layout);

/// One majorization iteration: the attraction is kept quadratic (decoupled
/// per node so it touches the objective at `current`), the repulsion is
/// replaced by its linear Cauchy-Schwarz majorant. The returned layout is
/// the closed-form minimizer of that surrogate, so the objective never
/// increases.
Layout majorization_step(const Network& net, const Layout& current);

/// Best layout over seeded restarts, canonicalized. Throws
/// std::invalid_argument if the network is disconnected.
MappingResult compute_layout(const Network& net, const MappingConfig& config);

/// Centroid to origin, axes to principal components by descending
/// variance, signs fixed so the lowest-index node with a coordinate of
/// magnitude > 1e-9 on each axis is positive. Distances are preserved.
Layout canonicalize_layout(const Layout& layout);

} // namespace bibmap
