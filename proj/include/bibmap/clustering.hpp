#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bibmap/network.hpp"

namespace bibmap {

/// Thrown when a request is well-formed but beyond what the tool can
/// compute (e.g. exhaustive enumeration past the node bound).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Weighting {
    unified, // w_ij = 2m / (c_i c_j)
    classic, // w_ij = 1
};

std::string to_string(Weighting w);
Weighting weighting_from_string(const std::string& s);

/// Cluster labels in canonical form: cluster k first appears before
/// cluster k+1 when scanning nodes in index order.
struct Partition {
    std::vector<int> assignment;
    int cluster_count = 0;

    static Partition from_assignment(std::vector<int> raw);
};

struct ClusterParams {
    double gamma = 1.0;
    Weighting weighting = Weighting::unified;
    int restarts = 10;
    std::uint64_t seed = 42;
};

/// (1/2m) sum_{i<j} delta(x_i,x_j) w_ij (c_ij - gamma c_i c_j / 2m),
/// over unordered pairs with no diagonal terms.
double clustering_quality(const Network& net, const Partition& part, const ClusterParams& params);

/// The clustering-side value of the unified objective:
/// (1/gamma) sum_{i<j} (1 - delta(x_i,x_j)) ((1/gamma) 2m c_ij/(c_i c_j) - 1).
double clustering_cost(const Network& net, const Partition& part, double gamma);

struct ClusterResult {
    Partition partition;
    double quality = 0.0;
};

/// Top-down divisive optimization with local moving, best of seeded
/// restarts. Deterministic given (network, params).
ClusterResult optimize_clustering(const Network& net, const ClusterParams& params);

/// Single-node moves to the neighboring or empty cluster with the largest
/// strictly positive gain, scanning nodes in index order until a full scan
/// makes no move.
Partition local_move_refinement(const Network& net, const Partition& part,
                                const ClusterParams& params);

/// Exact optimum by enumerating every set partition (restricted-growth
/// strings). Throws InfeasibleError for n > 12. Ties broken by the
/// lexicographically smallest canonical assignment.
ClusterResult exhaustive_best_partition(const Network& net, const ClusterParams& params);

struct SweepEntry {
    double gamma = 0.0;
    Partition partition;
    double quality = 0.0;
};

/// optimize_clustering per gamma with the same seed, results in input order.
std::vector<SweepEntry> gamma_sweep(const Network& net, const std::vector<double>& gammas,
                                    const ClusterParams& params);

} // namespace bibmap
