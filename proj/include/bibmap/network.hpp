#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bibmap {

/// One line of a weighted edge list, prior to label interning.
struct EdgeRecord {
    std::string source;
    std::string target;
    double weight = 1.0;
};

/// Undirected weighted graph with cached node strengths and total link
/// weight. Immutable after construction; safe for concurrent reads.
class Network {
public:
    /// Builds a network from edge records. Duplicate pairs are summed,
    /// labels are interned in first-appearance order, zero-weight edges
    /// are dropped after aggregation. Throws std::invalid_argument on
    /// self-links, negative or non-finite weights, and isolated nodes.
    /// If `dropped_isolated` is non-null, isolated nodes are removed and
    /// their labels reported there instead of being an error.
    static Network from_edges(const std::vector<EdgeRecord>& edges,
                              std::vector<std::string>* dropped_isolated = nullptr);

    int node_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// c_ij; 0 when no link is stored.
    double link_weight(int i, int j) const;

    /// c_i, the total link weight of node i.
    double strength(int i) const { return strengths_[i]; }

    /// m, half the sum of all strengths.
    double total() const { return total_; }

    /// Neighbors of i with positive link weight, sorted by index.
    const std::vector<std::pair<int, double>>& neighbors(int i) const { return adjacency_[i]; }

    /// s_ij = 2m c_ij / (c_i c_j). Throws on i == j.
    double association_strength(int i, int j) const;

private:
    Network() = default;

    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<double> strengths_;
    double total_ = 0.0;
};

/// The 31-node two-communities-plus-bridge-node benchmark network.
Network generate_appendix_b();

/// `clique_count` unit-weight cliques of `clique_size` nodes arranged in a
/// ring, adjacent cliques joined by one unit-weight bridge link.
Network generate_ring_of_cliques(int clique_count, int clique_size);

/// Connected components over positive-weight links, numbered by smallest
/// member index. Each inner vector is sorted ascending.
std::vector<std::vector<int>> connected_components(const Network& net);

} // namespace bibmap
