#include "bibmap/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

namespace bibmap {

Network Network::from_edges(const std::vector<EdgeRecord>& edges,
                            std::vector<std::string>* dropped_isolated) {
    if (edges.empty()) {
        throw std::invalid_argument("edge list is empty");
    }

    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index_of;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index_of.try_emplace(label, static_cast<int>(labels.size()));
        if (inserted) {
            labels.push_back(label);
        }
        return it->second;
    };

    std::map<std::pair<int, int>, double> weights;
    for (const auto& edge : edges) {
        if (!std::isfinite(edge.weight) || edge.weight < 0.0) {
            throw std::invalid_argument(fmt::format(
                "edge {} -- {} has invalid weight {}", edge.source, edge.target, edge.weight));
        }
        int i = intern(edge.source);
        int j = intern(edge.target);
        if (i == j) {
            throw std::invalid_argument(fmt::format("self-link on node \"{}\"", edge.source));
        }
        if (i > j) {
            std::swap(i, j);
        }
        weights[{i, j}] += edge.weight;
    }

    int n = static_cast<int>(labels.size());
    std::vector<double> strengths(n, 0.0);
    for (const auto& [pair, w] : weights) {
        strengths[pair.first] += w;
        strengths[pair.second] += w;
    }

    std::vector<int> remap(n, -1);
    if (dropped_isolated) {
        dropped_isolated->clear();
        std::vector<std::string> kept;
        for (int i = 0; i < n; ++i) {
            if (strengths[i] > 0.0) {
                remap[i] = static_cast<int>(kept.size());
                kept.push_back(labels[i]);
            } else {
                dropped_isolated->push_back(labels[i]);
            }
        }
        if (kept.empty()) {
            throw std::invalid_argument("all nodes are isolated after dropping zero-weight links");
        }
        labels = std::move(kept);
    } else {
        std::string isolated;
        for (int i = 0; i < n; ++i) {
            if (strengths[i] <= 0.0) {
                if (!isolated.empty()) {
                    isolated += ", ";
                }
                isolated += labels[i];
            }
            remap[i] = i;
        }
        if (!isolated.empty()) {
            throw std::invalid_argument("isolated nodes (zero total link weight): " + isolated);
        }
    }

    Network net;
    net.labels_ = std::move(labels);
    int kept_n = net.node_count();
    net.adjacency_.resize(kept_n);
    net.strengths_.assign(kept_n, 0.0);
    for (const auto& [pair, w] : weights) {
        if (w <= 0.0) {
            continue;
        }
        int i = remap[pair.first];
        int j = remap[pair.second];
        net.adjacency_[i].emplace_back(j, w);
        net.adjacency_[j].emplace_back(i, w);
        net.strengths_[i] += w;
        net.strengths_[j] += w;
    }
    for (auto& nbrs : net.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
    }
    double strength_sum = 0.0;
    for (double s : net.strengths_) {
        strength_sum += s;
    }
    net.total_ = strength_sum / 2.0;
    return net;
}

double Network::link_weight(int i, int j) const {
    const auto& nbrs = adjacency_[i];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j,
                               [](const auto& entry, int node) { return entry.first < node; });
    if (it != nbrs.end() && it->first == j) {
        return it->second;
    }
    return 0.0;
}

double Network::association_strength(int i, int j) const {
    if (i == j) {
        throw std::invalid_argument("association strength is undefined for a node with itself");
    }
    double c = link_weight(i, j);
    if (c == 0.0) {
        return 0.0;
    }
    return 2.0 * total_ * c / (strengths_[i] * strengths_[j]);
}

Network generate_appendix_b() {
    std::vector<EdgeRecord> edges;
    auto label = [](int i) { return std::to_string(i); };
    auto add_clique = [&](int lo, int hi, double w) {
        for (int i = lo; i <= hi; ++i) {
            for (int j = i + 1; j <= hi; ++j) {
                edges.push_back({label(i), label(j), w});
            }
        }
    };
    add_clique(1, 10, 10.0);
    add_clique(11, 20, 100.0);
    add_clique(21, 30, 100.0);
    for (int i = 1; i <= 10; ++i) {
        edges.push_back({label(i), label(31), 20.0});
    }
    for (int i = 11; i <= 20; ++i) {
        edges.push_back({label(i), label(31), 50.0});
    }
    return Network::from_edges(edges);
}

Network generate_ring_of_cliques(int clique_count, int clique_size) {
    if (clique_count < 3 || clique_size < 3) {
        throw std::invalid_argument(
            fmt::format("ring of cliques requires clique_count >= 3 and clique_size >= 3, got "
                        "({}, {})",
                        clique_count, clique_size));
    }
    std::vector<EdgeRecord> edges;
    auto label = [&](int k, int j) { return fmt::format("clique{}:node{}", k + 1, j + 1); };
    for (int k = 0; k < clique_count; ++k) {
        for (int a = 0; a < clique_size; ++a) {
            for (int b = a + 1; b < clique_size; ++b) {
                edges.push_back({label(k, a), label(k, b), 1.0});
            }
        }
    }
    // One bridge between the last node of clique k and the first node of
    // the next clique around the ring.
    for (int k = 0; k < clique_count; ++k) {
        int next = (k + 1) % clique_count;
        edges.push_back({label(k, clique_size - 1), label(next, 0), 1.0});
    }
    return Network::from_edges(edges);
}

std::vector<std::vector<int>> connected_components(const Network& net) {
    int n = net.node_count();
    std::vector<int> component(n, -1);
    std::vector<std::vector<int>> components;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (component[start] >= 0) {
            continue;
        }
        int id = static_cast<int>(components.size());
        components.emplace_back();
        stack.push_back(start);
        component[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            components[id].push_back(v);
            for (const auto& [u, w] : net.neighbors(v)) {
                if (component[u] < 0) {
                    component[u] = id;
                    stack.push_back(u);
                }
            }
        }
        std::sort(components[id].begin(), components[id].end());
    }
    return components;
}

} // namespace bibmap
