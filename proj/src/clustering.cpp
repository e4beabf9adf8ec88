#include "bibmap/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include <fmt/format.h>

namespace bibmap {

std::string to_string(Weighting w) {
    return w == Weighting::unified ? "unified" : "classic";
}

Weighting weighting_from_string(const std::string& s) {
    if (s == "unified") {
        return Weighting::unified;
    }
    if (s == "classic") {
        return Weighting::classic;
    }
    throw std::invalid_argument(fmt::format("unknown weighting \"{}\" (expected unified|classic)", s));
}

Partition Partition::from_assignment(std::vector<int> raw) {
    std::vector<int> relabel(raw.size(), -1);
    int next = 0;
    for (int& label : raw) {
        if (label < 0 || label >= static_cast<int>(relabel.size())) {
            throw std::invalid_argument("cluster label out of range");
        }
        if (relabel[label] < 0) {
            relabel[label] = next++;
        }
        label = relabel[label];
    }
    Partition part;
    part.assignment = std::move(raw);
    part.cluster_count = next;
    return part;
}

namespace {

void check_params(const ClusterParams& params) {
    if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) {
        throw std::invalid_argument(
            fmt::format("resolution parameter must satisfy gamma > 0, got {}", params.gamma));
    }
    if (params.restarts < 1) {
        throw std::invalid_argument("restarts must be >= 1");
    }
}

void check_assignment(const Network& net, const Partition& part) {
    if (static_cast<int>(part.assignment.size()) != net.node_count()) {
        throw std::invalid_argument(fmt::format("partition has {} labels, network has {} nodes",
                                                part.assignment.size(), net.node_count()));
    }
}

// Incremental state for single-node moves under either weighting. Labels
// are free-form in [0, n); canonicalization happens on extraction.
class MoveState {
public:
    MoveState(const Network& net, const ClusterParams& params, std::vector<int> assignment)
        : net_(net),
          gamma_(params.gamma),
          unified_(params.weighting == Weighting::unified),
          two_m_(2.0 * net.total()),
          assignment_(std::move(assignment)),
          cluster_size_(net.node_count(), 0),
          cluster_strength_(net.node_count(), 0.0),
          link_sum_(net.node_count(), 0.0) {
        for (int v = 0; v < net_.node_count(); ++v) {
            int k = assignment_[v];
            cluster_size_[k] += 1;
            cluster_strength_[k] += net_.strength(v);
        }
    }

    const std::vector<int>& assignment() const { return assignment_; }
    int label_of(int v) const { return assignment_[v]; }
    int cluster_size(int k) const { return cluster_size_[k]; }

    void set_label(int v, int to) {
        int from = assignment_[v];
        if (from == to) {
            return;
        }
        cluster_size_[from] -= 1;
        cluster_strength_[from] -= net_.strength(v);
        cluster_size_[to] += 1;
        cluster_strength_[to] += net_.strength(v);
        assignment_[v] = to;
    }

    int first_empty_label() const {
        for (int k = 0; k < static_cast<int>(cluster_size_.size()); ++k) {
            if (cluster_size_[k] == 0) {
                return k;
            }
        }
        return -1; // unreachable: n labels for <= n nonempty clusters
    }

    // Quality change from detaching v into a singleton.
    double removal_gain(int v, double link_to_own) const {
        int k = assignment_[v];
        if (unified_) {
            return (gamma_ * (cluster_size_[k] - 1) - link_to_own) / two_m_;
        }
        double others = cluster_strength_[k] - net_.strength(v);
        return (gamma_ * net_.strength(v) * others / two_m_ - link_to_own) / two_m_;
    }

    // Quality change from attaching a detached v to cluster k.
    double addition_gain(int v, int k, double link_to_k) const {
        if (unified_) {
            return (link_to_k - gamma_ * cluster_size_[k]) / two_m_;
        }
        return (link_to_k - gamma_ * net_.strength(v) * cluster_strength_[k] / two_m_) / two_m_;
    }

    // Weighted link sums from v into each touched cluster; pair-weighted
    // for the active weighting (s_vj unified, c_vj classic).
    void collect_link_sums(int v) {
        for (int k : touched_) {
            link_sum_[k] = 0.0;
        }
        touched_.clear();
        for (const auto& [j, w] : net_.neighbors(v)) {
            int k = assignment_[j];
            if (link_sum_[k] == 0.0) {
                touched_.push_back(k);
            }
            link_sum_[k] += unified_ ? net_.association_strength(v, j) : w;
        }
        std::sort(touched_.begin(), touched_.end());
    }

    // One best-gain move for v. `allowed` restricts target labels (and
    // disables the empty-cluster target) when non-null. Returns true if
    // v moved.
    bool try_move(int v, const std::vector<int>* allowed) {
        int from = assignment_[v];
        collect_link_sums(v);
        double detach = removal_gain(v, link_sum_[from]);

        int best_target = -1;
        double best_gain = 1e-12;
        auto consider = [&](int k, double gain) {
            if (gain > best_gain) {
                best_gain = gain;
                best_target = k;
            }
        };
        for (int k : touched_) {
            if (k == from) {
                continue;
            }
            if (allowed && std::find(allowed->begin(), allowed->end(), k) == allowed->end()) {
                continue;
            }
            consider(k, detach + addition_gain(v, k, link_sum_[k]));
        }
        if (!allowed && cluster_size_[from] > 1) {
            consider(first_empty_label(), detach);
        }
        if (best_target < 0) {
            return false;
        }
        set_label(v, best_target);
        return true;
    }

    // Scans `nodes` in order until a full scan makes no move.
    bool local_moving(const std::vector<int>& nodes, const std::vector<int>* allowed) {
        bool any = false;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int v : nodes) {
                if (try_move(v, allowed)) {
                    moved = true;
                    any = true;
                }
            }
        }
        return any;
    }

private:
    const Network& net_;
    double gamma_;
    bool unified_;
    double two_m_;
    std::vector<int> assignment_;
    std::vector<int> cluster_size_;
    std::vector<double> cluster_strength_;
    std::vector<double> link_sum_; // scratch, zeroed via touched_
    std::vector<int> touched_;
};

// Quality contribution of all pairs within `members` under the given
// labels. Only these pairs change across a split attempt.
double member_pair_quality(const Network& net, const ClusterParams& params,
                           const std::vector<int>& members, const std::vector<int>& labels) {
    double two_m = 2.0 * net.total();
    double sum = 0.0;
    for (size_t a = 0; a < members.size(); ++a) {
        for (size_t b = a + 1; b < members.size(); ++b) {
            int i = members[a];
            int j = members[b];
            if (labels[i] != labels[j]) {
                continue;
            }
            double cij = net.link_weight(i, j);
            double ci = net.strength(i);
            double cj = net.strength(j);
            double w = params.weighting == Weighting::unified ? two_m / (ci * cj) : 1.0;
            sum += w * (cij - params.gamma * ci * cj / two_m);
        }
    }
    return sum / two_m;
}

// Seeded bisection of one cluster: two random representatives, greedy
// assignment of the remaining members, local moving restricted to the
// pair. Accepted only on a strict global quality improvement.
bool try_split(const Network& net, const ClusterParams& params, MoveState& state, int label,
               std::mt19937_64& rng) {
    std::vector<int> members;
    for (int v = 0; v < net.node_count(); ++v) {
        if (state.label_of(v) == label) {
            members.push_back(v);
        }
    }
    if (members.size() < 2) {
        return false;
    }
    size_t pick_a = rng() % members.size();
    size_t pick_b = rng() % (members.size() - 1);
    if (pick_b >= pick_a) {
        ++pick_b;
    }
    int rep_a = members[pick_a];
    int rep_b = members[pick_b];

    double before = member_pair_quality(net, params, members, state.assignment());

    int fresh = state.first_empty_label();
    std::vector<int> saved;
    saved.reserve(members.size());
    for (int v : members) {
        saved.push_back(state.label_of(v));
    }

    // Detach everything but the representatives, then add each member to
    // the side with the larger attachment gain.
    bool unified = params.weighting == Weighting::unified;
    double side_a_size = 1.0, side_b_size = 1.0;
    double side_a_strength = net.strength(rep_a), side_b_strength = net.strength(rep_b);
    std::vector<int> side(net.node_count(), 0); // 0 undecided, 1 side a, 2 side b
    side[rep_a] = 1;
    side[rep_b] = 2;
    double two_m = 2.0 * net.total();
    for (int v : members) {
        if (v == rep_a || v == rep_b) {
            continue;
        }
        double link_a = 0.0, link_b = 0.0;
        for (const auto& [j, w] : net.neighbors(v)) {
            double pairw = unified ? net.association_strength(v, j) : w;
            if (side[j] == 1) {
                link_a += pairw;
            } else if (side[j] == 2) {
                link_b += pairw;
            }
        }
        double gain_a, gain_b;
        if (unified) {
            gain_a = link_a - params.gamma * side_a_size;
            gain_b = link_b - params.gamma * side_b_size;
        } else {
            gain_a = link_a - params.gamma * net.strength(v) * side_a_strength / two_m;
            gain_b = link_b - params.gamma * net.strength(v) * side_b_strength / two_m;
        }
        if (gain_b > gain_a) {
            side[v] = 2;
            side_b_size += 1.0;
            side_b_strength += net.strength(v);
        } else {
            side[v] = 1;
            side_a_size += 1.0;
            side_a_strength += net.strength(v);
        }
    }
    for (int v : members) {
        state.set_label(v, side[v] == 2 ? fresh : label);
    }

    std::vector<int> allowed = {label, fresh};
    std::vector<int> scan = members;
    std::shuffle(scan.begin(), scan.end(), rng);
    state.local_moving(scan, &allowed);

    double after = member_pair_quality(net, params, members, state.assignment());
    if (after > before + 1e-12) {
        return true;
    }
    for (size_t idx = 0; idx < members.size(); ++idx) {
        state.set_label(members[idx], saved[idx]);
    }
    return false;
}

// Greedy pairwise cluster merges: repeatedly apply the best positive-delta
// merge. Complements single-node moving, which cannot join two multi-node
// clusters when no intermediate move improves.
bool merge_pass(const Network& net, const ClusterParams& params, MoveState& state) {
    bool unified = params.weighting == Weighting::unified;
    double two_m = 2.0 * net.total();
    bool any = false;
    while (true) {
        int n = net.node_count();
        std::vector<int> labels;
        std::vector<int> dense(n, -1);
        for (int v = 0; v < n; ++v) {
            int k = state.label_of(v);
            if (dense[k] < 0) {
                dense[k] = static_cast<int>(labels.size());
                labels.push_back(k);
            }
        }
        int count = static_cast<int>(labels.size());
        if (count < 2) {
            return any;
        }
        std::vector<double> between(static_cast<size_t>(count) * count, 0.0);
        std::vector<double> size(count, 0.0), strength(count, 0.0);
        for (int v = 0; v < n; ++v) {
            int a = dense[state.label_of(v)];
            size[a] += 1.0;
            strength[a] += net.strength(v);
            for (const auto& [j, w] : net.neighbors(v)) {
                int b = dense[state.label_of(j)];
                if (b != a) {
                    between[static_cast<size_t>(a) * count + b] +=
                        unified ? net.association_strength(v, j) : w;
                }
            }
        }
        int best_a = -1, best_b = -1;
        double best_delta = 1e-12;
        for (int a = 0; a < count; ++a) {
            for (int b = a + 1; b < count; ++b) {
                // between[a][b] already holds each cross pair exactly once
                double links = between[static_cast<size_t>(a) * count + b];
                double delta = unified ? links - params.gamma * size[a] * size[b]
                                       : links - params.gamma * strength[a] * strength[b] / two_m;
                if (delta > best_delta) {
                    best_delta = delta;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) {
            return any;
        }
        for (int v = 0; v < n; ++v) {
            if (state.label_of(v) == labels[best_b]) {
                state.set_label(v, labels[best_a]);
            }
        }
        any = true;
    }
}

ClusterResult run_restart(const Network& net, const ClusterParams& params, std::uint64_t seed) {
    int n = net.node_count();
    std::mt19937_64 rng(seed);
    // Rotate the starting point across restarts: top-down (all nodes
    // together, split-driven), bottom-up (singletons, merge-driven), and
    // random labels.
    std::vector<int> initial(n, 0);
    if (seed % 3 == 1) {
        for (int v = 0; v < n; ++v) {
            initial[v] = v;
        }
    } else if (seed % 3 == 2) {
        for (int v = 0; v < n; ++v) {
            initial[v] = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        }
    }
    MoveState state(net, params, initial);

    std::vector<int> all_nodes(n);
    for (int v = 0; v < n; ++v) {
        all_nodes[v] = v;
    }

    const int max_passes = 1000;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        // Labels present at the start of the pass, in canonical order.
        std::vector<int> labels;
        std::vector<bool> seen(n, false);
        for (int v = 0; v < n; ++v) {
            int k = state.label_of(v);
            if (!seen[k]) {
                seen[k] = true;
                labels.push_back(k);
            }
        }
        for (int k : labels) {
            if (state.cluster_size(k) >= 2 && try_split(net, params, state, k, rng)) {
                changed = true;
            }
        }
        if (merge_pass(net, params, state)) {
            changed = true;
        }
        std::shuffle(all_nodes.begin(), all_nodes.end(), rng);
        if (state.local_moving(all_nodes, nullptr)) {
            changed = true;
        }
        if (!changed) {
            break;
        }
    }

    ClusterResult result;
    result.partition = Partition::from_assignment(state.assignment());
    result.quality = clustering_quality(net, result.partition, params);
    return result;
}

} // namespace

double clustering_quality(const Network& net, const Partition& part, const ClusterParams& params) {
    check_assignment(net, part);
    int n = net.node_count();
    double two_m = 2.0 * net.total();
    bool unified = params.weighting == Weighting::unified;

    // Link term over stored pairs plus the expected-weight term via
    // per-cluster aggregates; identical to the literal pair sum.
    double link_term = 0.0;
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : net.neighbors(i)) {
            if (j <= i || part.assignment[i] != part.assignment[j]) {
                continue;
            }
            link_term += unified ? net.association_strength(i, j) : w;
        }
    }
    double penalty = 0.0;
    if (unified) {
        std::vector<double> sizes(part.cluster_count, 0.0);
        for (int v = 0; v < n; ++v) {
            sizes[part.assignment[v]] += 1.0;
        }
        for (double size : sizes) {
            penalty += size * (size - 1.0) / 2.0;
        }
        penalty *= params.gamma;
    } else {
        std::vector<double> strength_sum(part.cluster_count, 0.0);
        std::vector<double> strength_sq(part.cluster_count, 0.0);
        for (int v = 0; v < n; ++v) {
            double c = net.strength(v);
            strength_sum[part.assignment[v]] += c;
            strength_sq[part.assignment[v]] += c * c;
        }
        for (int k = 0; k < part.cluster_count; ++k) {
            penalty += (strength_sum[k] * strength_sum[k] - strength_sq[k]) / 2.0;
        }
        penalty *= params.gamma / two_m;
    }
    return (link_term - penalty) / two_m;
}

double clustering_cost(const Network& net, const Partition& part, double gamma) {
    check_assignment(net, part);
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be > 0");
    }
    int n = net.node_count();
    // Non-link cross-cluster pairs each contribute -1/gamma; link pairs
    // add their association-strength term.
    long long same_pairs = 0;
    std::vector<long long> sizes(part.cluster_count, 0);
    for (int v = 0; v < n; ++v) {
        sizes[part.assignment[v]] += 1;
    }
    for (long long size : sizes) {
        same_pairs += size * (size - 1) / 2;
    }
    long long cross_pairs = static_cast<long long>(n) * (n - 1) / 2 - same_pairs;

    double link_term = 0.0;
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : net.neighbors(i)) {
            if (j <= i || part.assignment[i] == part.assignment[j]) {
                continue;
            }
            link_term += net.association_strength(i, j) / gamma;
        }
    }
    return (link_term - static_cast<double>(cross_pairs)) / gamma;
}

Partition local_move_refinement(const Network& net, const Partition& part,
                                const ClusterParams& params) {
    check_assignment(net, part);
    check_params(params);
    MoveState state(net, params, part.assignment);
    std::vector<int> all_nodes(net.node_count());
    for (int v = 0; v < net.node_count(); ++v) {
        all_nodes[v] = v;
    }
    state.local_moving(all_nodes, nullptr);
    return Partition::from_assignment(state.assignment());
}

ClusterResult optimize_clustering(const Network& net, const ClusterParams& params) {
    check_params(params);
    std::vector<std::future<ClusterResult>> runs;
    runs.reserve(params.restarts);
    for (int r = 0; r < params.restarts; ++r) {
        runs.push_back(std::async(std::launch::async, run_restart, std::cref(net),
                                  std::cref(params), params.seed + static_cast<std::uint64_t>(r)));
    }
    ClusterResult best;
    bool have_best = false;
    for (auto& run : runs) {
        ClusterResult result = run.get();
        if (!have_best || result.quality > best.quality + 1e-12) {
            best = std::move(result);
            have_best = true;
        }
    }
    return best;
}

ClusterResult exhaustive_best_partition(const Network& net, const ClusterParams& params) {
    check_params(params);
    int n = net.node_count();
    if (n > 12) {
        throw InfeasibleError(fmt::format(
            "exhaustive enumeration is limited to n <= 12 nodes (got n = {})", n));
    }

    // Pairwise quality contributions; the quality of a partition is the
    // sum over same-cluster pairs.
    double two_m = 2.0 * net.total();
    std::vector<double> pair_value(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double ci = net.strength(i);
            double cj = net.strength(j);
            double w = params.weighting == Weighting::unified ? two_m / (ci * cj) : 1.0;
            double value = w * (net.link_weight(i, j) - params.gamma * ci * cj / two_m) / two_m;
            pair_value[static_cast<size_t>(i) * n + j] = value;
        }
    }

    // Depth-first over restricted-growth strings; generated in
    // lexicographic order, so the first strict maximum is the canonical
    // tie-break winner.
    std::vector<int> labels(n, 0);
    std::vector<int> best(n, 0);
    double best_quality = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> members(n);

    auto recurse = [&](auto&& self, int node, int max_label, double quality) -> void {
        if (node == n) {
            if (quality > best_quality) {
                best_quality = quality;
                best = labels;
            }
            return;
        }
        for (int k = 0; k <= std::min(max_label + 1, n - 1); ++k) {
            double delta = 0.0;
            for (int j : members[k]) {
                delta += pair_value[static_cast<size_t>(j) * n + node];
            }
            labels[node] = k;
            members[k].push_back(node);
            self(self, node + 1, std::max(max_label, k), quality + delta);
            members[k].pop_back();
        }
    };
    recurse(recurse, 0, -1, 0.0);

    ClusterResult result;
    result.partition = Partition::from_assignment(best);
    result.quality = clustering_quality(net, result.partition, params);
    return result;
}

std::vector<SweepEntry> gamma_sweep(const Network& net, const std::vector<double>& gammas,
                                    const ClusterParams& params) {
    if (gammas.empty()) {
        throw std::invalid_argument("gamma sweep requires at least one gamma value");
    }
    std::vector<SweepEntry> entries;
    entries.reserve(gammas.size());
    for (double gamma : gammas) {
        ClusterParams per = params;
        per.gamma = gamma;
        check_params(per);
        ClusterResult result = optimize_clustering(net, per);
        entries.push_back({gamma, std::move(result.partition), result.quality});
    }
    return entries;
}

} // namespace bibmap
