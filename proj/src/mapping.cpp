#include "bibmap/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace bibmap {

double Layout::distance(int i, int j) const {
    double sum = 0.0;
    for (int k = 0; k < dimension; ++k) {
        double diff = at(i, k) - at(j, k);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double mapping_objective(const Network& net, const Layout& layout) {
    int n = net.node_count();
    if (layout.node_count != n) {
        throw std::invalid_argument(fmt::format("layout has {} nodes, network has {}",
                                                layout.node_count, n));
    }
    double attraction = 0.0;
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, w] : net.neighbors(i)) {
            if (j <= i) {
                continue;
            }
            double d = layout.distance(i, j);
            attraction += net.association_strength(i, j) * d * d;
        }
    }
    double repulsion = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            repulsion += layout.distance(i, j);
        }
    }
    return attraction - repulsion;
}

Layout majorization_step(const Network& net, const Layout& current) {
    int n = net.node_count();
    int p = current.dimension;

    // Linear majorant of the repulsion: for each node the summed unit
    // directions toward it from every other node at the current iterate.
    // Coincident pairs contribute nothing this step.
    std::vector<double> pull(static_cast<size_t>(n) * p, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = current.distance(i, j);
            if (d <= 0.0) {
                continue;
            }
            for (int k = 0; k < p; ++k) {
                double u = (current.at(i, k) - current.at(j, k)) / d;
                pull[static_cast<size_t>(i) * p + k] += u;
                pull[static_cast<size_t>(j) * p + k] -= u;
            }
        }
    }

    // The quadratic attraction sum s_ij |x_i - x_j|^2 is bounded by the
    // decoupled surrogate sum s_ij (2|x_i - h_ij|^2 + 2|x_j - h_ij|^2)
    // with h_ij the pair midpoint at the current iterate; equality holds
    // at the iterate itself, so minimizing the surrogate never increases
    // the objective. Each node's minimizer is closed-form and reads only
    // the previous iterate.
    Layout next(n, p);
    for (int i = 0; i < n; ++i) {
        double weight_sum = 0.0;
        std::vector<double> numerator(p, 0.0);
        for (const auto& [j, w] : net.neighbors(i)) {
            double s = net.association_strength(i, j);
            weight_sum += s;
            for (int k = 0; k < p; ++k) {
                numerator[k] += 2.0 * s * (current.at(i, k) + current.at(j, k));
            }
        }
        for (int k = 0; k < p; ++k) {
            next.at(i, k) = (numerator[k] + pull[static_cast<size_t>(i) * p + k]) /
                            (4.0 * weight_sum);
        }
    }
    return next;
}

namespace {

Layout random_layout(int n, int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    Layout layout(n, p);
    for (double& c : layout.coords) {
        c = jitter(rng);
    }
    return layout;
}

MappingResult run_single(const Network& net, const MappingConfig& config, std::uint64_t seed) {
    Layout layout = random_layout(net.node_count(), config.dimension, seed);
    double objective = mapping_objective(net, layout);
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        layout = majorization_step(net, layout);
        double next = mapping_objective(net, layout);
        if (std::abs(objective - next) < config.relative_tolerance * (1.0 + std::abs(objective))) {
            objective = next;
            break;
        }
        objective = next;
    }
    return {std::move(layout), objective};
}

// Cyclic Jacobi eigendecomposition of a small symmetric matrix (row-major
// p x p). Returns eigenvalues; eigenvectors end up in the columns of `vec`.
std::vector<double> symmetric_eigen(std::vector<double> mat, int p, std::vector<double>& vec) {
    vec.assign(static_cast<size_t>(p) * p, 0.0);
    for (int i = 0; i < p; ++i) {
        vec[static_cast<size_t>(i) * p + i] = 1.0;
    }
    auto a = [&](int r, int c) -> double& { return mat[static_cast<size_t>(r) * p + c]; };
    auto v = [&](int r, int c) -> double& { return vec[static_cast<size_t>(r) * p + c]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int r = 0; r < p; ++r) {
            for (int c = r + 1; c < p; ++c) {
                off += a(r, c) * a(r, c);
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (int r = 0; r < p; ++r) {
            for (int c = r + 1; c < p; ++c) {
                if (std::abs(a(r, c)) < 1e-300) {
                    continue;
                }
                double theta = (a(c, c) - a(r, r)) / (2.0 * a(r, c));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cs = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * cs;
                for (int k = 0; k < p; ++k) {
                    double ark = a(r, k), ack = a(c, k);
                    a(r, k) = cs * ark - sn * ack;
                    a(c, k) = sn * ark + cs * ack;
                }
                for (int k = 0; k < p; ++k) {
                    double akr = a(k, r), akc = a(k, c);
                    a(k, r) = cs * akr - sn * akc;
                    a(k, c) = sn * akr + cs * akc;
                }
                for (int k = 0; k < p; ++k) {
                    double vkr = v(k, r), vkc = v(k, c);
                    v(k, r) = cs * vkr - sn * vkc;
                    v(k, c) = sn * vkr + cs * vkc;
                }
            }
        }
    }
    std::vector<double> eigenvalues(p);
    for (int i = 0; i < p; ++i) {
        eigenvalues[i] = a(i, i);
    }
    return eigenvalues;
}

} // namespace

Layout canonicalize_layout(const Layout& layout) {
    int n = layout.node_count;
    int p = layout.dimension;
    Layout centered = layout;
    for (int k = 0; k < p; ++k) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            mean += centered.at(i, k);
        }
        mean /= n;
        for (int i = 0; i < n; ++i) {
            centered.at(i, k) -= mean;
        }
    }

    std::vector<double> covariance(static_cast<size_t>(p) * p, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                covariance[static_cast<size_t>(a) * p + b] += centered.at(i, a) * centered.at(i, b);
            }
        }
    }
    std::vector<double> vectors;
    std::vector<double> values = symmetric_eigen(covariance, p, vectors);

    std::vector<int> order(p);
    for (int k = 0; k < p; ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] > values[b]; });

    Layout rotated(n, p);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < p; ++k) {
            int axis = order[k];
            double value = 0.0;
            for (int a = 0; a < p; ++a) {
                value += centered.at(i, a) * vectors[static_cast<size_t>(a) * p + axis];
            }
            rotated.at(i, k) = value;
        }
    }

    for (int k = 0; k < p; ++k) {
        for (int i = 0; i < n; ++i) {
            double value = rotated.at(i, k);
            if (std::abs(value) > 1e-9) {
                if (value < 0.0) {
                    for (int j = 0; j < n; ++j) {
                        rotated.at(j, k) = -rotated.at(j, k);
                    }
                }
                break;
            }
        }
    }
    return rotated;
}

MappingResult compute_layout(const Network& net, const MappingConfig& config) {
    if (config.dimension < 1 || config.restarts < 1 || config.max_iterations < 1 ||
        config.relative_tolerance <= 0.0) {
        throw std::invalid_argument("invalid mapping configuration");
    }
    auto components = connected_components(net);
    if (components.size() > 1) {
        throw std::invalid_argument(fmt::format(
            "network has {} connected components; mapping requires a connected network "
            "(the repulsion term separates components without bound)",
            components.size()));
    }

    std::vector<std::future<MappingResult>> runs;
    runs.reserve(config.restarts);
    for (int r = 0; r < config.restarts; ++r) {
        runs.push_back(std::async(std::launch::async, run_single, std::cref(net),
                                  std::cref(config), config.seed + static_cast<std::uint64_t>(r)));
    }
    MappingResult best;
    bool have_best = false;
    for (auto& run : runs) {
        MappingResult result = run.get();
        if (!have_best || result.objective < best.objective - 1e-12) {
            best = std::move(result);
            have_best = true;
        }
    }
    best.layout = canonicalize_layout(best.layout);
    return best;
}

} // namespace bibmap
