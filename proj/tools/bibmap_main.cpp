#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bibmap/clustering.hpp"
#include "bibmap/io.hpp"
#include "bibmap/mapping.hpp"
#include "bibmap/network.hpp"

namespace {

using namespace bibmap;

struct CommonOptions {
    std::string input = "-";
    bool drop_isolated = false;
    bool largest_component = false;
};

struct MapOptions {
    int dimension = 2;
    int restarts = 10;
    int max_iterations = 1000;
    double tolerance = 1e-8;
};

struct ClusterOptions {
    double gamma = 1.0;
    std::string weights = "unified";
    int restarts = 10;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-i,--input", opts.input, "Edge-list TSV path, or - for standard input");
    cmd->add_flag("--drop-isolated", opts.drop_isolated,
                  "Drop isolated nodes with a warning instead of failing");
    cmd->add_flag("--largest-component", opts.largest_component,
                  "Restrict a disconnected network to its largest component");
}

void add_map(CLI::App* cmd, MapOptions& opts) {
    cmd->add_option("--dim", opts.dimension, "Map dimension p")->check(CLI::PositiveNumber);
    cmd->add_option("--restarts", opts.restarts, "Independent restarts")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", opts.max_iterations, "Majorization iteration cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", opts.tolerance, "Relative objective convergence tolerance");
}

void add_cluster(CLI::App* cmd, ClusterOptions& opts, bool with_restarts = true) {
    cmd->add_option("--gamma", opts.gamma, "Resolution parameter (gamma > 0)");
    cmd->add_option("--weights", opts.weights, "Pair weighting: unified or classic");
    if (with_restarts) {
        cmd->add_option("--restarts", opts.restarts, "Independent restarts")
            ->check(CLI::PositiveNumber);
    }
}

Network load_network(const CommonOptions& opts) {
    std::vector<EdgeRecord> edges;
    if (opts.input == "-") {
        edges = parse_edge_list(std::cin);
    } else {
        std::ifstream in(opts.input);
        if (!in) {
            throw std::invalid_argument(fmt::format("cannot open input file \"{}\"", opts.input));
        }
        edges = parse_edge_list(in);
    }
    Network net = [&] {
        if (opts.drop_isolated) {
            std::vector<std::string> dropped;
            Network built = Network::from_edges(edges, &dropped);
            for (const auto& label : dropped) {
                std::cerr << "warning: dropped isolated node \"" << label << "\"\n";
            }
            return built;
        }
        return Network::from_edges(edges);
    }();
    if (opts.largest_component) {
        auto components = connected_components(net);
        if (components.size() > 1) {
            size_t largest = 0;
            for (size_t c = 1; c < components.size(); ++c) {
                if (components[c].size() > components[largest].size()) {
                    largest = c;
                }
            }
            std::cerr << fmt::format(
                "warning: keeping largest of {} components ({} of {} nodes)\n",
                components.size(), components[largest].size(), net.node_count());
            std::vector<bool> keep(net.node_count(), false);
            for (int v : components[largest]) {
                keep[v] = true;
            }
            std::vector<EdgeRecord> sub;
            for (int i = 0; i < net.node_count(); ++i) {
                if (!keep[i]) {
                    continue;
                }
                for (const auto& [j, w] : net.neighbors(i)) {
                    if (j > i && keep[j]) {
                        sub.push_back({net.labels()[i], net.labels()[j], w});
                    }
                }
            }
            net = Network::from_edges(sub);
        }
    }
    return net;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument(fmt::format("cannot open output file \"{}\"", path));
    }
    out << text;
}

ClusterParams to_params(const ClusterOptions& opts, std::uint64_t seed) {
    ClusterParams params;
    params.gamma = opts.gamma;
    params.weighting = weighting_from_string(opts.weights);
    params.restarts = opts.restarts;
    params.seed = seed;
    return params;
}

MappingConfig to_config(const MapOptions& opts, std::uint64_t seed) {
    MappingConfig config;
    config.dimension = opts.dimension;
    config.restarts = opts.restarts;
    config.max_iterations = opts.max_iterations;
    config.relative_tolerance = opts.tolerance;
    config.seed = seed;
    return config;
}

Partition read_partition_for(const Network& net, const std::string& path) {
    std::vector<std::pair<std::string, int>> rows;
    if (path == "-") {
        rows = parse_partition(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument(fmt::format("cannot open partition file \"{}\"", path));
        }
        rows = parse_partition(in);
    }
    std::unordered_map<std::string, int> by_label;
    for (const auto& [label, cluster] : rows) {
        if (!by_label.emplace(label, cluster).second) {
            throw std::invalid_argument(fmt::format("duplicate node \"{}\" in partition", label));
        }
    }
    std::vector<int> raw(net.node_count());
    for (int i = 0; i < net.node_count(); ++i) {
        auto it = by_label.find(net.labels()[i]);
        if (it == by_label.end()) {
            throw std::invalid_argument(
                fmt::format("partition is missing node \"{}\"", net.labels()[i]));
        }
        raw[i] = it->second - 1;
    }
    return Partition::from_assignment(std::move(raw));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bibmap: unified map layout and resolution-parameterized clustering "
                 "of weighted networks"};
    app.require_subcommand(1);

    std::uint64_t seed = 42; // fixed default so runs are reproducible
    app.add_option("--seed", seed, "Base random seed")->configurable(false);

    std::string out_layout, out_clusters, out_json, out_svg;
    auto add_outputs = [&](CLI::App* cmd) {
        cmd->add_option("--out-layout", out_layout, "Layout TSV path");
        cmd->add_option("--out-clusters", out_clusters, "Partition TSV path");
        cmd->add_option("--out-json", out_json, "Combined JSON path");
        cmd->add_option("--out-svg", out_svg, "SVG map path");
    };

    CommonOptions common;
    MapOptions map_opts;
    ClusterOptions cluster_opts;
    bool svg_labels = false;

    auto* gen = app.add_subcommand("gen", "Generate a synthetic network as edge-list TSV");
    std::string gen_kind;
    int gen_cliques = 10, gen_size = 5;
    std::string gen_output = "-";
    gen->add_option("kind", gen_kind, "appendix-b or ring-of-cliques")->required();
    gen->add_option("--cliques", gen_cliques, "Clique count for ring-of-cliques");
    gen->add_option("--size", gen_size, "Clique size for ring-of-cliques");
    gen->add_option("-o,--output", gen_output, "Output path, - for standard output");

    auto* map_cmd = app.add_subcommand("map", "Compute a map layout");
    add_common(map_cmd, common);
    add_map(map_cmd, map_opts);
    add_outputs(map_cmd);

    auto* cluster_cmd = app.add_subcommand("cluster", "Compute a clustering");
    add_common(cluster_cmd, common);
    add_cluster(cluster_cmd, cluster_opts);
    add_outputs(cluster_cmd);

    auto* run_cmd = app.add_subcommand("run", "Map and cluster, joined into JSON/SVG");
    add_common(run_cmd, common);
    add_map(run_cmd, map_opts);
    ClusterOptions run_cluster_opts;
    add_cluster(run_cmd, run_cluster_opts, false);
    run_cmd->add_option("--cluster-restarts", run_cluster_opts.restarts,
                        "Clustering restarts (mapping uses --restarts)");
    run_cmd->add_flag("--svg-labels", svg_labels, "Draw node labels in the SVG");
    add_outputs(run_cmd);

    auto* quality_cmd = app.add_subcommand("quality", "Evaluate the quality of a partition file");
    add_common(quality_cmd, common);
    add_cluster(quality_cmd, cluster_opts, false);
    std::string partition_path;
    quality_cmd->add_option("--partition", partition_path, "Partition TSV to evaluate")
        ->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum (n <= 12)");
    add_common(oracle_cmd, common);
    add_cluster(oracle_cmd, cluster_opts, false);
    add_outputs(oracle_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "Cluster at a list of gamma values");
    add_common(sweep_cmd, common);
    std::vector<double> gammas;
    sweep_cmd->add_option("--gammas", gammas, "Gamma values")->required()->delimiter(',');
    sweep_cmd->add_option("--weights", cluster_opts.weights, "Pair weighting: unified or classic");
    sweep_cmd->add_option("--restarts", cluster_opts.restarts, "Independent restarts")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            Network net = [&] {
                if (gen_kind == "appendix-b") {
                    return generate_appendix_b();
                }
                if (gen_kind == "ring-of-cliques") {
                    return generate_ring_of_cliques(gen_cliques, gen_size);
                }
                throw std::invalid_argument(
                    fmt::format("unknown generator \"{}\" (expected appendix-b or "
                                "ring-of-cliques)",
                                gen_kind));
            }();
            emit(write_edge_list(net), gen_output);
        } else if (map_cmd->parsed()) {
            Network net = load_network(common);
            MappingResult result = compute_layout(net, to_config(map_opts, seed));
            std::cerr << fmt::format("objective\t{:.15g}\n", result.objective);
            emit(write_layout(result.layout, net.labels()), out_layout);
        } else if (cluster_cmd->parsed()) {
            Network net = load_network(common);
            ClusterResult result = optimize_clustering(net, to_params(cluster_opts, seed));
            std::cerr << fmt::format("quality\t{:.15g}\n", result.quality);
            emit(write_partition(result.partition, net.labels()), out_clusters);
        } else if (run_cmd->parsed()) {
            Network net = load_network(common);
            MappingResult mapped = compute_layout(net, to_config(map_opts, seed));
            ClusterParams params = to_params(run_cluster_opts, seed);
            ClusterResult clustered = optimize_clustering(net, params);
            std::cerr << fmt::format("objective\t{:.15g}\nquality\t{:.15g}\n", mapped.objective,
                                     clustered.quality);
            if (!out_layout.empty()) {
                emit(write_layout(mapped.layout, net.labels()), out_layout);
            }
            if (!out_clusters.empty()) {
                emit(write_partition(clustered.partition, net.labels()), out_clusters);
            }
            CombinedMeta meta;
            meta.gamma = params.gamma;
            meta.weighting = to_string(params.weighting);
            meta.seed = seed;
            meta.objective = mapped.objective;
            meta.quality = clustered.quality;
            emit(write_combined_json(net.labels(), &mapped.layout, &clustered.partition, meta),
                 out_json);
            if (!out_svg.empty()) {
                SvgOptions svg;
                svg.draw_labels = svg_labels;
                emit(render_svg(net.labels(), mapped.layout, &clustered.partition, svg), out_svg);
            }
        } else if (quality_cmd->parsed()) {
            Network net = load_network(common);
            Partition part = read_partition_for(net, partition_path);
            double q = clustering_quality(net, part, to_params(cluster_opts, seed));
            std::cout << fmt::format("{:.15g}\n", q);
        } else if (oracle_cmd->parsed()) {
            Network net = load_network(common);
            ClusterResult result = exhaustive_best_partition(net, to_params(cluster_opts, seed));
            std::cerr << fmt::format("quality\t{:.15g}\n", result.quality);
            emit(write_partition(result.partition, net.labels()), out_clusters);
        } else if (sweep_cmd->parsed()) {
            Network net = load_network(common);
            auto entries = gamma_sweep(net, gammas, to_params(cluster_opts, seed));
            std::string out = "node";
            for (const auto& entry : entries) {
                out += fmt::format("\tgamma={:g}", entry.gamma);
                std::cerr << fmt::format("gamma\t{:g}\tclusters\t{}\tquality\t{:.15g}\n",
                                         entry.gamma, entry.partition.cluster_count,
                                         entry.quality);
            }
            out += '\n';
            for (int i = 0; i < net.node_count(); ++i) {
                out += net.labels()[i];
                for (const auto& entry : entries) {
                    out += fmt::format("\t{}", entry.partition.assignment[i] + 1);
                }
                out += '\n';
            }
            emit(out, "-");
        }
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
