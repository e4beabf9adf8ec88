#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>

#include "bibmap/clustering.hpp"
#include "bibmap/io.hpp"
#include "bibmap/mapping.hpp"
#include "bibmap/network.hpp"

namespace py = pybind11;
using namespace bibmap;

namespace {

using EdgeTuple = std::tuple<std::string, std::string, double>;
using Coords = std::vector<std::vector<double>>;

Network network_from_tuples(const std::vector<EdgeTuple>& edges, bool drop_isolated) {
    std::vector<EdgeRecord> records;
    records.reserve(edges.size());
    for (const auto& [source, target, weight] : edges) {
        records.push_back({source, target, weight});
    }
    if (drop_isolated) {
        std::vector<std::string> dropped;
        return Network::from_edges(records, &dropped);
    }
    return Network::from_edges(records);
}

Coords layout_to_rows(const Layout& layout) {
    Coords rows(layout.node_count, std::vector<double>(layout.dimension));
    for (int i = 0; i < layout.node_count; ++i) {
        for (int k = 0; k < layout.dimension; ++k) {
            rows[i][k] = layout.at(i, k);
        }
    }
    return rows;
}

Layout rows_to_layout(const Coords& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("coordinates are empty");
    }
    Layout layout(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < layout.node_count; ++i) {
        if (static_cast<int>(rows[i].size()) != layout.dimension) {
            throw std::invalid_argument("all coordinate rows must share one dimension");
        }
        for (int k = 0; k < layout.dimension; ++k) {
            layout.at(i, k) = rows[i][k];
        }
    }
    return layout;
}

ClusterParams make_params(double gamma, const std::string& weighting, int restarts,
                          std::uint64_t seed) {
    ClusterParams params;
    params.gamma = gamma;
    params.weighting = weighting_from_string(weighting);
    params.restarts = restarts;
    params.seed = seed;
    return params;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Unified map layout and resolution-parameterized clustering of weighted networks";

    py::register_exception<InfeasibleError>(m, "InfeasibleError");

    py::class_<Network>(m, "Network")
        .def(py::init(&network_from_tuples), py::arg("edges"), py::arg("drop_isolated") = false,
             "Build from (source, target, weight) tuples; duplicates are summed.")
        .def_property_readonly("node_count", &Network::node_count)
        .def_property_readonly("labels", &Network::labels)
        .def_property_readonly("total", &Network::total)
        .def("strength", &Network::strength, py::arg("i"))
        .def("link_weight", &Network::link_weight, py::arg("i"), py::arg("j"))
        .def("association_strength", &Network::association_strength, py::arg("i"), py::arg("j"));

    m.def("generate_appendix_b", &generate_appendix_b);
    m.def("generate_ring_of_cliques", &generate_ring_of_cliques, py::arg("clique_count"),
          py::arg("clique_size"));
    m.def("connected_components", &connected_components, py::arg("net"));

    m.def(
        "compute_layout",
        [](const Network& net, int dimension, int restarts, std::uint64_t seed,
           int max_iterations, double tolerance) {
            MappingConfig config;
            config.dimension = dimension;
            config.restarts = restarts;
            config.seed = seed;
            config.max_iterations = max_iterations;
            config.relative_tolerance = tolerance;
            MappingResult result = compute_layout(net, config);
            return std::make_pair(layout_to_rows(result.layout), result.objective);
        },
        py::arg("net"), py::arg("dimension") = 2, py::arg("restarts") = 10, py::arg("seed") = 42,
        py::arg("max_iterations") = 1000, py::arg("tolerance") = 1e-8,
        "Returns (coordinates, objective) for the best canonicalized restart.");

    m.def(
        "mapping_objective",
        [](const Network& net, const Coords& coords) {
            return mapping_objective(net, rows_to_layout(coords));
        },
        py::arg("net"), py::arg("coordinates"));

    m.def(
        "optimize_clustering",
        [](const Network& net, double gamma, const std::string& weighting, int restarts,
           std::uint64_t seed) {
            ClusterResult result =
                optimize_clustering(net, make_params(gamma, weighting, restarts, seed));
            return std::make_pair(result.partition.assignment, result.quality);
        },
        py::arg("net"), py::arg("gamma") = 1.0, py::arg("weighting") = "unified",
        py::arg("restarts") = 10, py::arg("seed") = 42,
        "Returns (assignment, quality); cluster labels are canonical 0-based integers.");

    m.def(
        "clustering_quality",
        [](const Network& net, const std::vector<int>& assignment, double gamma,
           const std::string& weighting) {
            return clustering_quality(net, Partition::from_assignment(assignment),
                                      make_params(gamma, weighting, 1, 0));
        },
        py::arg("net"), py::arg("assignment"), py::arg("gamma") = 1.0,
        py::arg("weighting") = "unified");

    m.def(
        "clustering_cost",
        [](const Network& net, const std::vector<int>& assignment, double gamma) {
            return clustering_cost(net, Partition::from_assignment(assignment), gamma);
        },
        py::arg("net"), py::arg("assignment"), py::arg("gamma") = 1.0);

    m.def(
        "exhaustive_best_partition",
        [](const Network& net, double gamma, const std::string& weighting) {
            ClusterResult result =
                exhaustive_best_partition(net, make_params(gamma, weighting, 1, 0));
            return std::make_pair(result.partition.assignment, result.quality);
        },
        py::arg("net"), py::arg("gamma") = 1.0, py::arg("weighting") = "unified",
        "Exact optimum for n <= 12 by set-partition enumeration.");

    m.def(
        "local_move_refinement",
        [](const Network& net, const std::vector<int>& assignment, double gamma,
           const std::string& weighting) {
            return local_move_refinement(net, Partition::from_assignment(assignment),
                                         make_params(gamma, weighting, 1, 0))
                .assignment;
        },
        py::arg("net"), py::arg("assignment"), py::arg("gamma") = 1.0,
        py::arg("weighting") = "unified");

    m.def(
        "gamma_sweep",
        [](const Network& net, const std::vector<double>& gammas, const std::string& weighting,
           int restarts, std::uint64_t seed) {
            std::vector<std::tuple<double, std::vector<int>, double>> out;
            for (const auto& entry :
                 gamma_sweep(net, gammas, make_params(1.0, weighting, restarts, seed))) {
                out.emplace_back(entry.gamma, entry.partition.assignment, entry.quality);
            }
            return out;
        },
        py::arg("net"), py::arg("gammas"), py::arg("weighting") = "unified",
        py::arg("restarts") = 10, py::arg("seed") = 42);

    m.def(
        "render_svg",
        [](const Network& net, const Coords& coords,
           const std::optional<std::vector<int>>& assignment, bool draw_labels) {
            Layout layout = rows_to_layout(coords);
            SvgOptions options;
            options.draw_labels = draw_labels;
            if (assignment) {
                Partition part = Partition::from_assignment(*assignment);
                return render_svg(net.labels(), layout, &part, options);
            }
            return render_svg(net.labels(), layout, nullptr, options);
        },
        py::arg("net"), py::arg("coordinates"), py::arg("assignment") = py::none(),
        py::arg("draw_labels") = false);
}
