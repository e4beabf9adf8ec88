#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "bibmap/io.hpp"
#include "test_support.hpp"

using namespace bibmap;

TEST_CASE("edge list parsing") {
    SUBCASE("explicit weight") {
        std::istringstream in("A\tB\t2.5\n");
        auto edges = parse_edge_list(in);
        REQUIRE(edges.size() == 1);
        CHECK(edges[0].source == "A");
        CHECK(edges[0].target == "B");
        CHECK(edges[0].weight == 2.5);
    }
    SUBCASE("default weight, comments, blank lines") {
        std::istringstream in("A\tB\n# note\n\nB\tC\t3\n");
        auto edges = parse_edge_list(in);
        REQUIRE(edges.size() == 2);
        CHECK(edges[0].weight == 1.0);
        CHECK(edges[1].weight == 3.0);
    }
    SUBCASE("negative weight cites the line") {
        std::istringstream in("A\tB\t-1\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in), doctest::Contains("line 1"),
                             std::invalid_argument);
    }
    SUBCASE("malformed line cites the line") {
        std::istringstream in("A\tB\t1\njunk line\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in), doctest::Contains("line 2"),
                             std::invalid_argument);
    }
    SUBCASE("non-numeric weight") {
        std::istringstream in("A\tB\theavy\n");
        CHECK_THROWS_WITH_AS(parse_edge_list(in), doctest::Contains("line 1"),
                             std::invalid_argument);
    }
}

TEST_CASE("edge list round trip preserves the aggregated multiset") {
    Network net = testsupport::random_network(9, 0.4, 42);
    std::istringstream in(write_edge_list(net));
    Network back = Network::from_edges(parse_edge_list(in));
    REQUIRE(back.node_count() == net.node_count());
    // node order may differ after the round trip; compare per label
    std::vector<int> perm(net.node_count());
    for (int i = 0; i < net.node_count(); ++i) {
        auto it = std::find(back.labels().begin(), back.labels().end(), net.labels()[i]);
        REQUIRE(it != back.labels().end());
        perm[i] = static_cast<int>(it - back.labels().begin());
    }
    for (int i = 0; i < net.node_count(); ++i) {
        for (int j = i + 1; j < net.node_count(); ++j) {
            CHECK(back.link_weight(perm[i], perm[j]) ==
                  doctest::Approx(net.link_weight(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("layout writer") {
    Layout layout(2, 2);
    layout.at(0, 0) = -0.125;
    layout.at(1, 0) = 0.125;
    std::string text = write_layout(layout, {"A", "B"});
    CHECK(text == "node\tx\ty\nA\t-0.125000\t0.000000\nB\t0.125000\t0.000000\n");
}

TEST_CASE("partition writer and reader") {
    Partition part = Partition::from_assignment({0, 1, 0});
    std::string text = write_partition(part, {"A", "B", "C"});
    CHECK(text == "node\tcluster\nA\t1\nB\t2\nC\t1\n");

    std::istringstream in(text);
    auto rows = parse_partition(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::pair<std::string, int>{"A", 1});
    CHECK(rows[2] == std::pair<std::string, int>{"C", 1});

    std::istringstream bad("node\tcluster\nA\tzero\n");
    CHECK_THROWS_AS(parse_partition(bad), std::invalid_argument);
}

TEST_CASE("appendix-b partition file places node 31 with node 1") {
    Network net = generate_appendix_b();
    ClusterParams params;
    ClusterResult result = optimize_clustering(net, params);
    std::string text = write_partition(result.partition, net.labels());
    std::istringstream in(text);
    auto rows = parse_partition(in);
    int cluster_of_1 = 0, cluster_of_31 = 0;
    for (const auto& [label, cluster] : rows) {
        if (label == "1") {
            cluster_of_1 = cluster;
        }
        if (label == "31") {
            cluster_of_31 = cluster;
        }
    }
    CHECK(cluster_of_1 == cluster_of_31);
}

TEST_CASE("combined json") {
    Layout layout(2, 2);
    layout.at(0, 0) = -0.125;
    layout.at(1, 0) = 0.125;
    Partition part = Partition::from_assignment({0, 0});

    SUBCASE("fields are uniformly absent without clustering") {
        CombinedMeta meta;
        meta.seed = 42;
        std::string text = write_combined_json({"A", "B"}, &layout, nullptr, meta);
        auto doc = nlohmann::json::parse(text);
        for (const auto& node : doc["nodes"]) {
            CHECK(!node.contains("cluster"));
            CHECK(node.contains("x"));
        }
        CHECK(!doc["meta"].contains("gamma"));
    }
    SUBCASE("meta echoes the configuration") {
        CombinedMeta meta;
        meta.gamma = 2.0;
        meta.weighting = "unified";
        std::string text = write_combined_json({"A", "B"}, nullptr, &part, meta);
        auto doc = nlohmann::json::parse(text);
        CHECK(doc["meta"]["gamma"] == 2.0);
        CHECK(doc["meta"]["weighting"] == "unified");
        CHECK(doc["nodes"][0]["cluster"] == 1);
        CHECK(!doc["nodes"][0].contains("x"));
    }
    SUBCASE("emitted quality matches recomputation on the emitted partition") {
        Network net = testsupport::random_network(8, 0.4, 5);
        ClusterParams params;
        params.gamma = 2.0;
        ClusterResult result = optimize_clustering(net, params);
        CombinedMeta meta;
        meta.gamma = params.gamma;
        meta.weighting = to_string(params.weighting);
        meta.quality = result.quality;
        std::string text = write_combined_json(net.labels(), nullptr, &result.partition, meta);
        auto doc = nlohmann::json::parse(text);

        std::vector<int> raw(net.node_count());
        for (int i = 0; i < net.node_count(); ++i) {
            CHECK(doc["nodes"][i]["label"] == net.labels()[i]);
            raw[i] = static_cast<int>(doc["nodes"][i]["cluster"]) - 1;
        }
        Partition reread = Partition::from_assignment(raw);
        double recomputed = clustering_quality(net, reread, params);
        CHECK(std::abs(static_cast<double>(doc["meta"]["quality"]) - recomputed) < 1e-9);
    }
}

TEST_CASE("svg rendering") {
    Layout layout(2, 2);
    layout.at(0, 0) = -0.125;
    layout.at(1, 0) = 0.125;
    SvgOptions options;

    SUBCASE("one circle per node, deterministic bytes") {
        std::string a = render_svg({"A", "B"}, layout, nullptr, options);
        std::string b = render_svg({"A", "B"}, layout, nullptr, options);
        CHECK(a == b);
        size_t circles = 0;
        for (size_t pos = a.find("<circle"); pos != std::string::npos;
             pos = a.find("<circle", pos + 1)) {
            ++circles;
        }
        CHECK(circles == 2);
    }
    SUBCASE("missing coordinates are rejected") {
        Layout empty;
        CHECK_THROWS_WITH_AS(render_svg({}, empty, nullptr, options),
                             doctest::Contains("run mapping"), std::invalid_argument);
    }
    SUBCASE("appendix-b nodes 1..10 and 31 share a fill under unified weighting") {
        Network net = generate_appendix_b();
        // any coordinates work here; the mapping stage needs a connected
        // network, while the fills only depend on the partition
        Layout ring(net.node_count(), 2);
        for (int i = 0; i < net.node_count(); ++i) {
            double angle = 2.0 * 3.14159265358979323846 * i / net.node_count();
            ring.at(i, 0) = std::cos(angle);
            ring.at(i, 1) = std::sin(angle);
        }
        ClusterParams params;
        ClusterResult clustered = optimize_clustering(net, params);
        std::string svg = render_svg(net.labels(), ring, &clustered.partition, options);

        // circles appear in node order; collect their fill attributes
        std::vector<std::string> fills;
        for (size_t pos = svg.find("<circle"); pos != std::string::npos;
             pos = svg.find("<circle", pos + 1)) {
            size_t f = svg.find("fill=\"", pos) + 6;
            fills.push_back(svg.substr(f, svg.find('"', f) - f));
        }
        REQUIRE(fills.size() == 31);
        for (int i = 0; i < 10; ++i) {
            CHECK(fills[i] == fills[30]);
        }
        CHECK(fills[10] != fills[30]);
    }
}
