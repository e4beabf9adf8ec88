import math

import pytest

import bibmap


def test_network_basics():
    net = bibmap.Network([("A", "B", 1.0)])
    assert net.node_count == 2
    assert net.labels == ["A", "B"]
    assert net.total == 1.0
    assert net.association_strength(0, 1) == pytest.approx(2.0)


def test_appendix_b_assignments():
    net = bibmap.generate_appendix_b()
    assert net.node_count == 31
    assert 2 * net.total == pytest.approx(20300.0)

    unified, q_unified = bibmap.optimize_clustering(net, gamma=1.0, weighting="unified")
    classic, q_classic = bibmap.optimize_clustering(net, gamma=1.0, weighting="classic")
    node = {label: i for i, label in enumerate(net.labels)}
    assert unified[node["31"]] == unified[node["1"]]
    assert classic[node["31"]] == classic[node["11"]]
    assert q_unified == pytest.approx(
        bibmap.clustering_quality(net, unified, gamma=1.0, weighting="unified"), abs=1e-12
    )
    assert q_classic == pytest.approx(
        bibmap.clustering_quality(net, classic, gamma=1.0, weighting="classic"), abs=1e-12
    )


def test_two_node_layout_optimum():
    net = bibmap.Network([("A", "B", 1.0)])
    coords, objective = bibmap.compute_layout(net)
    distance = math.dist(coords[0], coords[1])
    assert distance == pytest.approx(0.25, abs=1e-6)
    assert objective == pytest.approx(-0.125, abs=1e-9)


def test_oracle_and_bound():
    net = bibmap.Network([("1", "2", 1.0), ("3", "4", 1.0)])
    assignment, quality = bibmap.exhaustive_best_partition(net)
    assert assignment == [0, 0, 1, 1]
    assert quality > 0

    big = bibmap.generate_ring_of_cliques(5, 3)
    with pytest.raises(bibmap.InfeasibleError):
        bibmap.exhaustive_best_partition(big)


def test_svg_render():
    net = bibmap.generate_ring_of_cliques(3, 3)
    coords, _ = bibmap.compute_layout(net, restarts=2)
    assignment, _ = bibmap.optimize_clustering(net)
    svg = bibmap.render_svg(net, coords, assignment)
    assert svg.count("<circle") == net.node_count
    assert svg == bibmap.render_svg(net, coords, assignment)


def test_validation_errors():
    with pytest.raises(ValueError):
        bibmap.Network([("A", "A", 1.0)])
    net = bibmap.Network([("A", "B", 1.0)])
    with pytest.raises(ValueError):
        bibmap.optimize_clustering(net, gamma=0.0)
