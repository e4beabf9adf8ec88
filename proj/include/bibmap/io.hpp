#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bibmap/clustering.hpp"
#include "bibmap/mapping.hpp"
#include "bibmap/network.hpp"

namespace bibmap {

/// Parses `source<TAB>target[<TAB>weight]` lines. Missing weight means
/// 1.0; empty lines and lines starting with '#' are skipped. Throws
/// std::invalid_argument with the line number on malformed input.
std::vector<EdgeRecord> parse_edge_list(std::istream& in);

/// Edge-list TSV for a network, one line per stored pair, pairs in
/// (i, j) index order.
std::string write_edge_list(const Network& net);

/// TSV `node<TAB>x<TAB>y[...]`, coordinates with 6 decimal places, rows
/// in node-index order.
std::string write_layout(const Layout& layout, const std::vector<std::string>& labels);

/// TSV `node<TAB>cluster`, cluster ids 1-based, rows in node-index order.
std::string write_partition(const Partition& part, const std::vector<std::string>& labels);

/// Reads a partition TSV back into per-label cluster ids (as written:
/// 1-based ids). Throws std::invalid_argument on malformed lines.
std::vector<std::pair<std::string, int>> parse_partition(std::istream& in);

/// Run metadata echoed into combined JSON output.
struct CombinedMeta {
    std::optional<double> gamma;
    std::optional<std::string> weighting;
    std::optional<std::uint64_t> seed;
    std::optional<double> objective;
    std::optional<double> quality;
};

/// JSON document with a `nodes` array (label, optional x/y/..., optional
/// 1-based cluster) and a `meta` object. Stable key order, no timestamps.
std::string write_combined_json(const std::vector<std::string>& labels, const Layout* layout,
                                const Partition* part, const CombinedMeta& meta);

struct SvgOptions {
    int width = 800;
    int height = 600;
    double node_radius = 6.0;
    bool draw_labels = false;
};

/// Static SVG map: one circle per node scaled into the viewport with a 5%
/// margin, fill from a 25-entry palette cycled by cluster id (gray when
/// `part` is null). Output bytes are a pure function of the inputs.
std::string render_svg(const std::vector<std::string>& labels, const Layout& layout,
                       const Partition* part, const SvgOptions& options);

} // namespace bibmap
