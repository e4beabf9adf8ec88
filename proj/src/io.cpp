#include "bibmap/io.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace bibmap {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

double parse_weight(const std::string& text, int line_number) {
    size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument(
            fmt::format("line {}: non-numeric weight \"{}\"", line_number, text));
    }
    if (value < 0.0) {
        throw std::invalid_argument(
            fmt::format("line {}: negative weight \"{}\"", line_number, text));
    }
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

} // namespace

std::vector<EdgeRecord> parse_edge_list(std::istream& in) {
    std::vector<EdgeRecord> edges;
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string line = strip_cr(raw);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto fields = split_tabs(line);
        if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty()) {
            throw std::invalid_argument(
                fmt::format("line {}: malformed edge \"{}\"", line_number, line));
        }
        double weight = fields.size() == 3 ? parse_weight(fields[2], line_number) : 1.0;
        edges.push_back({fields[0], fields[1], weight});
    }
    return edges;
}

std::string write_edge_list(const Network& net) {
    std::string out;
    for (int i = 0; i < net.node_count(); ++i) {
        for (const auto& [j, w] : net.neighbors(i)) {
            if (j <= i) {
                continue;
            }
            out += fmt::format("{}\t{}\t{}\n", net.labels()[i], net.labels()[j], w);
        }
    }
    return out;
}

std::string write_layout(const Layout& layout, const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) != layout.node_count) {
        throw std::invalid_argument("label count does not match layout");
    }
    std::string out = "node";
    static const std::array<const char*, 3> axis_names = {"x", "y", "z"};
    for (int k = 0; k < layout.dimension; ++k) {
        out += '\t';
        out += k < 3 ? std::string(axis_names[k]) : fmt::format("dim{}", k + 1);
    }
    out += '\n';
    for (int i = 0; i < layout.node_count; ++i) {
        out += labels[i];
        for (int k = 0; k < layout.dimension; ++k) {
            out += fmt::format("\t{:.6f}", layout.at(i, k));
        }
        out += '\n';
    }
    return out;
}

std::string write_partition(const Partition& part, const std::vector<std::string>& labels) {
    if (labels.size() != part.assignment.size()) {
        throw std::invalid_argument("label count does not match partition");
    }
    std::string out = "node\tcluster\n";
    for (size_t i = 0; i < labels.size(); ++i) {
        out += fmt::format("{}\t{}\n", labels[i], part.assignment[i] + 1);
    }
    return out;
}

std::vector<std::pair<std::string, int>> parse_partition(std::istream& in) {
    std::vector<std::pair<std::string, int>> rows;
    std::string raw;
    int line_number = 0;
    while (std::getline(in, raw)) {
        ++line_number;
        std::string line = strip_cr(raw);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (line_number == 1 && line == "node\tcluster") {
            continue;
        }
        auto fields = split_tabs(line);
        size_t consumed = 0;
        int cluster = 0;
        if (fields.size() == 2 && !fields[0].empty()) {
            try {
                cluster = std::stoi(fields[1], &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
        }
        if (consumed == 0 || consumed != fields[1].size() || cluster < 1) {
            throw std::invalid_argument(
                fmt::format("line {}: malformed partition row \"{}\"", line_number, line));
        }
        rows.emplace_back(fields[0], cluster);
    }
    return rows;
}

std::string write_combined_json(const std::vector<std::string>& labels, const Layout* layout,
                                const Partition* part, const CombinedMeta& meta) {
    if (layout && static_cast<int>(labels.size()) != layout->node_count) {
        throw std::invalid_argument("label count does not match layout");
    }
    if (part && labels.size() != part->assignment.size()) {
        throw std::invalid_argument("label count does not match partition");
    }
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    static const std::array<const char*, 3> axis_names = {"x", "y", "z"};
    for (size_t i = 0; i < labels.size(); ++i) {
        nlohmann::ordered_json node;
        node["label"] = labels[i];
        if (layout) {
            for (int k = 0; k < layout->dimension; ++k) {
                std::string key =
                    k < 3 ? std::string(axis_names[k]) : fmt::format("dim{}", k + 1);
                node[key] = layout->at(static_cast<int>(i), k);
            }
        }
        if (part) {
            node["cluster"] = part->assignment[i] + 1;
        }
        doc["nodes"].push_back(std::move(node));
    }
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    if (meta.gamma) {
        m["gamma"] = *meta.gamma;
    }
    if (meta.weighting) {
        m["weighting"] = *meta.weighting;
    }
    if (meta.seed) {
        m["seed"] = *meta.seed;
    }
    if (meta.objective) {
        m["objective"] = *meta.objective;
    }
    if (meta.quality) {
        m["quality"] = *meta.quality;
    }
    doc["meta"] = std::move(m);
    return doc.dump(2) + "\n";
}

namespace {

// Qualitative palette, cycled by cluster id.
constexpr std::array<const char*, 25> kPalette = {
    "#d53e4f", "#3288bd", "#66a61e", "#e6ab02", "#7570b3", "#e7298a", "#1b9e77", "#a6761d",
    "#f46d43", "#5e4fa2", "#fdae61", "#abdda4", "#d95f02", "#80b1d3", "#b3de69", "#fccde5",
    "#bc80bd", "#fb8072", "#8dd3c7", "#bebada", "#ffed6f", "#ccebc5", "#e31a1c", "#1f78b4",
    "#33a02c"};

} // namespace

std::string render_svg(const std::vector<std::string>& labels, const Layout& layout,
                       const Partition* part, const SvgOptions& options) {
    if (layout.node_count == 0 || layout.coords.empty()) {
        throw std::invalid_argument("coordinates absent: run mapping before rendering an SVG map");
    }
    if (static_cast<int>(labels.size()) != layout.node_count) {
        throw std::invalid_argument("label count does not match layout");
    }
    if (part && labels.size() != part->assignment.size()) {
        throw std::invalid_argument("label count does not match partition");
    }

    // First two axes only; a 1-d layout renders on a horizontal line.
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = std::numeric_limits<double>::infinity(), max_y = -min_y;
    auto coord = [&](int i, int k) { return k < layout.dimension ? layout.at(i, k) : 0.0; };
    for (int i = 0; i < layout.node_count; ++i) {
        min_x = std::min(min_x, coord(i, 0));
        max_x = std::max(max_x, coord(i, 0));
        min_y = std::min(min_y, coord(i, 1));
        max_y = std::max(max_y, coord(i, 1));
    }
    double margin_x = options.width * 0.05;
    double margin_y = options.height * 0.05;
    double span_x = max_x - min_x;
    double span_y = max_y - min_y;
    double scale_x = span_x > 0 ? (options.width - 2 * margin_x) / span_x : 0.0;
    double scale_y = span_y > 0 ? (options.height - 2 * margin_y) / span_y : 0.0;
    double scale = 0.0;
    if (scale_x > 0 && scale_y > 0) {
        scale = std::min(scale_x, scale_y);
    } else {
        scale = std::max(scale_x, scale_y);
    }

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n",
        options.width, options.height, options.width, options.height);
    svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", options.width,
                       options.height);
    for (int i = 0; i < layout.node_count; ++i) {
        double cx = options.width / 2.0 + (coord(i, 0) - (min_x + span_x / 2.0)) * scale;
        // SVG y grows downward.
        double cy = options.height / 2.0 - (coord(i, 1) - (min_y + span_y / 2.0)) * scale;
        const char* fill = "#808080";
        if (part) {
            fill = kPalette[static_cast<size_t>(part->assignment[i]) % kPalette.size()];
        }
        svg += fmt::format(
            "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"{}\" stroke=\"#333333\" "
            "stroke-width=\"0.5\"/>\n",
            cx, cy, options.node_radius, fill);
        if (options.draw_labels) {
            std::string escaped;
            for (char c : labels[i]) {
                switch (c) {
                case '&': escaped += "&amp;"; break;
                case '<': escaped += "&lt;"; break;
                case '>': escaped += "&gt;"; break;
                default: escaped += c;
                }
            }
            svg += fmt::format(
                "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"9\" font-family=\"sans-serif\" "
                "fill=\"#222222\">{}</text>\n",
                cx + options.node_radius + 2.0, cy + 3.0, escaped);
        }
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace bibmap
