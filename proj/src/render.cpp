#include "hv/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace hv {

namespace {

// 16 anchors of the viridis colormap.
constexpr uint8_t viridis_table[16][3] = {
    {68, 1, 84},    {72, 26, 108},  {71, 47, 125},  {65, 68, 135},
    {57, 86, 140},  {49, 104, 142}, {42, 120, 142}, {35, 136, 142},
    {31, 152, 139}, {34, 168, 132}, {53, 183, 121}, {84, 197, 104},
    {122, 209, 81}, {165, 219, 54}, {210, 226, 27}, {253, 231, 37}};

struct Bounds {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    void include(double x, double y) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
};

std::string svg_document(const std::string& body, Bounds b, double margin) {
    char head[256];
    double w = b.max_x - b.min_x + 2 * margin;
    double h = b.max_y - b.min_y + 2 * margin;
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%.2f\" height=\"%.2f\" "
                  "viewBox=\"%.2f %.2f %.2f %.2f\">\n",
                  w, h, b.min_x - margin, b.min_y - margin, w, h);
    return std::string(head) + body + "</svg>\n";
}

}  // namespace

std::string viridis_hex(double t) {
    t = std::clamp(t, 0.0, 1.0);
    double pos = t * 15.0;
    int i = std::min(14, int(pos));
    double frac = pos - i;
    char buf[8];
    uint8_t rgb[3];
    for (int c = 0; c < 3; ++c) {
        double v = viridis_table[i][c] +
                   frac * (viridis_table[i + 1][c] - viridis_table[i][c]);
        rgb[c] = uint8_t(v + 0.5);
    }
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::string render_walk_svg(const LocalMechanism& mech,
                            const RotorConfig& config, int64_t steps,
                            uint64_t seed, double cell) {
    if (steps < 1)
        throw std::invalid_argument("render_walk_svg: steps must be >= 1");

    struct Edge {
        Vertex a, b;
        int64_t t;
    };
    std::unordered_map<Vertex, int64_t, VertexHash> seen_h, seen_v;
    std::vector<Edge> edges;
    UnboundedWalk walk(mech, config, seed);
    Vertex prev = walk.position();
    for (int64_t t = 1; t <= steps; ++t) {
        Vertex next = walk.step();
        Vertex lo = std::min(prev, next), hi = std::max(prev, next);
        auto& seen = (hi.x - lo.x == 1) ? seen_h : seen_v;
        if (seen.emplace(lo, t).second) edges.push_back(Edge{lo, hi, t});
        prev = next;
    }

    Bounds bounds;
    std::ostringstream body;
    char buf[256];
    for (const Edge& e : edges) {
        double x1 = e.a.x * cell, y1 = -e.a.y * cell;
        double x2 = e.b.x * cell, y2 = -e.b.y * cell;
        bounds.include(x1, y1);
        bounds.include(x2, y2);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"%s\" stroke-width=\"%.2f\" "
                      "stroke-linecap=\"round\"/>\n",
                      x1, y1, x2, y2,
                      viridis_hex(double(e.t) / double(steps)).c_str(),
                      cell * 0.45);
        body << buf;
    }
    return svg_document(body.str(), bounds, cell * 2);
}

std::string render_config_svg(const RotorConfig& config, int half,
                              double cell) {
    Bounds bounds;
    std::ostringstream body;
    char buf[512];
    for (int y = -half; y <= half; ++y) {
        for (int x = -half; x <= half; ++x) {
            Vertex v{x, y};
            Vertex d = step_of(config.at(v));
            double cx = x * cell, cy = -y * cell;
            double tipx = cx + d.x * cell * 0.38, tipy = cy - d.y * cell * 0.38;
            bounds.include(cx, cy);
            const char* color = label_of(config.at(v)) == Label::H
                                    ? "#bf4040"
                                    : "#4040bf";
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                          "y2=\"%.2f\" stroke=\"%s\" stroke-width=\"%.2f\"/>\n"
                          "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" "
                          "fill=\"%s\"/>\n",
                          cx, cy, tipx, tipy, color, cell * 0.12, tipx, tipy,
                          cell * 0.1, color);
            body << buf;
        }
    }
    return svg_document(body.str(), bounds, cell);
}

}  // namespace hv
