#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "birational.hpp"
#include "cones.hpp"

namespace nilcone {

namespace detail {

// Fan drawing data shared by A-side chamber fans and B-side quotient fans.
struct FanPicture {
    std::vector<std::pair<double, double>> rays;  // unit directions, angularly ordered
    std::pair<double, double> closure_left, closure_right;
    std::string label_left, label_right;
    int depth = 0;
};

inline std::pair<double, double> unit_dir(double x, double y) {
    double n = std::hypot(x, y);
    return {x / n, y / n};
}

inline std::string svg_of(const FanPicture& pic, const std::string& depth_label) {
    // Layout: origin at (cx, cy), rays of length R; first lattice coordinate
    // grows rightwards, second upwards.
    const double cx = 60, cy = 420, R = 380;
    const double w = 520, h = 480;
    auto px = [&](std::pair<double, double> d) {
        return std::pair<double, double>{cx + R * d.first, cy - R * d.second};
    };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
    out += "<title>" + depth_label + "</title>\n";
    // alternating chamber shading between consecutive rays
    for (size_t i = 0; i + 1 < pic.rays.size(); ++i) {
        auto a = px(pic.rays[i]), b = px(pic.rays[i + 1]);
        out += "<path d=\"M " + num(cx) + " " + num(cy) + " L " + num(a.first) + " " +
               num(a.second) + " L " + num(b.first) + " " + num(b.second) + " Z\" fill=\"" +
               (i % 2 ? "#c8d8f0" : "#eef3fa") + "\" stroke=\"none\"/>\n";
    }
    for (auto& d : pic.rays) {
        auto p = px(d);
        out += "<line x1=\"" + num(cx) + "\" y1=\"" + num(cy) + "\" x2=\"" + num(p.first) +
               "\" y2=\"" + num(p.second) + "\" stroke=\"#204070\" stroke-width=\"1.2\"/>\n";
    }
    // dashed closure rays with their irrational-slope labels
    for (auto [d, lab] : {std::pair{pic.closure_left, pic.label_left},
                          {pic.closure_right, pic.label_right}}) {
        auto p = px(d);
        out += "<line x1=\"" + num(cx) + "\" y1=\"" + num(cy) + "\" x2=\"" + num(p.first) +
               "\" y2=\"" + num(p.second) +
               "\" stroke=\"#a03030\" stroke-width=\"1.4\" stroke-dasharray=\"6 4\"/>\n";
        out += "<text x=\"" + num(p.first + 4) + "\" y=\"" + num(p.second - 4) +
               "\" font-size=\"13\" fill=\"#a03030\">" + lab + "</text>\n";
    }
    out += "<text x=\"10\" y=\"20\" font-size=\"14\" fill=\"#000\">" + depth_label +
           "</text>\n</svg>\n";
    return out;
}

inline void write_svg(const FanPicture& pic, const std::string& out_path,
                      const std::string& depth_label) {
    if (pic.rays.empty()) throw IoError("cannot draw an empty fan");
    std::ofstream os(out_path);
    if (!os) throw IoError("cannot open '" + out_path + "' for writing");
    os << svg_of(pic, depth_label);
    if (!os) throw IoError("failed writing '" + out_path + "'");
}

inline FanPicture fan_picture(const std::vector<std::pair<long, long>>& rays,
                              const QuadRay& left, const QuadRay& right, int depth) {
    FanPicture pic;
    pic.depth = depth;
    for (auto& [a, b] : rays)
        pic.rays.push_back(unit_dir(static_cast<double>(a), static_cast<double>(b)));
    pic.closure_left = unit_dir(left[0].to_double(), left[1].to_double());
    pic.closure_right = unit_dir(right[0].to_double(), right[1].to_double());
    pic.label_left = ray_str(left);
    pic.label_right = ray_str(right);
    return pic;
}

} // namespace detail

inline void emit_fan_svg(const ChamberFan& fan, const std::string& out_path,
                         const std::string& depth_label) {
    detail::write_svg(
        detail::fan_picture(fan.walls, fan.closure_left, fan.closure_right, fan.depth), out_path,
        depth_label);
}

inline void emit_fan_svg(const QuotientFan& fan, const std::string& out_path,
                         const std::string& depth_label) {
    detail::write_svg(
        detail::fan_picture(fan.rays, fan.closure_left, fan.closure_right, fan.depth), out_path,
        depth_label);
}

} // namespace nilcone
