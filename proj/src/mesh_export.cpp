#include <algorithm>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "zonokit/geometry.hpp"

namespace zonokit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

ordered_json options_json(const PlotOptions& options) {
    ordered_json o;
    o["color"] = options.color;
    o["opacity"] = options.opacity;
    o["edges"] = options.edges;
    return o;
}

} // namespace

std::string mesh_to_json(const Mesh& mesh, const PlotOptions& options) {
    ordered_json j;
    j["v"] = ordered_json::array();
    for (Eigen::Index i = 0; i < mesh.v.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index k = 0; k < mesh.v.cols(); ++k) row.push_back(mesh.v(i, k));
        j["v"].push_back(std::move(row));
    }
    j["f"] = ordered_json::array();
    for (Eigen::Index i = 0; i < mesh.f.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index k = 0; k < mesh.f.cols(); ++k) row.push_back(mesh.f(i, k));
        j["f"].push_back(std::move(row));
    }
    j["options"] = options_json(options);
    return j.dump(2) + "\n";
}

std::string meshes_to_svg(const std::vector<Mesh>& meshes,
                          const std::vector<PlotOptions>& options) {
    double lo_x = 0.0, lo_y = 0.0, hi_x = 1.0, hi_y = 1.0;
    bool seen = false;
    for (const Mesh& m : meshes) {
        if (m.v.cols() != 2)
            throw DimensionError("SVG export needs 2D meshes");
        for (Eigen::Index i = 0; i < m.v.rows(); ++i) {
            if (!seen) {
                lo_x = hi_x = m.v(i, 0);
                lo_y = hi_y = m.v(i, 1);
                seen = true;
            }
            lo_x = std::min(lo_x, m.v(i, 0));
            hi_x = std::max(hi_x, m.v(i, 0));
            lo_y = std::min(lo_y, m.v(i, 1));
            hi_y = std::max(hi_y, m.v(i, 1));
        }
    }
    const double pad_x = 0.05 * std::max(hi_x - lo_x, 1e-9);
    const double pad_y = 0.05 * std::max(hi_y - lo_y, 1e-9);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += fmt(lo_x - pad_x) + " " + fmt(-(hi_y + pad_y)) + " ";
    out += fmt(hi_x - lo_x + 2 * pad_x) + " " + fmt(hi_y - lo_y + 2 * pad_y);
    out += "\">\n";
    for (std::size_t s = 0; s < meshes.size(); ++s) {
        const Mesh& m = meshes[s];
        const PlotOptions opt = s < options.size() ? options[s] : PlotOptions();
        for (Eigen::Index i = 0; i < m.f.rows(); ++i) {
            std::string d;
            for (Eigen::Index k = 0; k < m.f.cols(); ++k) {
                const int vi = m.f(i, k);
                if (vi < 0) break;
                // The y axis is flipped so mathematical up is screen up.
                d += (k == 0 ? "M " : "L ");
                d += fmt(m.v(vi, 0)) + " " + fmt(-m.v(vi, 1)) + " ";
            }
            d += "Z";
            out += "  <path d=\"" + d + "\" fill=\"" + opt.color +
                   "\" fill-opacity=\"" + fmt(opt.opacity) + "\" stroke=\"" +
                   (opt.edges ? "black" : "none") + "\" stroke-width=\"" +
                   fmt(0.01 * std::max(hi_x - lo_x, hi_y - lo_y)) + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

std::string mesh_to_obj(const Mesh& mesh) {
    if (mesh.v.cols() != 3)
        throw DimensionError("OBJ export needs 3D meshes");
    std::string out;
    for (Eigen::Index i = 0; i < mesh.v.rows(); ++i) {
        out += "v " + fmt(mesh.v(i, 0)) + " " + fmt(mesh.v(i, 1)) + " " +
               fmt(mesh.v(i, 2)) + "\n";
    }
    for (Eigen::Index i = 0; i < mesh.f.rows(); ++i) {
        out += "f";
        for (Eigen::Index k = 0; k < mesh.f.cols(); ++k) {
            const int vi = mesh.f(i, k);
            if (vi < 0) break;
            out += " " + std::to_string(vi + 1);
        }
        out += "\n";
    }
    return out;
}

} // namespace zonokit
