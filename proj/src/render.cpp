#include "blpack/render.hpp"

#include "blpack/io.hpp"

#include <cstdio>
#include <sstream>

namespace blpack {

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

std::string render_svg(const Packing& p, int size)
{
    const double half = 0.5 * size;
    const double scale = 0.48 * size;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    out << "<circle cx=\"" << num(half) << "\" cy=\"" << num(half) << "\" r=\"" << num(scale)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    for (int v = 0; v < p.complex.num_vertices(); ++v) {
        const auto& c = p.circle(v);
        const bool branch = p.branch.order_at(v) > 0;
        // SVG y axis points down.
        out << "<circle cx=\"" << num(half + scale * c.center.real()) << "\" cy=\""
            << num(half - scale * c.center.imag()) << "\" r=\"" << num(scale * c.radius) << "\" fill=\""
            << (branch ? "black" : "none") << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const Packing& p, const std::string& path, int size) { write_file_atomic(path, render_svg(p, size)); }

}  // namespace blpack
