#include "blpack/io.hpp"

#include "blpack/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace blpack {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int as_int(const Json& j, const char* what)
{
    if (!j.is_number_integer()) schema_error(std::string(what) + " must be an integer");
    return j.get<int>();
}

double as_double(const Json& j, const char* what)
{
    if (!j.is_number()) schema_error(std::string(what) + " must be a number");
    return j.get<double>();
}

BranchStructure branch_from_json(const Json& j)
{
    BranchStructure b;
    if (j.is_null()) return b;
    if (!j.is_array()) schema_error("branch must be an array");
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2) schema_error("branch entries are [vertex, order] pairs");
        b.entries.push_back({as_int(entry[0], "branch vertex"), as_int(entry[1], "branch order")});
    }
    return b;
}

Json branch_to_json(const BranchStructure& b)
{
    Json out = Json::array();
    for (const auto& e : b.entries) out.push_back({e.vertex, e.order});
    return out;
}

}  // namespace

Json complex_to_json(const Triangulation& t, const BranchStructure& b)
{
    Json faces = Json::array();
    for (const auto& f : t.faces()) faces.push_back({f[0], f[1], f[2]});
    return {{"faces", faces}, {"branch", branch_to_json(b)}};
}

ComplexInput complex_from_json(const Json& j)
{
    const Json& faces = field(j, "faces");
    if (!faces.is_array()) schema_error("faces must be an array");
    std::vector<Face> list;
    for (const auto& f : faces) {
        if (!f.is_array() || f.size() != 3) schema_error("faces are vertex triples");
        list.push_back({as_int(f[0], "face vertex"), as_int(f[1], "face vertex"), as_int(f[2], "face vertex")});
    }
    ComplexInput out;
    out.complex = build_triangulation(std::move(list));
    if (j.contains("branch")) out.branch = branch_from_json(j.at("branch"));
    return out;
}

Json packing_to_json(const Packing& p)
{
    Json circles = Json::array();
    for (int v = 0; v < p.complex.num_vertices(); ++v) {
        circles.push_back({{"v", v}, {"cx", p.center(v).real()}, {"cy", p.center(v).imag()}, {"r", p.radius(v)}});
    }
    return {{"complex", complex_to_json(p.complex)},
            {"branch", branch_to_json(p.branch)},
            {"circles", circles},
            {"report", {{"sweeps", p.report.sweeps}, {"max_residual", p.report.max_residual}}}};
}

Packing packing_from_json(const Json& j)
{
    const auto input = complex_from_json(field(j, "complex"));
    const BranchStructure b = j.contains("branch") ? branch_from_json(j.at("branch")) : input.branch;
    const Json& list = field(j, "circles");
    if (!list.is_array()) schema_error("circles must be an array");
    const int n = input.complex.num_vertices();
    if (static_cast<int>(list.size()) != n) schema_error("need exactly one circle per vertex");
    std::vector<EuclideanCircle> circles(n);
    std::vector<bool> seen(n, false);
    for (const auto& c : list) {
        const int v = as_int(field(c, "v"), "circle vertex");
        if (v < 0 || v >= n || seen[v]) schema_error("circle vertex ids must cover 0..n-1 once");
        seen[v] = true;
        circles[v] = {{as_double(field(c, "cx"), "cx"), as_double(field(c, "cy"), "cy")}, as_double(field(c, "r"), "r")};
    }
    Packing p = assemble_packing(input.complex, b, std::move(circles));
    if (j.contains("report")) {
        const Json& r = j.at("report");
        p.report.sweeps = as_int(field(r, "sweeps"), "sweeps");
        p.report.max_residual = as_double(field(r, "max_residual"), "max_residual");
    }
    return p;
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const size_t offset = e.byte == 0 ? 0 : e.byte - 1;
        int line = 1, column = 1;
        for (size_t i = 0; i < offset && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed JSON");
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_json(buffer.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& contents)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp);
        out << contents;
        out.flush();
        if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error(ErrorCode::IoError, "cannot rename " + tmp + " to " + path);
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace blpack
