// Command-line front end: pack, validate, map, approx, distortion, schwarz,
// render, check. Exit status 0 on success, 1 on a violated check, 2 on bad input.

#include "blpack/check.hpp"
#include "blpack/error.hpp"
#include "blpack/experiments.hpp"
#include "blpack/io.hpp"
#include "blpack/maps.hpp"
#include "blpack/render.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace blpack;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int parse_int(const std::string& s)
{
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw Error(ErrorCode::InvalidArgument, "not an integer: " + s);
    return v;
}

double parse_double(const std::string& s)
{
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw Error(ErrorCode::InvalidArgument, "not a number: " + s);
    return v;
}

// "0.3", "0.4i", "0.1-0.2i"
Complex parse_complex(const std::string& s)
{
    if (s.empty() || s.back() != 'i') return parse_double(s);
    const std::string body = s.substr(0, s.size() - 1);
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            const std::string im = body.substr(k);
            return {parse_double(body.substr(0, k)), im == "+" || im == "-" ? (im == "-" ? -1.0 : 1.0) : parse_double(im)};
        }
    }
    return {0.0, body.empty() || body == "+" ? 1.0 : body == "-" ? -1.0 : parse_double(body)};
}

// "3,5,7" or "2..8"
std::vector<int> parse_levels(const std::string& s)
{
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        const int lo = parse_int(s.substr(0, dots)), hi = parse_int(s.substr(dots + 2));
        std::vector<int> out;
        for (int n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    std::vector<int> out;
    for (const auto& item : split(s, ',')) out.push_back(parse_int(item));
    return out;
}

// "v:k,v:k" with "center" standing for vertex 0.
BranchStructure parse_branch(const std::string& s)
{
    BranchStructure b;
    for (const auto& item : split(s, ',')) {
        const auto colon = item.find(':');
        const std::string vs = item.substr(0, colon);
        const int v = vs == "center" ? 0 : parse_int(vs);
        const int k = colon == std::string::npos ? 1 : parse_int(item.substr(colon + 1));
        b.entries.push_back({v, k});
    }
    return b;
}

void emit(const Json& j, const std::string& path)
{
    if (path.empty()) {
        std::cout << dump_json(j);
    } else {
        write_file_atomic(path, dump_json(j));
    }
}

int report_exit(const ExperimentReport& r, const std::string& path)
{
    emit(r.to_json(), path);
    for (const auto& v : r.verdicts) {
        std::cerr << (v.pass ? "pass " : "FAIL ") << v.rule << ": " << v.detail << "\n";
    }
    return r.passed() ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Branched circle packings of the unit disc and discrete Blaschke products"};
    app.require_subcommand(1);

    std::string input, second, output, branch_text, eval_text, mobius_path, zeros_text = "0,0.5", levels_text;
    double tol = 1e-10;
    std::vector<int> norm;
    bool want_mu = false, want_valence = false, want_dilatation = false;
    int v0 = -1;

    auto* pack = app.add_subcommand("pack", "solve and lay out a packing");
    pack->add_option("complex", input, "complex JSON")->required();
    pack->add_option("--branch", branch_text, "branch vertices v:k,... (overrides the file)");
    pack->add_option("--tol", tol, "angle-sum tolerance");
    pack->add_option("--normalize", norm, "u0 u1")->expected(2);
    pack->add_option("-o,--output", output, "output file (default stdout)");

    auto* validate = app.add_subcommand("validate", "check a branch structure");
    validate->add_option("complex", input, "complex JSON")->required();
    validate->add_option("--branch", branch_text, "branch vertices v:k,...");

    auto* map = app.add_subcommand("map", "evaluate the cp-map between two packings");
    map->add_option("domain", input, "univalent packing JSON")->required();
    map->add_option("range", second, "range packing JSON")->required();
    map->add_option("--eval", eval_text, "point x,y");
    map->add_flag("--mu", want_mu, "local distortion of the range");
    map->add_flag("--valence", want_valence, "valence of the range and sampled map valence");
    map->add_flag("--dilatation", want_dilatation, "max per-face dilatation");
    map->add_option("--check-mobius", mobius_path, "packing to compare with the domain mod Mobius");

    auto* approx = app.add_subcommand("approx", "approximation of a classical Blaschke product");
    approx->add_option("--zeros", zeros_text, "zeros, e.g. 0,0.5 or 0,0.4i");
    approx->add_option("--levels", levels_text, "hex-ball levels, e.g. 3,5,7 or 2..8")->required();
    approx->add_option("--tol", tol, "angle-sum tolerance");
    approx->add_option("-o,--output", output, "report file (default stdout)");

    auto* distortion = app.add_subcommand("distortion", "local distortion and dilatation plateau");
    distortion->add_option("--levels", levels_text, "hex-ball levels")->required();
    distortion->add_option("--branch", branch_text, "branch vertices, e.g. center:1")->required();
    distortion->add_option("--tol", tol, "angle-sum tolerance");
    distortion->add_option("-o,--output", output, "report file (default stdout)");

    auto* schwarz = app.add_subcommand("schwarz", "branched against univalent radius at v0");
    schwarz->add_option("complex", input, "complex JSON")->required();
    schwarz->add_option("--branch", branch_text, "branch vertices v:k,... (overrides the file)");
    schwarz->add_option("--v0", v0, "interior vertex (default: smallest interior id)");
    schwarz->add_option("-o,--output", output, "report file (default stdout)");

    auto* render = app.add_subcommand("render", "draw a packing as SVG");
    render->add_option("packing", input, "packing JSON")->required();
    render->add_option("-o,--output", output, "SVG file")->required();

    auto* check = app.add_subcommand("check", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (*pack) {
            auto in = complex_from_json(read_json_file(input));
            if (!branch_text.empty()) in.branch = parse_branch(branch_text);
            SolverOptions opts;
            opts.tol_angle = tol;
            Packing p = compute_packing(in.complex, in.branch, opts);
            if (!norm.empty()) p = normalize(p, norm[0], norm[1]);
            emit(packing_to_json(p), output);
            return kPass;
        }
        if (*validate) {
            auto in = complex_from_json(read_json_file(input));
            if (!branch_text.empty()) in.branch = parse_branch(branch_text);
            const auto result = validate_branch_structure(in.complex, in.branch);
            Json out = {{"valid", result.valid}, {"witness", result.witness}};
            std::cout << out.dump() << "\n";
            return result.valid ? kPass : kViolation;
        }
        if (*map) {
            const CpMap f(packing_from_json(read_json_file(input)), packing_from_json(read_json_file(second)));
            int status = kPass;
            if (!eval_text.empty()) {
                const auto xy = split(eval_text, ',');
                if (xy.size() != 2) throw Error(ErrorCode::InvalidArgument, "--eval expects x,y");
                const Complex z(parse_double(xy[0]), parse_double(xy[1]));
                const Complex w = extension_eval(f, z);
                std::cout << Json{{"x", z.real()}, {"y", z.imag()}, {"fx", w.real()}, {"fy", w.imag()}}.dump() << "\n";
            }
            if (want_mu) {
                for (int v = 0; v < f.complex().num_vertices(); ++v) {
                    std::cout << Json{{"v", v}, {"mu", local_distortion(f.range(), v)}}.dump() << "\n";
                }
            }
            if (want_valence) {
                const int val = valence(f.range());
                const int sampled = sampled_map_valence(f);
                std::cout << Json{{"valence", val}, {"sampled_map_valence", sampled},
                                  {"expected", 1 + f.range().branch.total_order()}}
                                 .dump()
                          << "\n";
                if (sampled > val || val != 1 + f.range().branch.total_order()) status = kViolation;
            }
            if (want_dilatation) std::cout << Json{{"max_dilatation", per_face_dilatation(f)}}.dump() << "\n";
            if (!mobius_path.empty()) {
                const auto eq = equivalent_mod_mobius(f.domain(), packing_from_json(read_json_file(mobius_path)), 1e-6);
                const auto [a, theta] = automorphism_parameters(eq.transform);
                std::cout << Json{{"equivalent", eq.equivalent}, {"discrepancy", eq.discrepancy},
                                  {"a", {a.real(), a.imag()}}, {"theta", theta}}
                                 .dump()
                          << "\n";
                if (!eq.equivalent) status = kViolation;
            }
            return status;
        }
        ExperimentOptions eo;
        eo.tol_angle = tol;
        if (*approx) {
            std::vector<Complex> zeros;
            for (const auto& z : split(zeros_text, ',')) zeros.push_back(parse_complex(z));
            return report_exit(experiment_approximation(zeros, parse_levels(levels_text), eo), output);
        }
        if (*distortion) {
            return report_exit(experiment_distortion(parse_levels(levels_text), parse_branch(branch_text), eo), output);
        }
        if (*schwarz) {
            auto in = complex_from_json(read_json_file(input));
            if (!branch_text.empty()) in.branch = parse_branch(branch_text);
            if (v0 < 0) {
                const auto interior = in.complex.interior_vertices();
                if (interior.empty()) throw Error(ErrorCode::InvalidArgument, "complex has no interior vertex");
                v0 = interior.front();
            }
            return report_exit(experiment_schwarz(in.complex, in.branch, v0, eo), output);
        }
        if (*render) {
            write_svg(packing_from_json(read_json_file(input)), output);
            return kPass;
        }
        if (*check) {
            bool ok = true;
            for (const auto& r : run_invariant_suite()) {
                std::cout << (r.pass ? "pass " : "FAIL ") << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
                ok = ok && r.pass;
            }
            return ok ? kPass : kViolation;
        }
    } catch (const Error& e) {
        std::cerr << "blpack: " << e.what() << "\n";
        switch (e.code()) {
        case ErrorCode::InvalidBranchStructure:
        case ErrorCode::NoConvergence:
        case ErrorCode::LayoutInconsistent:
        case ErrorCode::BranchDriftedOutside:
            return kViolation;
        default:
            return kInputError;
        }
    } catch (const std::exception& e) {
        std::cerr << "blpack: " << e.what() << "\n";
        return kInputError;
    }
    return kPass;
}
