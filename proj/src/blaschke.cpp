#include "blpack/error.hpp"
#include "blpack/maps.hpp"

#include <cmath>

namespace blpack {

namespace {

using Poly = std::vector<Complex>;  // ascending coefficients

Poly multiply(const Poly& a, const Poly& b)
{
    Poly out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Poly derivative(const Poly& p)
{
    if (p.size() <= 1) return {0.0};
    Poly out(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
    return out;
}

Poly subtract(Poly a, const Poly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

void eval(const Poly& p, Complex z, Complex& value, Complex& slope)
{
    value = 0.0;
    slope = 0.0;
    for (size_t i = p.size(); i-- > 0;) {
        slope = slope * z + value;
        value = value * z + p[i];
    }
}

// Numerator and denominator of phi without the rotation.
void factors(const ClassicalBlaschke& phi, Poly& num, Poly& den)
{
    num = {1.0};
    den = {1.0};
    for (Complex a : phi.zeros) {
        num = multiply(num, {-a, 1.0});
        den = multiply(den, {1.0, -std::conj(a)});
    }
}

}  // namespace

Complex ClassicalBlaschke::eval(Complex z) const
{
    Complex out = rotation;
    for (Complex a : zeros) out *= (z - a) / (1.0 - std::conj(a) * z);
    return out;
}

Complex ClassicalBlaschke::derivative(Complex z) const
{
    // phi' = phi * sum (1 - |a|^2) / ((z - a)(1 - conj(a) z)), expanded to avoid z = a.
    Complex sum = 0.0;
    for (size_t j = 0; j < zeros.size(); ++j) {
        const Complex a = zeros[j];
        const Complex q = 1.0 - std::conj(a) * z;
        Complex term = rotation * (1.0 - std::norm(a)) / (q * q);
        for (size_t k = 0; k < zeros.size(); ++k) {
            if (k != j) term *= (z - zeros[k]) / (1.0 - std::conj(zeros[k]) * z);
        }
        sum += term;
    }
    return sum;
}

ClassicalBlaschke make_blaschke(std::vector<Complex> zeros, Complex rotation)
{
    for (Complex a : zeros) {
        if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::PointOutsideDisc, "Blaschke zeros must lie in the open disc");
    }
    if (std::abs(std::abs(rotation) - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "Blaschke rotation must have modulus one");
    }
    return {std::move(zeros), rotation};
}

Complex classical_blaschke_eval(const ClassicalBlaschke& phi, Complex z) { return phi.eval(z); }

std::vector<CriticalPoint> blaschke_critical_points(const ClassicalBlaschke& phi)
{
    const int needed = phi.degree() - 1;
    if (needed <= 0) return {};

    Poly num, den;
    factors(phi, num, den);
    // Critical points are the zeros of num' den - num den' inside the disc.
    Poly g = subtract(multiply(derivative(num), den), multiply(num, derivative(den)));
    while (g.size() > 1 && std::abs(g.back()) < 1e-300) g.pop_back();

    std::vector<Complex> roots;
    auto newton = [&](Complex z, bool deflate) -> std::pair<bool, Complex> {
        for (int iter = 0; iter < 200; ++iter) {
            Complex value, slope;
            eval(g, z, value, slope);
            if (value == Complex(0.0)) return {true, z};
            Complex log_slope = slope / value;
            if (deflate) {
                for (Complex r : roots) log_slope -= 1.0 / (z - r);
            }
            if (log_slope == Complex(0.0) || !std::isfinite(std::abs(log_slope))) return {false, z};
            const Complex step = 1.0 / log_slope;
            z -= step;
            if (!std::isfinite(std::abs(z)) || std::abs(z) > 10.0) return {false, z};
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) return {true, z};
        }
        return {false, z};
    };

    constexpr int grid = 21;
    while (static_cast<int>(roots.size()) < needed) {
        bool found = false;
        for (int i = 0; i < grid && !found; ++i) {
            for (int j = 0; j < grid && !found; ++j) {
                const Complex seed(-1.0 + 2.0 * i / (grid - 1), -1.0 + 2.0 * j / (grid - 1));
                if (std::abs(seed) >= 1.0) continue;
                const auto [ok, z] = newton(seed, true);
                if (ok && std::abs(z) < 1.0) {
                    roots.push_back(z);
                    found = true;
                }
            }
        }
        if (!found) {
            throw Error(ErrorCode::RootFindingFailed, "found " + std::to_string(roots.size()) + " of " +
                                                          std::to_string(needed) + " critical points");
        }
    }

    std::vector<CriticalPoint> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        int count = 1;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) < 1e-5) {
                used[j] = true;
                sum += roots[j];
                ++count;
            }
        }
        Complex point = sum / static_cast<double>(count);
        if (count == 1) {
            const auto [ok, z] = newton(point, false);
            if (ok && std::abs(z - point) < 1e-8) point = z;
        }
        out.push_back({point, count});
    }
    return out;
}

}  // namespace blpack
