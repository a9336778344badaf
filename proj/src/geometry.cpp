#include "blpack/geometry.hpp"

#include "blpack/error.hpp"

#include <algorithm>
#include <cmath>

namespace blpack {

HyperbolicRadius HyperbolicRadius::from_h(double h)
{
    if (std::isinf(h) && h > 0) return infinite();
    if (!(h > 0)) throw Error(ErrorCode::NonPositiveRadius, "hyperbolic radius must be positive");
    return {std::exp(-2.0 * h), -std::expm1(-2.0 * h)};
}

HyperbolicRadius HyperbolicRadius::from_t(double t)
{
    if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorCode::NonPositiveRadius, "t-parameter must lie in [0,1)");
    return {t, 1.0 - t};
}

double HyperbolicRadius::s() const { return std::sqrt(t_); }

double HyperbolicRadius::h() const
{
    if (is_infinite()) return std::numeric_limits<double>::infinity();
    return t_ < 0.5 ? -0.5 * std::log(t_) : -0.5 * std::log1p(-omt_);
}

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d, bool disc_preserving)
    : disc_preserving_(disc_preserving)
{
    const Complex det = a * d - b * c;
    if (std::abs(det) == 0.0) throw Error(ErrorCode::InvalidArgument, "singular Mobius matrix");
    const Complex scale = 1.0 / std::sqrt(det);
    a_ = a * scale;
    b_ = b * scale;
    c_ = c * scale;
    d_ = d * scale;
}

Complex MobiusTransform::operator()(Complex z) const
{
    const Complex den = c_ * z + d_;
    if (den == Complex(0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
    return (a_ * z + b_) / den;
}

Complex MobiusTransform::derivative(Complex z) const
{
    const Complex den = c_ * z + d_;
    return (a_ * d_ - b_ * c_) / (den * den);
}

MobiusTransform MobiusTransform::inverse() const { return {d_, -b_, -c_, a_, disc_preserving_}; }

MobiusTransform MobiusTransform::compose(const MobiusTransform& in) const
{
    return {a_ * in.a_ + b_ * in.c_, a_ * in.b_ + b_ * in.d_, c_ * in.a_ + d_ * in.c_, c_ * in.b_ + d_ * in.d_,
            disc_preserving_ && in.disc_preserving_};
}

bool MobiusTransform::projectively_equal(const MobiusTransform& o, double tol) const
{
    // Determinants are normalized to 1, so matrices agree up to sign.
    const std::array<Complex, 4> x{a_, b_, c_, d_}, y{o.a_, o.b_, o.c_, o.d_};
    double plus = 0, minus = 0;
    for (int i = 0; i < 4; ++i) {
        plus = std::max(plus, std::abs(x[i] - y[i]));
        minus = std::max(minus, std::abs(x[i] + y[i]));
    }
    return std::min(plus, minus) <= tol;
}

double euclidean_angle(double rv, double ru, double rw)
{
    if (!(rv > 0 && ru > 0 && rw > 0)) throw Error(ErrorCode::NonPositiveRadius, "radii must be positive");
    // Half-angle form of the law of cosines for sides rv+ru, rv+rw, ru+rw.
    return 2.0 * std::atan2(std::sqrt(ru * rw), std::sqrt(rv * (rv + ru + rw)));
}

double hyperbolic_angle(HyperbolicRadius hv, HyperbolicRadius hu, HyperbolicRadius hw)
{
    if (hv.is_infinite()) throw Error(ErrorCode::CenterRadiusInfinite, "angle at a horocycle is undefined");
    // tan^2(a/2) = tv (1-tu)(1-tw) / ((1-tv)(1 - tv tu tw))
    const double tv = hv.t();
    const double num = tv * hu.one_minus_t() * hw.one_minus_t();
    const double one_minus_prod = hv.one_minus_t() + tv * (hu.one_minus_t() + hu.t() * hw.one_minus_t());
    const double den = hv.one_minus_t() * one_minus_prod;
    return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

MobiusTransform mobius_from_three_points(const std::array<Complex, 3>& p, const std::array<Complex, 3>& q)
{
    auto check = [](const std::array<Complex, 3>& x) {
        const double scale = 1.0 + std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
        for (int i = 0; i < 3; ++i) {
            if (std::abs(x[i] - x[(i + 1) % 3]) <= 1e-15 * scale) {
                throw Error(ErrorCode::CoincidentPoints, "three distinct points required");
            }
        }
    };
    check(p);
    check(q);
    // Sends x0 -> 0, x1 -> 1, x2 -> infinity.
    auto normalizer = [](const std::array<Complex, 3>& x) {
        return MobiusTransform(x[1] - x[2], -x[0] * (x[1] - x[2]), x[1] - x[0], -x[2] * (x[1] - x[0]), false);
    };
    MobiusTransform m = normalizer(q).inverse().compose(normalizer(p));
    const bool disc = maps_disc_to_itself(m, 1e-10);
    return {m.a(), m.b(), m.c(), m.d(), disc};
}

MobiusTransform disc_automorphism(Complex a, double theta)
{
    if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::PointOutsideDisc, "automorphism center must lie in the open disc");
    const Complex rot = std::polar(1.0, theta);
    return {rot, -rot * a, -std::conj(a), 1.0, true};
}

std::pair<Complex, double> automorphism_parameters(const MobiusTransform& m)
{
    const Complex a = m.inverse()(0.0);
    return {a, std::arg(m.derivative(a))};
}

bool maps_disc_to_itself(const MobiusTransform& m, double tol)
{
    constexpr int samples = 16;
    for (int k = 0; k < samples; ++k) {
        const Complex z = std::polar(1.0, 2.0 * M_PI * (k + 0.25) / samples);
        if (std::abs(std::abs(m(z)) - 1.0) > tol) return false;
    }
    return std::abs(m(0.0)) < 1.0;
}

EuclideanCircle apply_mobius_to_circle(const MobiusTransform& m, const EuclideanCircle& circle)
{
    const Complex c0 = circle.center;
    const double r = circle.radius;
    if (m.c() == Complex(0.0)) {
        const Complex scale = m.a() / m.d();
        return {scale * c0 + m.b() / m.d(), std::abs(scale) * r};
    }
    const Complex pole = -m.d() / m.c();
    const double dist = std::abs(pole - c0);
    if (std::abs(dist - r) <= 1e-14 * std::max(1.0, r)) {
        throw Error(ErrorCode::ImageIsLine, "circle passes through the pole");
    }
    // The image center is the image of the pole's reflection in the circle.
    const Complex center = dist == 0.0 ? m.a() / m.c() : m(c0 + r * r / std::conj(pole - c0));
    const Complex far = dist == 0.0 ? c0 + r : c0 + r * (c0 - pole) / dist;
    return {center, std::abs(m(far) - center)};
}

Complex hyperbolic_center(const EuclideanCircle& c)
{
    const double rho = std::abs(c.center);
    if (!(rho + c.radius < 1.0)) throw Error(ErrorCode::PointOutsideDisc, "circle must lie strictly inside the disc");
    if (rho == 0.0) return 0.0;
    const double x = std::tanh(0.5 * (std::atanh(rho - c.radius) + std::atanh(rho + c.radius)));
    return c.center * (x / rho);
}

HyperbolicRadius hyperbolic_radius(const EuclideanCircle& c)
{
    const double rho = std::abs(c.center);
    if (!(rho + c.radius < 1.0)) return HyperbolicRadius::infinite();
    return HyperbolicRadius::from_h(std::atanh(rho + c.radius) - std::atanh(rho - c.radius));
}

EuclideanCircle euclidean_from_hyperbolic(Complex center, HyperbolicRadius r)
{
    if (r.is_infinite()) throw Error(ErrorCode::InvalidArgument, "horocycles have no hyperbolic center");
    const double sigma = std::tanh(0.5 * r.h());
    const double x2 = std::norm(center);
    const double den = 1.0 - sigma * sigma * x2;
    return {center * ((1.0 - sigma * sigma) / den), sigma * (1.0 - x2) / den};
}

Complex tangency_point(const EuclideanCircle& a, const EuclideanCircle& b)
{
    const Complex d = b.center - a.center;
    const double len = std::abs(d);
    if (len == 0.0) return a.center;
    return a.center + d * (a.radius / (a.radius + b.radius));
}

}  // namespace blpack
