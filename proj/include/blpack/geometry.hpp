#pragma once

#include <array>
#include <complex>
#include <limits>
#include <utility>

namespace blpack {

using Complex = std::complex<double>;

struct EuclideanCircle {
    Complex center;
    double radius = 0.0;
};

/// Hyperbolic radius in the Poincare disc, stored as t = exp(-2h) so that
/// horocycles (h = infinity) are the regular value t = 0. The complement
/// 1 - t is carried separately to keep precision for small h.
class HyperbolicRadius {
public:
    HyperbolicRadius() = default;

    static HyperbolicRadius infinite() { return {0.0, 1.0}; }
    static HyperbolicRadius from_h(double h);
    static HyperbolicRadius from_t(double t);

    bool is_infinite() const { return t_ == 0.0; }
    double t() const { return t_; }
    double one_minus_t() const { return omt_; }
    /// exp(-h); zero for horocycles.
    double s() const;
    double h() const;

private:
    HyperbolicRadius(double t, double omt) : t_(t), omt_(omt) {}

    double t_ = 0.5;
    double omt_ = 0.5;
};

/// z -> (a z + b) / (c z + d), kept with unit determinant.
class MobiusTransform {
public:
    MobiusTransform() = default;
    MobiusTransform(Complex a, Complex b, Complex c, Complex d, bool disc_preserving = false);

    static MobiusTransform identity() { return {}; }

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;
    MobiusTransform inverse() const;
    /// (*this) o inner.
    MobiusTransform compose(const MobiusTransform& inner) const;

    bool disc_preserving() const { return disc_preserving_; }
    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    /// Equality up to a scalar multiple of the matrix.
    bool projectively_equal(const MobiusTransform& other, double tol) const;

private:
    Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
    bool disc_preserving_ = true;
};

/// Angle at the center of the v-circle in the triangle formed by three
/// mutually tangent circles with radii rv, ru, rw.
double euclidean_angle(double rv, double ru, double rw);

/// Hyperbolic counterpart of euclidean_angle. hu and hw may be horocycles;
/// hv must be finite.
double hyperbolic_angle(HyperbolicRadius hv, HyperbolicRadius hu, HyperbolicRadius hw);

/// The unique Mobius map with p[i] -> q[i]. The disc_preserving flag is set
/// when the map carries the unit circle to itself and 0 into the disc.
MobiusTransform mobius_from_three_points(const std::array<Complex, 3>& p, const std::array<Complex, 3>& q);

/// z -> e^{i theta} (z - a) / (1 - conj(a) z).
MobiusTransform disc_automorphism(Complex a, double theta);

/// Recovers (a, theta) of a disc automorphism written as above.
std::pair<Complex, double> automorphism_parameters(const MobiusTransform& m);

/// Sampled check that m maps the unit circle onto itself and 0 into the disc.
bool maps_disc_to_itself(const MobiusTransform& m, double tol = 1e-12);

EuclideanCircle apply_mobius_to_circle(const MobiusTransform& m, const EuclideanCircle& c);

/// Hyperbolic center of a circle lying strictly inside the unit disc.
Complex hyperbolic_center(const EuclideanCircle& c);
HyperbolicRadius hyperbolic_radius(const EuclideanCircle& c);
/// Euclidean circle of the hyperbolic circle with the given center and finite radius.
EuclideanCircle euclidean_from_hyperbolic(Complex center, HyperbolicRadius r);

/// Point where two externally tangent circles touch.
Complex tangency_point(const EuclideanCircle& a, const EuclideanCircle& b);

}  // namespace blpack
