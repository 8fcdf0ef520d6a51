#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace besov {

/// standard mollifier profile exp(-1/(1-u^2)) on (-1,1), zero outside
inline double bump(double u) {
    double a = 1.0 - u * u;
    if (a <= 0.0) return 0.0;
    return std::exp(-1.0 / a);
}

namespace detail {
inline double bump_integral(double a, double b) {
    using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
    return Q::integrate(bump, a, b, 6, 1e-14);
}
}  // namespace detail

/// integral of bump over (-1,1)
inline double bump_mass() {
    static const double m = detail::bump_integral(-1.0, 1.0);
    return m;
}

/// normalized cumulative bump: 0 at u <= -1, 1 at u >= 1; exact symmetry S(u) + S(-u) = 1
inline double bump_cdf(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (u > 0.0) return 1.0 - bump_cdf(-u);
    return detail::bump_integral(-1.0, u) / bump_mass();
}

/**
 * @brief Smooth step: 1 on [0,1], 0 on [3/2, inf), C-infinity in between.
 *
 * Every mask of both partitions is a difference of dilates of this function.
 */
inline double smooth_step(double r) {
    r = std::abs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 1.5) return 0.0;
    return 1.0 - bump_cdf(4.0 * (r - 1.0) - 1.0);
}

}  // namespace besov
