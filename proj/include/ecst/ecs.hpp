#pragma once

// The entangled coherent channel
//   |E>_{1,2} = N (cos(theta/2) |alpha,alpha> + sin(theta/2) e^{i phi} |-alpha,-alpha>)
// with N = (1 + x^4 sin(theta) cos(phi))^{-1/2}, its cat-basis amplitudes and
// its concurrence, both in closed form and through the generic pure-two-qubit
// relation C = 2 |a_pp a_mm - a_pm a_mp|.

#include <cmath>
#include <complex>
#include <utility>

#include "ecst/cat_algebra.hpp"
#include "ecst/errors.hpp"

namespace ecst {

/// Channel parameters: amplitude plus entanglement angles.
struct ecs_params {
    coherent_alpha alpha;
    double theta; // [0, pi]
    double phi;   // [0, 2pi)

    ecs_params(coherent_alpha a, double theta_, double phi_)
        : alpha(a), theta(theta_), phi(phi_) {
        if (!(theta >= 0.0 && theta <= M_PI)) throw domain_error("theta must lie in [0, pi]");
        if (!(phi >= 0.0 && phi < 2.0 * M_PI)) throw domain_error("phi must lie in [0, 2pi)");
    }
};

/// C_+- = cos(theta/2) +- sin(theta/2) e^{i phi}; |C_+|^2 + |C_-|^2 = 2.
inline std::pair<cplx, cplx> c_coefficients(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= M_PI)) throw domain_error("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * M_PI)) throw domain_error("phi must lie in [0, 2pi)");
    const cplx half = std::sin(theta / 2.0) * std::polar(1.0, phi);
    return {std::cos(theta / 2.0) + half, std::cos(theta / 2.0) - half};
}

/// Channel normalization N = (1 + x^4 sin(theta) cos(phi))^{-1/2}.
inline double norm_constant(const ecs_params& p) {
    const double x2 = p.alpha.x() * p.alpha.x();
    return 1.0 / std::sqrt(1.0 + x2 * x2 * std::sin(p.theta) * std::cos(p.phi));
}

/// Channel coefficients on the two-qubit cat basis (|++>, |+->, |-+>, |-->).
struct ecs_qubit_amplitudes {
    cplx a_pp{}, a_pm{}, a_mp{}, a_mm{};

    double norm_sq() const {
        return std::norm(a_pp) + std::norm(a_pm) + std::norm(a_mp) + std::norm(a_mm);
    }
};

/// a_pp = (N/2) C_+ (1+x^2), a_pm = a_mp = (N/2) C_- (1-x^4)^{1/2},
/// a_mm = (N/2) C_+ (1-x^2). Unit norm by construction.
inline ecs_qubit_amplitudes qubit_amplitudes(const ecs_params& p) {
    const double x2 = p.alpha.x() * p.alpha.x();
    const auto [c_plus, c_minus] = c_coefficients(p.theta, p.phi);
    const double n_half = norm_constant(p) / 2.0;
    const cplx cross = n_half * c_minus * std::sqrt(1.0 - x2 * x2);
    return ecs_qubit_amplitudes{n_half * c_plus * (1.0 + x2), cross, cross,
                                n_half * c_plus * (1.0 - x2)};
}

/// Closed form C = (1 - x^4) sin(theta) (1 + x^4 sin(theta) cos(phi))^{-1}.
inline double concurrence_closed(const ecs_params& p) {
    const double x2 = p.alpha.x() * p.alpha.x();
    const double x4 = x2 * x2;
    return (1.0 - x4) * std::sin(p.theta) /
           (1.0 + x4 * std::sin(p.theta) * std::cos(p.phi));
}

/// Pure-state concurrence 2 |a_pp a_mm - a_pm a_mp| of unit-norm amplitudes.
inline double concurrence_numeric(const ecs_qubit_amplitudes& a) {
    if (std::abs(a.norm_sq() - 1.0) > 1e-9)
        throw norm_error("qubit amplitudes are not unit norm");
    return 2.0 * std::abs(a.a_pp * a.a_mm - a.a_pm * a.a_mp);
}

} // namespace ecst
