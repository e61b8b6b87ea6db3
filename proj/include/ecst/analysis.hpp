#pragma once

// Worst-case (minimum over all input states) average fidelity, its closed
// forms at the two featured channels, the fidelity gap between them, and the
// parameter-sweep surfaces.
//
// The objective F_av(omega, xi) is smooth and low-dimensional, so the
// minimizer is exhaustive-then-local: a 61 x 121 coarse grid over
// (omega, xi) followed by per-axis golden-section refinement from the best
// grid point down to an interval width of 1e-7. That certifies the minimum to
// well below 1e-9 and is robust against the several shallow local minima that
// appear near phi ~ pi/2.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "ecst/cat_algebra.hpp"
#include "ecst/ecs.hpp"
#include "ecst/errors.hpp"
#include "ecst/protocol.hpp"

namespace ecst {

struct min_fidelity_result {
    double f_min{};
    double omega_star{};
    double xi_star{};
    strategy_id strategy{};
};

namespace detail {

// Golden-section minimize f over [lo, hi] down to width tol; returns arg.
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

} // namespace detail

/// Global minimum of average_fidelity over the input-state angles, with the
/// strategy picked by select_strategy(phi). On a xi-degenerate objective the
/// smallest minimizing xi is reported.
inline min_fidelity_result min_average_fidelity(const ecs_params& ch) {
    const strategy_id strat = select_strategy(ch.phi);
    const auto objective = [&](double omega, double xi) {
        return average_fidelity(omega, xi, ch, strat);
    };

    constexpr int n_omega = 61;
    constexpr int n_xi = 121;
    const double omega_step = M_PI / (n_omega - 1);
    const double xi_step = 2.0 * M_PI / n_xi; // [0, 2pi), periodic axis

    double best_f = std::numeric_limits<double>::infinity();
    double best_omega = 0.0, best_xi = 0.0;
    for (int i = 0; i < n_omega; ++i) {
        const double omega = i * omega_step;
        for (int j = 0; j < n_xi; ++j) {
            const double xi = j * xi_step;
            const double f = objective(omega, xi);
            if (f < best_f) {
                best_f = f;
                best_omega = omega;
                best_xi = xi;
            }
        }
    }

    // Coordinate descent; a refined coordinate is kept only on strict
    // improvement, so a flat (degenerate) axis keeps its grid value.
    constexpr double width_tol = 1e-7;
    for (int sweep = 0; sweep < 3; ++sweep) {
        const double omega_cand = detail::golden_section(
            [&](double w) { return objective(w, best_xi); },
            std::max(0.0, best_omega - omega_step), std::min(M_PI, best_omega + omega_step),
            width_tol);
        if (objective(omega_cand, best_xi) < best_f) {
            best_omega = omega_cand;
            best_f = objective(best_omega, best_xi);
        }
        const double xi_cand = detail::golden_section(
            [&](double xi) { return objective(best_omega, xi); },
            std::max(0.0, best_xi - xi_step), std::min(2.0 * M_PI, best_xi + xi_step),
            width_tol);
        if (objective(best_omega, xi_cand) < best_f) {
            best_xi = xi_cand;
            best_f = objective(best_omega, best_xi);
        }
    }
    return min_fidelity_result{best_f, best_omega, best_xi, strat};
}

/// Worst-case fidelity of the featured non-maximally entangled channel
/// (theta = pi/2, phi = 0): 1 - x^2 (1+x^2) / [2 (1+x^4)]. Finite at
/// alpha_sq = 0, where it equals 1/2.
inline double fmin_nmecs_closed(double alpha_sq) {
    if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
        throw domain_error("alpha_sq must be finite and >= 0");
    const double x2 = std::exp(-2.0 * alpha_sq);
    return 1.0 - x2 * (1.0 + x2) / (2.0 * (1.0 + x2 * x2));
}

/// Worst-case fidelity of the maximally entangled channel
/// (theta = pi/2, phi = pi): 1 - 2 x^2 / (1+x^2)^2.
inline double fmin_mecs_closed(double alpha_sq) {
    if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
        throw domain_error("alpha_sq must be finite and >= 0");
    const double x2 = std::exp(-2.0 * alpha_sq);
    return 1.0 - 2.0 * x2 / ((1.0 + x2) * (1.0 + x2));
}

/// D = x^2 (3+x^4)(1-x^2) / [2 (1+x^4)(1+x^2)^2], identically the difference
/// of the two closed forms above.
inline double fidelity_gap(double alpha_sq) {
    if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq))
        throw domain_error("alpha_sq must be finite and >= 0");
    const double x2 = std::exp(-2.0 * alpha_sq);
    const double x4 = x2 * x2;
    return x2 * (3.0 + x4) * (1.0 - x2) /
           (2.0 * (1.0 + x4) * (1.0 + x2) * (1.0 + x2));
}

struct sweep_record {
    double alpha_sq{};
    double theta{};
    double phi{};
    double f_min{};
    double omega_star{};
    double xi_star{};
    double concurrence{};
};

/// One record per (theta, phi) grid point, in grid order (theta major).
/// phi = 2pi is accepted on the grid and evaluated at its 0 alias.
inline std::vector<sweep_record> sweep_surface(const coherent_alpha& alpha,
                                               const std::vector<double>& theta_grid,
                                               const std::vector<double>& phi_grid) {
    if (theta_grid.empty() || phi_grid.empty()) throw domain_error("sweep grids must be nonempty");
    std::vector<sweep_record> records;
    records.reserve(theta_grid.size() * phi_grid.size());
    for (const double theta : theta_grid) {
        for (const double phi : phi_grid) {
            const double phi_eval = (phi == 2.0 * M_PI) ? 0.0 : phi;
            const ecs_params ch(alpha, theta, phi_eval);
            const min_fidelity_result r = min_average_fidelity(ch);
            records.push_back(sweep_record{alpha.alpha_sq(), theta, phi, r.f_min, r.omega_star,
                                           r.xi_star, concurrence_closed(ch)});
        }
    }
    return records;
}

struct gap_point {
    double alpha_sq{};
    double f1{};
    double f2{};
    double d{};
};

struct gap_curve_result {
    std::vector<gap_point> points;
    std::size_t argmax{}; // index of the largest d
};

/// Sample the two closed forms and their difference on an inclusive linear
/// grid of `steps` points over [lo, hi].
inline gap_curve_result gap_curve(double lo, double hi, int steps) {
    if (!(lo >= 0.0) || !(hi > lo) || steps < 2)
        throw domain_error("gap curve needs 0 <= lo < hi and steps >= 2");
    gap_curve_result result;
    result.points.reserve(static_cast<std::size_t>(steps));
    double best_d = -1.0;
    for (int i = 0; i < steps; ++i) {
        const double a2 = lo + (hi - lo) * i / (steps - 1);
        const gap_point pt{a2, fmin_nmecs_closed(a2), fmin_mecs_closed(a2), fidelity_gap(a2)};
        if (pt.d > best_d) {
            best_d = pt.d;
            result.argmax = result.points.size();
        }
        result.points.push_back(pt);
    }
    return result;
}

} // namespace ecst
