#pragma once

// Coherent-state / cat-basis algebra.
//
// A coherent amplitude alpha defines the overlap parameter x = exp(-|alpha|^2),
// with <alpha|-alpha> = x^2. The orthonormal even/odd cat states
//   |+-> = [2(1 +- x^2)]^{-1/2} (|alpha> +- |-alpha>)
// turn a superposed coherent state eps_+|alpha> + eps_-|-alpha> into a genuine
// qubit A_+|+> + A_-|->. This header holds those types and the bidirectional
// coefficient maps.

#include <cmath>
#include <complex>

#include "ecst/errors.hpp"

namespace ecst {

using cplx = std::complex<double>;

inline bool is_finite(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Nonzero coherent amplitude. alpha = 0 is rejected: the odd cat state has a
/// vanishing normalization there and the qubit map would divide by zero.
class coherent_alpha {
  public:
    explicit coherent_alpha(cplx value) : value_(value) {
        if (!is_finite(value)) throw domain_error("coherent amplitude must be finite");
        if (std::norm(value) == 0.0) throw degenerate_alpha("alpha = 0 is not a valid cat-basis amplitude");
    }

    /// Real alpha = sqrt(alpha_sq), the CLI's mean-photon-number input.
    static coherent_alpha from_alpha_sq(double alpha_sq) {
        if (!std::isfinite(alpha_sq) || alpha_sq < 0.0)
            throw domain_error("alpha_sq must be finite and >= 0");
        return coherent_alpha(cplx(std::sqrt(alpha_sq), 0.0));
    }

    cplx value() const { return value_; }
    double alpha_sq() const { return std::norm(value_); }

    /// Overlap parameter x = exp(-|alpha|^2), real for any complex alpha.
    double x() const { return std::exp(-alpha_sq()); }

  private:
    cplx value_;
};

/// x = exp(-|alpha|^2), strictly inside (0, 1).
inline double overlap_x(const coherent_alpha& alpha) { return alpha.x(); }

/// Qubit coordinates on the orthonormal cat basis (|+>, |->).
struct cat_qubit {
    cplx a_plus{};
    cplx a_minus{};

    double norm_sq() const { return std::norm(a_plus) + std::norm(a_minus); }
    bool is_normalized(double tol = 1e-12) const { return std::abs(norm_sq() - 1.0) <= tol; }
    void require_normalized(double tol = 1e-12) const {
        if (!is_normalized(tol)) throw norm_error("cat qubit is not normalized");
    }
};

/// Coefficients on the non-orthogonal (|alpha>, |-alpha>) pair.
struct scs_coefficients {
    cplx eps_plus{};
    cplx eps_minus{};
    coherent_alpha alpha;

    /// |eps_+|^2 + |eps_-|^2 + 2 x^2 Re(eps_+^* eps_-); 1 when normalized.
    double norm_sq() const {
        const double x2 = alpha.x() * alpha.x();
        return std::norm(eps_plus) + std::norm(eps_minus) +
               2.0 * x2 * (std::conj(eps_plus) * eps_minus).real();
    }
    bool is_normalized(double tol = 1e-12) const { return std::abs(norm_sq() - 1.0) <= tol; }
    void require_normalized(double tol = 1e-12) const {
        if (!is_normalized(tol)) throw norm_error("SCS coefficients are not normalized");
    }
};

/// A_+ = cos(omega/2), A_- = sin(omega/2) e^{i xi}, omega in [0,pi], xi in [0,2pi).
inline cat_qubit angles_to_qubit(double omega, double xi) {
    if (!(omega >= 0.0 && omega <= M_PI)) throw domain_error("omega must lie in [0, pi]");
    if (!(xi >= 0.0 && xi < 2.0 * M_PI)) throw domain_error("xi must lie in [0, 2pi)");
    return cat_qubit{std::cos(omega / 2.0),
                     std::sin(omega / 2.0) * std::polar(1.0, xi)};
}

/// A_+- = (eps_+ +- eps_-) [(1 +- x^2)/2]^{1/2}.
inline cat_qubit epsilon_to_qubit(const scs_coefficients& s) {
    s.require_normalized();
    const double x2 = s.alpha.x() * s.alpha.x();
    return cat_qubit{(s.eps_plus + s.eps_minus) * std::sqrt((1.0 + x2) / 2.0),
                     (s.eps_plus - s.eps_minus) * std::sqrt((1.0 - x2) / 2.0)};
}

/// eps_+- = [A_+ (1+x^2)^{-1/2} +- A_- (1-x^2)^{-1/2}] / sqrt(2).
inline scs_coefficients qubit_to_epsilon(const cat_qubit& q, const coherent_alpha& alpha) {
    q.require_normalized();
    const double x2 = alpha.x() * alpha.x();
    const cplx u = q.a_plus / std::sqrt(1.0 + x2);
    const cplx v = q.a_minus / std::sqrt(1.0 - x2);
    return scs_coefficients{(u + v) / std::sqrt(2.0), (u - v) / std::sqrt(2.0), alpha};
}

} // namespace ecst
