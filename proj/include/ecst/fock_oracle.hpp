#pragma once

// Brute-force verification path in a truncated photon-number basis.
//
// Every state of the protocol is carried as an explicit Fock tensor, the
// optical network is applied as an exact number-conserving unitary, and the
// photon-counting projections are taken by zeroing non-matching slices. No
// sampling anywhere, so branch probabilities are exact up to truncation.
//
// Beam-splitter convention: the mode map
//   |alpha>_i |beta>_j -> |(alpha+beta)/sqrt2>_i |(alpha-beta)/sqrt2>_j,
// i.e. the real mixing matrix S = [[1,1],[1,-1]]/sqrt2. One application on the
// input pair produces the five-outcome three-mode form directly.
//
// Truncation rule: for the largest mode amplitude mu in play (sqrt2 |alpha|
// for the full network) the cutoff must keep the Poisson tail
// sum_{n>cutoff} e^{-mu^2} mu^{2n} / n! below the tail tolerance (1e-12 by
// default).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecst/cat_algebra.hpp"
#include "ecst/ecs.hpp"
#include "ecst/errors.hpp"
#include "ecst/protocol.hpp"

namespace ecst {

/// Single-mode state on photon numbers 0..cutoff.
struct fock_vector {
    int cutoff{};
    std::vector<cplx> amps; // length cutoff + 1

    explicit fock_vector(int cutoff_ = 0)
        : cutoff(cutoff_), amps(static_cast<std::size_t>(cutoff_) + 1) {
        if (cutoff_ < 1) throw domain_error("fock cutoff must be >= 1");
    }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps) s += std::norm(a);
        return s;
    }
};

inline cplx inner(const fock_vector& a, const fock_vector& b) {
    if (a.cutoff != b.cutoff) throw domain_error("fock cutoffs differ");
    cplx s = 0.0;
    for (std::size_t n = 0; n < a.amps.size(); ++n) s += std::conj(a.amps[n]) * b.amps[n];
    return s;
}

/// Poisson tail P(N > cutoff) for mean mu_sq.
inline double poisson_tail(double mu_sq, int cutoff) {
    double term = std::exp(-mu_sq);
    double cum = term;
    for (int n = 1; n <= cutoff; ++n) {
        term *= mu_sq / n;
        cum += term;
    }
    return std::max(0.0, 1.0 - cum);
}

/// Smallest cutoff whose Poisson tail for mean mu_sq is below tail_tol.
inline int min_cutoff_for(double mu_sq, double tail_tol = 1e-12) {
    if (!(mu_sq >= 0.0) || !std::isfinite(mu_sq)) throw domain_error("mu_sq must be finite and >= 0");
    if (!(tail_tol > 0.0)) throw domain_error("tail tolerance must be positive");
    double term = std::exp(-mu_sq);
    double cum = term;
    int n = 0;
    while (1.0 - cum >= tail_tol) {
        ++n;
        term *= mu_sq / n;
        cum += term;
        if (n > 4096) throw domain_error("cutoff search did not converge");
    }
    return std::max(1, n);
}

/// amps[n] = e^{-|alpha|^2/2} alpha^n / sqrt(n!). Throws if the tail rule for
/// |alpha|^2 itself is violated at this cutoff.
inline fock_vector coherent_fock(cplx alpha, int cutoff, double tail_tol = 1e-12) {
    if (poisson_tail(std::norm(alpha), cutoff) >= tail_tol)
        throw cutoff_too_small("cutoff " + std::to_string(cutoff) +
                               " truncates |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                               " above the tail tolerance");
    fock_vector v(cutoff);
    cplx term = std::exp(-0.5 * std::norm(alpha)); // n = 0
    v.amps[0] = term;
    for (int n = 1; n <= cutoff; ++n) {
        term *= alpha / std::sqrt(static_cast<double>(n));
        v.amps[n] = term;
    }
    return v;
}

/// Orthonormal even cat |+> = [2(1+x^2)]^{-1/2} (|alpha> + |-alpha>).
inline fock_vector cat_plus_fock(const coherent_alpha& alpha, int cutoff) {
    const fock_vector a = coherent_fock(alpha.value(), cutoff);
    const double x2 = alpha.x() * alpha.x();
    fock_vector v(cutoff);
    const double scale = 1.0 / std::sqrt(2.0 * (1.0 + x2));
    for (int n = 0; n <= cutoff; n += 2) v.amps[n] = 2.0 * scale * a.amps[n];
    return v;
}

/// Orthonormal odd cat |-> = [2(1-x^2)]^{-1/2} (|alpha> - |-alpha>).
inline fock_vector cat_minus_fock(const coherent_alpha& alpha, int cutoff) {
    const fock_vector a = coherent_fock(alpha.value(), cutoff);
    const double x2 = alpha.x() * alpha.x();
    fock_vector v(cutoff);
    const double scale = 1.0 / std::sqrt(2.0 * (1.0 - x2));
    for (int n = 1; n <= cutoff; n += 2) v.amps[n] = 2.0 * scale * a.amps[n];
    return v;
}

/// Photon-count outcome classes.
enum class count_projector { vac, nze, odd };

inline bool count_matches(count_projector c, int n) {
    switch (c) {
    case count_projector::vac: return n == 0;
    case count_projector::nze: return n >= 2 && n % 2 == 0;
    case count_projector::odd: return n % 2 == 1;
    }
    return false;
}

inline const char* to_string(count_projector c) {
    switch (c) {
    case count_projector::vac: return "VAC";
    case count_projector::nze: return "NZE";
    case count_projector::odd: return "ODD";
    }
    return "?";
}

/// 1-3 labelled modes over a common cutoff, amplitudes stored row-major in
/// label order.
class mode_register {
  public:
    mode_register(std::vector<int> labels, int cutoff)
        : cutoff_(cutoff), labels_(std::move(labels)) {
        if (cutoff_ < 1) throw domain_error("register cutoff must be >= 1");
        if (labels_.empty() || labels_.size() > 3)
            throw domain_error("register holds 1 to 3 modes");
        for (std::size_t a = 0; a < labels_.size(); ++a)
            for (std::size_t b = a + 1; b < labels_.size(); ++b)
                if (labels_[a] == labels_[b]) throw domain_error("duplicate mode label");
        std::size_t size = 1;
        for (std::size_t k = 0; k < labels_.size(); ++k) size *= dim();
        amps_.assign(size, cplx{});
    }

    int cutoff() const { return cutoff_; }
    std::size_t dim() const { return static_cast<std::size_t>(cutoff_) + 1; }
    std::size_t mode_count() const { return labels_.size(); }
    const std::vector<int>& labels() const { return labels_; }
    std::span<const cplx> amps() const { return amps_; }
    std::span<cplx> amps() { return amps_; }

    std::size_t position_of(int label) const {
        for (std::size_t k = 0; k < labels_.size(); ++k)
            if (labels_[k] == label) return k;
        throw mode_index_error("mode label " + std::to_string(label) + " not in register");
    }

    void relabel(int old_label, int new_label) { labels_[position_of(old_label)] = new_label; }

    /// Row-major stride of mode at position k.
    std::size_t stride(std::size_t k) const {
        std::size_t s = 1;
        for (std::size_t j = k + 1; j < labels_.size(); ++j) s *= dim();
        return s;
    }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

    /// amps += coeff * (outer product of the given single-mode vectors).
    void accumulate_product(cplx coeff, std::span<const fock_vector> factors) {
        if (factors.size() != labels_.size())
            throw domain_error("factor count does not match register modes");
        for (const fock_vector& f : factors)
            if (f.cutoff != cutoff_) throw domain_error("factor cutoff mismatch");
        const std::size_t d = dim();
        if (labels_.size() == 1) {
            for (std::size_t i = 0; i < d; ++i) amps_[i] += coeff * factors[0].amps[i];
        } else if (labels_.size() == 2) {
            for (std::size_t i = 0; i < d; ++i) {
                const cplx ci = coeff * factors[0].amps[i];
                if (ci == cplx{}) continue;
                for (std::size_t j = 0; j < d; ++j) amps_[i * d + j] += ci * factors[1].amps[j];
            }
        } else {
            for (std::size_t i = 0; i < d; ++i) {
                const cplx ci = coeff * factors[0].amps[i];
                if (ci == cplx{}) continue;
                for (std::size_t j = 0; j < d; ++j) {
                    const cplx cij = ci * factors[1].amps[j];
                    if (cij == cplx{}) continue;
                    cplx* row = &amps_[(i * d + j) * d];
                    for (std::size_t k = 0; k < d; ++k) row[k] += cij * factors[2].amps[k];
                }
            }
        }
    }

  private:
    int cutoff_;
    std::vector<int> labels_;
    std::vector<cplx> amps_;
};

namespace detail {

// Matrix elements of the symmetric beam splitter within one total-photon
// block. For S = [[1,1],[1,-1]]/sqrt2,
//   <m1,m2|B|n1,n2> = sqrt(m1! m2! / (n1! n2!)) (1/sqrt2)^{n1+n2}
//                     * sum_k C(n1,k) C(n2,m1-k) (-1)^{n2-m1+k},
// nonzero only for m1+m2 = n1+n2. The alternating sum is an exact integer;
// it is accumulated in 128-bit arithmetic from a Pascal triangle, which is
// exact for cutoff <= 64 (the partial sums are bounded by C(2*64, 64)).
inline constexpr int max_bs_cutoff = 64;

class bs_blocks {
  public:
    explicit bs_blocks(int cutoff) : cutoff_(cutoff) {
        if (cutoff > max_bs_cutoff)
            throw domain_error("beam splitter supports cutoff <= 64; requested " +
                               std::to_string(cutoff));
        build_pascal(2 * cutoff);
        blocks_.resize(2 * cutoff + 1);
        for (int total = 0; total <= 2 * cutoff; ++total) build_block(total);
    }

    int lo(int total) const { return std::max(0, total - cutoff_); }

    // Dense (len x len) block for the given total photon number; row/column
    // index i corresponds to n1 = lo(total) + i.
    const std::vector<double>& block(int total) const { return blocks_[total]; }

    int block_len(int total) const {
        return std::min(cutoff_, total) - lo(total) + 1;
    }

  private:
    void build_pascal(int n_max) {
        pascal_.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), 0);
        for (int n = 0; n <= n_max; ++n) {
            at(n, 0) = 1;
            for (int k = 1; k <= n; ++k) at(n, k) = at(n - 1, k - 1) + (k <= n - 1 ? at(n - 1, k) : 0);
        }
    }

    __int128& at(int n, int k) { return pascal_[static_cast<std::size_t>(n) * (2 * cutoff_ + 1) + k]; }
    __int128 binom(int n, int k) const {
        return pascal_[static_cast<std::size_t>(n) * (2 * cutoff_ + 1) + k];
    }

    void build_block(int total) {
        const int b_lo = lo(total);
        const int len = block_len(total);
        std::vector<double>& blk = blocks_[total];
        blk.assign(static_cast<std::size_t>(len) * len, 0.0);
        for (int mi = 0; mi < len; ++mi) {
            const int m1 = b_lo + mi;
            const int m2 = total - m1;
            for (int ni = 0; ni < len; ++ni) {
                const int n1 = b_lo + ni;
                const int n2 = total - n1;
                __int128 sum = 0;
                const int k_lo = std::max(0, m1 - n2);
                const int k_hi = std::min(n1, m1);
                for (int k = k_lo; k <= k_hi; ++k) {
                    const __int128 term = binom(n1, k) * binom(n2, m1 - k);
                    sum += ((n2 - m1 + k) % 2 == 0) ? term : -term;
                }
                const double log_pref =
                    0.5 * (std::lgamma(m1 + 1.0) + std::lgamma(m2 + 1.0) -
                           std::lgamma(n1 + 1.0) - std::lgamma(n2 + 1.0)) -
                    0.5 * (n1 + n2) * std::log(2.0);
                blk[static_cast<std::size_t>(mi) * len + ni] =
                    std::exp(log_pref) * static_cast<double>(sum);
            }
        }
    }

    int cutoff_;
    std::vector<__int128> pascal_;
    std::vector<std::vector<double>> blocks_;
};

} // namespace detail

/// Symmetric beam splitter on labelled modes i, j:
/// |alpha>_i |beta>_j -> |(alpha+beta)/sqrt2>_i |(alpha-beta)/sqrt2>_j.
/// Number-conserving and unitary up to the stored truncation.
inline mode_register apply_beam_splitter(const mode_register& r, int label_i, int label_j) {
    if (label_i == label_j) throw mode_index_error("beam splitter needs two distinct modes");
    const std::size_t pi = r.position_of(label_i);
    const std::size_t pj = r.position_of(label_j);
    const int cutoff = r.cutoff();
    const std::size_t d = r.dim();
    const detail::bs_blocks bs(cutoff);

    mode_register out(r.labels(), cutoff);
    const std::size_t si = r.stride(pi);
    const std::size_t sj = r.stride(pj);

    // Spectator coordinates: every tensor index with modes i and j at zero.
    std::vector<std::size_t> bases;
    if (r.mode_count() == 2) {
        bases.push_back(0);
    } else {
        std::size_t pk = 3 - pi - pj; // the remaining position of a 3-mode register
        const std::size_t sk = r.stride(pk);
        for (std::size_t n = 0; n < d; ++n) bases.push_back(n * sk);
    }

    std::vector<cplx> in_col(d), out_col(d);
    for (const std::size_t base : bases) {
        for (int total = 0; total <= 2 * cutoff; ++total) {
            const int lo = bs.lo(total);
            const int len = bs.block_len(total);
            for (int k = 0; k < len; ++k) {
                const int ni = lo + k;
                in_col[k] = r.amps()[base + static_cast<std::size_t>(ni) * si +
                                     static_cast<std::size_t>(total - ni) * sj];
            }
            const std::vector<double>& blk = bs.block(total);
            for (int mi = 0; mi < len; ++mi) {
                cplx acc = 0.0;
                const double* row = &blk[static_cast<std::size_t>(mi) * len];
                for (int k = 0; k < len; ++k) acc += row[k] * in_col[k];
                out_col[mi] = acc;
            }
            for (int mi = 0; mi < len; ++mi) {
                const int m1 = lo + mi;
                out.amps()[base + static_cast<std::size_t>(m1) * si +
                           static_cast<std::size_t>(total - m1) * sj] = out_col[mi];
            }
        }
    }
    return out;
}

/// Phase flip (-1)^n on one mode; maps |alpha> to |-alpha>, involutive.
inline mode_register apply_phase_flip(const mode_register& r, int label) {
    const std::size_t p = r.position_of(label);
    const std::size_t s = r.stride(p);
    const std::size_t d = r.dim();
    mode_register out = r;
    std::span<cplx> a = out.amps();
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const std::size_t n = (idx / s) % d;
        if (n % 2 == 1) a[idx] = -a[idx];
    }
    return out;
}

/// Build |I>_0 |E>_{1,2} and pass modes (0,1) through the beam splitter.
/// Output register has labels (3,4,2) and matches the closed-form
/// three-mode expansion componentwise.
inline mode_register run_network(const scs_coefficients& s, const ecs_params& ch, int cutoff,
                                 double tail_tol = 1e-12) {
    s.require_normalized(1e-9);
    if (ch.alpha.value() != s.alpha.value())
        throw domain_error("input and channel amplitudes must match");
    // The post-splitter amplitudes reach sqrt2 |alpha|; enforce the rule there.
    if (poisson_tail(2.0 * ch.alpha.alpha_sq(), cutoff) >= tail_tol)
        throw cutoff_too_small("cutoff " + std::to_string(cutoff) +
                               " violates the sqrt2*alpha tail rule for |alpha|^2 = " +
                               std::to_string(ch.alpha.alpha_sq()));

    const fock_vector plus_a = coherent_fock(ch.alpha.value(), cutoff, tail_tol);
    const fock_vector minus_a = coherent_fock(-ch.alpha.value(), cutoff, tail_tol);
    const double n_const = norm_constant(ch);
    const cplx cos_term = n_const * std::cos(ch.theta / 2.0);
    const cplx sin_term = n_const * std::sin(ch.theta / 2.0) * std::polar(1.0, ch.phi);

    mode_register reg({0, 1, 2}, cutoff);
    const std::array<fock_vector, 3> t1{plus_a, plus_a, plus_a};
    const std::array<fock_vector, 3> t2{plus_a, minus_a, minus_a};
    const std::array<fock_vector, 3> t3{minus_a, plus_a, plus_a};
    const std::array<fock_vector, 3> t4{minus_a, minus_a, minus_a};
    reg.accumulate_product(s.eps_plus * cos_term, t1);
    reg.accumulate_product(s.eps_plus * sin_term, t2);
    reg.accumulate_product(s.eps_minus * cos_term, t3);
    reg.accumulate_product(s.eps_minus * sin_term, t4);

    mode_register out = apply_beam_splitter(reg, 0, 1);
    out.relabel(0, 3);
    out.relabel(1, 4);

    // The exact output keeps one count mode in vacuum, so anything with
    // n3 + n4 > cutoff is truncation spill with total mass below the tail
    // tolerance. Drop it.
    const std::size_t d = out.dim();
    std::span<cplx> amps = out.amps();
    for (std::size_t n3 = 0; n3 < d; ++n3)
        for (std::size_t n4 = 0; n4 < d; ++n4) {
            if (n3 + n4 <= static_cast<std::size_t>(cutoff)) continue;
            cplx* row = &amps[(n3 * d + n4) * d];
            for (std::size_t n2 = 0; n2 < d; ++n2) row[n2] = cplx{};
        }
    return out;
}

/// Project modes 3 and 4 onto count classes. Returns the outcome probability
/// and Bob's conditional mode-2 state, scaled so its squared norm equals the
/// probability. The conditional state is pure (rank one across the class);
/// its direction is read off the dominant class cell.
inline std::pair<double, fock_vector> measure_branch(const mode_register& r, count_projector c3,
                                                     count_projector c4) {
    const std::size_t p3 = r.position_of(3);
    const std::size_t p4 = r.position_of(4);
    const std::size_t p2 = r.position_of(2);
    const std::size_t s3 = r.stride(p3);
    const std::size_t s4 = r.stride(p4);
    const std::size_t s2 = r.stride(p2);
    const int cutoff = r.cutoff();
    const std::size_t d = r.dim();

    double prob = 0.0;
    double best_row_norm = -1.0;
    std::size_t best_base = 0;
    for (int n3 = 0; n3 <= cutoff; ++n3) {
        if (!count_matches(c3, n3)) continue;
        for (int n4 = 0; n4 <= cutoff; ++n4) {
            if (!count_matches(c4, n4)) continue;
            const std::size_t base = static_cast<std::size_t>(n3) * s3 +
                                     static_cast<std::size_t>(n4) * s4;
            double row = 0.0;
            for (std::size_t n2 = 0; n2 < d; ++n2) row += std::norm(r.amps()[base + n2 * s2]);
            prob += row;
            if (row > best_row_norm) {
                best_row_norm = row;
                best_base = base;
            }
        }
    }

    fock_vector bob(cutoff);
    if (best_row_norm > 0.0 && prob > 0.0) {
        const double scale = std::sqrt(prob / best_row_norm);
        for (std::size_t n2 = 0; n2 < d; ++n2)
            bob.amps[n2] = scale * r.amps()[best_base + n2 * s2];
    }
    return {prob, bob};
}

/// Overlaps with the orthonormal cat pair plus whatever is left outside it.
struct cat_projection {
    cplx b_plus{};
    cplx b_minus{};
    double residual{};
};

inline cat_projection fock_to_cat_qubit(const fock_vector& v, const coherent_alpha& alpha) {
    const fock_vector plus = cat_plus_fock(alpha, v.cutoff);
    const fock_vector minus = cat_minus_fock(alpha, v.cutoff);
    const cplx bp = inner(plus, v);
    const cplx bm = inner(minus, v);
    const double residual = v.norm_sq() - std::norm(bp) - std::norm(bm);
    return cat_projection{bp, bm, std::max(0.0, residual)};
}

/// End-to-end numeric average fidelity: run the network, project the five
/// outcomes, correct Bob in the cat span, overlap with the input state.
inline double oracle_average_fidelity(const scs_coefficients& s, const ecs_params& ch,
                                      strategy_id strat, int cutoff, double tail_tol = 1e-12) {
    const mode_register out = run_network(s, ch, cutoff, tail_tol);
    const fock_vector plus = cat_plus_fock(ch.alpha, cutoff);
    const fock_vector minus = cat_minus_fock(ch.alpha, cutoff);

    // Input built from the eps route, independent of the qubit-coordinate map.
    fock_vector input(cutoff);
    {
        const fock_vector ca = coherent_fock(ch.alpha.value(), cutoff, tail_tol);
        const fock_vector cma = coherent_fock(-ch.alpha.value(), cutoff, tail_tol);
        for (int n = 0; n <= cutoff; ++n)
            input.amps[n] = s.eps_plus * ca.amps[n] + s.eps_minus * cma.amps[n];
    }
    const cplx i_plus = inner(plus, input);
    const cplx i_minus = inner(minus, input);

    static constexpr std::array<std::pair<count_projector, count_projector>, 5> pairs = {{
        {count_projector::vac, count_projector::vac},
        {count_projector::nze, count_projector::vac},
        {count_projector::vac, count_projector::nze},
        {count_projector::odd, count_projector::vac},
        {count_projector::vac, count_projector::odd},
    }};

    double total = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [prob, bob] = measure_branch(out, pairs[i].first, pairs[i].second);
        if (prob < 1e-300) continue;
        const cat_projection proj = fock_to_cat_qubit(bob, ch.alpha);
        const correction_unitary u = correction(strat, all_outcomes[i]);
        const auto [tp, tm] = u.apply(proj.b_plus, proj.b_minus);
        const double t_norm = std::norm(tp) + std::norm(tm);
        if (t_norm < 1e-300) continue;
        const double fid = std::norm(std::conj(i_plus) * tp + std::conj(i_minus) * tm) / t_norm;
        total += prob * fid;
    }
    return total;
}

} // namespace ecst
