// Command-line front end: single-point fidelity and concurrence queries,
// surface/gap sweeps in CSV or JSON, and the analytic-vs-oracle verification
// suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 output I/O error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecst/ecst.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

struct output_sink {
    std::optional<std::string> path;

    int write(const std::string& body) const {
        if (!path) {
            std::cout << body;
            return exit_ok;
        }
        std::ofstream out(*path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output path: " << *path << "\n";
            return exit_io;
        }
        out << body;
        if (!out.good()) {
            std::cerr << "error: short write to " << *path << "\n";
            return exit_io;
        }
        return exit_ok;
    }
};

std::string surface_csv(const std::vector<ecst::sweep_record>& records) {
    std::ostringstream os;
    os << "alpha_sq,theta,phi,f_min,omega_star,xi_star,concurrence\n";
    for (const auto& r : records)
        os << fmt(r.alpha_sq) << ',' << fmt(r.theta) << ',' << fmt(r.phi) << ',' << fmt(r.f_min)
           << ',' << fmt(r.omega_star) << ',' << fmt(r.xi_star) << ',' << fmt(r.concurrence)
           << '\n';
    return os.str();
}

json surface_json(const std::vector<ecst::sweep_record>& records) {
    json rows = json::array();
    for (const auto& r : records)
        rows.push_back({{"alpha_sq", r.alpha_sq},
                        {"theta", r.theta},
                        {"phi", r.phi},
                        {"f_min", r.f_min},
                        {"omega_star", r.omega_star},
                        {"xi_star", r.xi_star},
                        {"concurrence", r.concurrence}});
    return rows;
}

std::string gap_csv(const ecst::gap_curve_result& curve) {
    std::ostringstream os;
    os << "alpha_sq,f1,f2,d\n";
    for (const auto& p : curve.points)
        os << fmt(p.alpha_sq) << ',' << fmt(p.f1) << ',' << fmt(p.f2) << ',' << fmt(p.d) << '\n';
    return os.str();
}

json gap_json(const ecst::gap_curve_result& curve) {
    json rows = json::array();
    for (const auto& p : curve.points)
        rows.push_back({{"alpha_sq", p.alpha_sq}, {"f1", p.f1}, {"f2", p.f2}, {"d", p.d}});
    const auto& peak = curve.points[curve.argmax];
    return json{{"points", rows},
                {"argmax", {{"alpha_sq", peak.alpha_sq}, {"d", peak.d}}}};
}

struct fidelity_args {
    double alpha_sq = 1.0;
    double theta = M_PI / 2.0;
    double phi = 0.0;
    double omega = 0.0;
    double xi = 0.0;
};

int cmd_fidelity(const fidelity_args& a, const std::string& format, const output_sink& sink) {
    const ecst::coherent_alpha alpha = ecst::coherent_alpha::from_alpha_sq(a.alpha_sq);
    const ecst::ecs_params ch(alpha, a.theta, a.phi);
    const ecst::strategy_id selected = ecst::select_strategy(a.phi);
    const double f_s1 = ecst::average_fidelity(a.omega, a.xi, ch, ecst::strategy_id::s1);
    const double f_s2 = ecst::average_fidelity(a.omega, a.xi, ch, ecst::strategy_id::s2);
    const ecst::cat_qubit q = ecst::angles_to_qubit(a.omega, a.xi);
    const auto branches = ecst::decompose_branches(q, ch);
    const double conc = ecst::concurrence_closed(ch);

    if (format == "json") {
        json branch_rows = json::array();
        for (const auto& b : branches) {
            const auto t = ecst::apply_correction(b, ecst::correction(selected, b.label));
            branch_rows.push_back({{"outcome", ecst::to_string(b.label)},
                                   {"prob", b.prob},
                                   {"fidelity", ecst::branch_fidelity(t, q)}});
        }
        const json doc{{"alpha_sq", a.alpha_sq},
                       {"theta", a.theta},
                       {"phi", a.phi},
                       {"omega", a.omega},
                       {"xi", a.xi},
                       {"strategy", ecst::to_string(selected)},
                       {"f_av_s1", f_s1},
                       {"f_av_s2", f_s2},
                       {"concurrence", conc},
                       {"branches", branch_rows}};
        return sink.write(doc.dump(2) + "\n");
    }

    std::ostringstream os;
    os << "alpha_sq = " << fmt(a.alpha_sq) << "  theta = " << fmt(a.theta)
       << "  phi = " << fmt(a.phi) << "  omega = " << fmt(a.omega) << "  xi = " << fmt(a.xi)
       << "\n";
    os << "strategy      : " << ecst::to_string(selected) << "\n";
    os << "F_av (S1)     : " << fmt(f_s1) << "\n";
    os << "F_av (S2)     : " << fmt(f_s2) << "\n";
    os << "concurrence   : " << fmt(conc) << "\n";
    os << "outcome      P_i            F_i\n";
    double prob_sum = 0.0;
    for (const auto& b : branches) {
        const auto t = ecst::apply_correction(b, ecst::correction(selected, b.label));
        prob_sum += b.prob;
        char line[96];
        std::snprintf(line, sizeof(line), "%-10s %-14.10f %-14.10f\n", ecst::to_string(b.label),
                      b.prob, ecst::branch_fidelity(t, q));
        os << line;
    }
    os << "sum P_i       : " << fmt(prob_sum) << "\n";
    return sink.write(os.str());
}

int run_surface(double alpha_sq, int grid_theta, int grid_phi, const std::string& format,
                const output_sink& sink) {
    const auto alpha = ecst::coherent_alpha::from_alpha_sq(alpha_sq);
    const auto records = ecst::sweep_surface(alpha, linspace(0.0, M_PI, grid_theta),
                                             linspace(0.0, 2.0 * M_PI, grid_phi));
    if (format == "json") return sink.write(surface_json(records).dump(2) + "\n");
    return sink.write(surface_csv(records));
}

int run_gap(double lo, double hi, int steps, const std::string& format, const output_sink& sink) {
    const auto curve = ecst::gap_curve(lo, hi, steps);
    if (format == "json") return sink.write(gap_json(curve).dump(2) + "\n");
    return sink.write(gap_csv(curve));
}

int cmd_concurrence(double alpha_sq, double theta, double phi, const std::string& format,
                    const output_sink& sink) {
    const auto alpha = ecst::coherent_alpha::from_alpha_sq(alpha_sq);
    const ecst::ecs_params ch(alpha, theta, phi);
    const double closed = ecst::concurrence_closed(ch);
    const double numeric = ecst::concurrence_numeric(ecst::qubit_amplitudes(ch));
    if (format == "json") {
        const json doc{{"alpha_sq", alpha_sq},
                       {"theta", theta},
                       {"phi", phi},
                       {"concurrence_closed", closed},
                       {"concurrence_numeric", numeric},
                       {"norm_constant", ecst::norm_constant(ch)}};
        return sink.write(doc.dump(2) + "\n");
    }
    std::ostringstream os;
    os << "alpha_sq = " << fmt(alpha_sq) << "  theta = " << fmt(theta) << "  phi = " << fmt(phi)
       << "\n";
    os << "concurrence (closed form) : " << fmt(closed) << "\n";
    os << "concurrence (numeric)     : " << fmt(numeric) << "\n";
    os << "norm constant N           : " << fmt(ecst::norm_constant(ch)) << "\n";
    return sink.write(os.str());
}

// ---------------------------------------------------------------------------
// verify: seeded randomized cross-validation suites
// ---------------------------------------------------------------------------

struct verify_options {
    std::uint64_t seed = 12345;
    int tuples = 100;
    std::optional<int> cutoff_override;
    double tail_tol = 1e-12;
};

struct suite_outcome {
    std::string name;
    double max_err{};
    double tolerance{};
    bool pass{};
    std::string worst; // description of the worst tuple
};

struct random_tuple {
    double alpha_sq, theta, phi, omega, xi;
};

std::vector<random_tuple> draw_tuples(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<random_tuple> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        random_tuple t{};
        t.alpha_sq = 0.1 + 2.9 * u01(rng);
        t.theta = M_PI * u01(rng);
        t.phi = 2.0 * M_PI * u01(rng);
        t.omega = M_PI * u01(rng);
        t.xi = 2.0 * M_PI * u01(rng);
        out.push_back(t);
    }
    return out;
}

std::string tuple_str(const random_tuple& t) {
    std::ostringstream os;
    os << "(alpha_sq=" << fmt(t.alpha_sq) << ", theta=" << fmt(t.theta) << ", phi=" << fmt(t.phi)
       << ", omega=" << fmt(t.omega) << ", xi=" << fmt(t.xi) << ")";
    return os.str();
}

int cmd_verify(const verify_options& opt, const output_sink& sink) {
    const auto tuples = draw_tuples(opt.seed, opt.tuples);
    std::vector<suite_outcome> suites;

    auto run_suite = [&](const std::string& name, double tol, auto&& body) {
        suite_outcome s{name, 0.0, tol, true, ""};
        body(s);
        s.pass = s.max_err <= tol;
        suites.push_back(s);
    };
    auto update = [](suite_outcome& s, double err, const random_tuple& t) {
        if (err > s.max_err) {
            s.max_err = err;
            s.worst = tuple_str(t);
        }
    };

    try {
        // 1. channel normalization in the Fock oracle (corrected N)
        run_suite("channel-norm (fock)", 1e-10, [&](suite_outcome& s) {
            for (const auto& t : tuples) {
                const auto alpha = ecst::coherent_alpha::from_alpha_sq(t.alpha_sq);
                const ecst::ecs_params ch(alpha, t.theta, t.phi);
                const int cutoff = opt.cutoff_override.value_or(
                    ecst::min_cutoff_for(t.alpha_sq, opt.tail_tol));
                if (ecst::poisson_tail(t.alpha_sq, cutoff) >= opt.tail_tol)
                    throw ecst::cutoff_too_small("cutoff " + std::to_string(cutoff) +
                                                 " too small for |alpha|^2 = " +
                                                 fmt(t.alpha_sq));
                const auto ca = ecst::coherent_fock(alpha.value(), cutoff, opt.tail_tol);
                const auto cma = ecst::coherent_fock(-alpha.value(), cutoff, opt.tail_tol);
                ecst::mode_register reg({1, 2}, cutoff);
                const double n_const = ecst::norm_constant(ch);
                const ecst::cplx ct = n_const * std::cos(t.theta / 2.0);
                const ecst::cplx st =
                    n_const * std::sin(t.theta / 2.0) * std::polar(1.0, t.phi);
                const std::array<ecst::fock_vector, 2> f1{ca, ca};
                const std::array<ecst::fock_vector, 2> f2{cma, cma};
                reg.accumulate_product(ct, f1);
                reg.accumulate_product(st, f2);
                update(s, std::abs(reg.norm_sq() - 1.0), t);
            }
        });

        // 2. branch probability completeness
        run_suite("prob-completeness", 1e-12, [&](suite_outcome& s) {
            for (const auto& t : tuples) {
                const auto alpha = ecst::coherent_alpha::from_alpha_sq(t.alpha_sq);
                const ecst::ecs_params ch(alpha, t.theta, t.phi);
                const auto q = ecst::angles_to_qubit(t.omega, t.xi);
                double sum = 0.0;
                for (const auto& b : ecst::decompose_branches(q, ch)) sum += b.prob;
                update(s, std::abs(sum - 1.0), t);
            }
        });

        // 3. closed-form average fidelity vs branch assembly, both strategies
        run_suite("closed-vs-assembled", 1e-12, [&](suite_outcome& s) {
            for (const auto& t : tuples) {
                const auto alpha = ecst::coherent_alpha::from_alpha_sq(t.alpha_sq);
                const ecst::ecs_params ch(alpha, t.theta, t.phi);
                for (const auto strat : {ecst::strategy_id::s1, ecst::strategy_id::s2}) {
                    const double closed = ecst::average_fidelity(t.omega, t.xi, ch, strat);
                    const double assembled =
                        ecst::assembled_average_fidelity(t.omega, t.xi, ch, strat);
                    update(s, std::abs(closed - assembled), t);
                }
            }
        });

        // 4. analytic vs truncated-Fock oracle average fidelity
        run_suite("analytic-vs-oracle", 1e-8, [&](suite_outcome& s) {
            for (const auto& t : tuples) {
                const auto alpha = ecst::coherent_alpha::from_alpha_sq(t.alpha_sq);
                const ecst::ecs_params ch(alpha, t.theta, t.phi);
                const int cutoff = opt.cutoff_override.value_or(
                    ecst::min_cutoff_for(2.0 * t.alpha_sq, opt.tail_tol));
                const auto strat = ecst::select_strategy(t.phi);
                const auto q = ecst::angles_to_qubit(t.omega, t.xi);
                const auto scs = ecst::qubit_to_epsilon(q, alpha);
                const double analytic = ecst::average_fidelity(t.omega, t.xi, ch, strat);
                const double oracle =
                    ecst::oracle_average_fidelity(scs, ch, strat, cutoff, opt.tail_tol);
                update(s, std::abs(analytic - oracle), t);
            }
        });

        // 5. concurrence closed form vs numeric Wootters relation
        run_suite("concurrence", 1e-12, [&](suite_outcome& s) {
            for (const auto& t : tuples) {
                const auto alpha = ecst::coherent_alpha::from_alpha_sq(t.alpha_sq);
                const ecst::ecs_params ch(alpha, t.theta, t.phi);
                const double closed = ecst::concurrence_closed(ch);
                const double numeric = ecst::concurrence_numeric(ecst::qubit_amplitudes(ch));
                update(s, std::abs(closed - numeric), t);
            }
        });

        // 6. gap identity: D == F1 - F2
        run_suite("gap-identity", 1e-12, [&](suite_outcome& s) {
            for (const auto& t : tuples) {
                const double d = ecst::fidelity_gap(t.alpha_sq);
                const double diff =
                    ecst::fmin_nmecs_closed(t.alpha_sq) - ecst::fmin_mecs_closed(t.alpha_sq);
                update(s, std::abs(d - diff), t);
            }
        });
    } catch (const ecst::cutoff_too_small& e) {
        std::ostringstream os;
        os << "seed = " << opt.seed << "  tuples = " << opt.tuples << "\n";
        os << "FAIL CutoffTooSmall: " << e.what() << "\n";
        sink.write(os.str());
        return exit_verify_failed;
    }

    std::ostringstream os;
    os << "seed = " << opt.seed << "  tuples = " << opt.tuples << "\n";
    bool all_pass = true;
    for (const auto& s : suites) {
        all_pass = all_pass && s.pass;
        os << (s.pass ? "PASS " : "FAIL ") << s.name << ": max error " << fmt(s.max_err)
           << " (tolerance " << fmt(s.tolerance) << ")";
        if (!s.pass && !s.worst.empty()) os << "  worst " << s.worst;
        os << "\n";
    }
    os << (all_pass ? "all suites passed\n" : "verification FAILED\n");
    const int rc = sink.write(os.str());
    if (rc != exit_ok) return rc;
    return all_pass ? exit_ok : exit_verify_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation of superposed coherent states over entangled "
                 "coherent channels: fidelities, concurrence, sweeps, and "
                 "brute-force verification"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string format = "csv";
    std::optional<std::string> out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");

    // let --format/--out appear after the subcommand name as well
    const auto with_fallthrough = [](CLI::App* sub) {
        sub->fallthrough();
        return sub;
    };

    fidelity_args fa;
    auto* fidelity = with_fallthrough(
        app.add_subcommand("fidelity", "Average fidelity at one parameter point"));
    fidelity->add_option("--alpha-sq", fa.alpha_sq, "Mean photon number |alpha|^2")->required();
    fidelity->add_option("--theta", fa.theta, "Channel angle theta in [0, pi]")->required();
    fidelity->add_option("--phi", fa.phi, "Channel angle phi in [0, 2pi)")->required();
    fidelity->add_option("--omega", fa.omega, "Input angle omega in [0, pi]")->required();
    fidelity->add_option("--xi", fa.xi, "Input angle xi in [0, 2pi)")->required();

    char panel = 'd';
    int grid_theta = 61;
    int grid_phi = 121;
    int steps = 501;
    auto* fig2 = with_fallthrough(
        app.add_subcommand("fig2", "Reproduce one panel of the survey figure"));
    fig2->add_option("--panel", panel, "Panel: a, b, c (surfaces) or d (gap curve)")
        ->check(CLI::IsMember({'a', 'b', 'c', 'd'}))
        ->required();
    fig2->add_option("--grid-theta", grid_theta, "Surface grid points along theta");
    fig2->add_option("--grid-phi", grid_phi, "Surface grid points along phi");
    fig2->add_option("--steps", steps, "Gap curve sample count");

    double sweep_alpha_sq = 1.0;
    int sweep_gt = 61, sweep_gp = 121;
    auto* sweep = with_fallthrough(
        app.add_subcommand("sweep", "Minimum-average-fidelity surface over (theta, phi)"));
    sweep->add_option("--alpha-sq", sweep_alpha_sq, "Mean photon number")->required();
    sweep->add_option("--grid-theta", sweep_gt, "Grid points along theta");
    sweep->add_option("--grid-phi", sweep_gp, "Grid points along phi");

    double gap_lo = 0.01, gap_hi = 5.0;
    int gap_steps = 500;
    auto* gap = with_fallthrough(
        app.add_subcommand("gap", "Worst-case fidelity gap curve over |alpha|^2"));
    gap->add_option("--alpha-sq-min", gap_lo, "Range start (>= 0)");
    gap->add_option("--alpha-sq-max", gap_hi, "Range end");
    gap->add_option("--steps", gap_steps, "Sample count");

    double c_alpha_sq = 1.0, c_theta = M_PI / 2.0, c_phi = 0.0;
    auto* conc = with_fallthrough(
        app.add_subcommand("concurrence", "Channel concurrence, closed and numeric"));
    conc->add_option("--alpha-sq", c_alpha_sq, "Mean photon number")->required();
    conc->add_option("--theta", c_theta, "Channel angle theta")->required();
    conc->add_option("--phi", c_phi, "Channel angle phi")->required();

    verify_options vo;
    std::optional<int> cutoff_flag;
    auto* verify = with_fallthrough(
        app.add_subcommand("verify", "Run the cross-validation suites"));
    verify->add_option("--seed", vo.seed, "RNG seed for the tuple draw");
    verify->add_option("--steps", vo.tuples, "Number of random tuples (default 100)");
    verify->add_option("--cutoff", cutoff_flag, "Force a Fock cutoff instead of the tail rule");
    verify->add_option("--tol", vo.tail_tol, "Truncation tail tolerance (default 1e-12)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    const output_sink sink{out_path};
    try {
        if (*fidelity) return cmd_fidelity(fa, format, sink);
        if (*fig2) {
            if (panel == 'd') return run_gap(0.0, 5.0, steps, format, sink);
            const double a2 = panel == 'a' ? 0.5 : (panel == 'b' ? 1.0 : 1.5);
            return run_surface(a2, grid_theta, grid_phi, format, sink);
        }
        if (*sweep) return run_surface(sweep_alpha_sq, sweep_gt, sweep_gp, format, sink);
        if (*gap) return run_gap(gap_lo, gap_hi, gap_steps, format, sink);
        if (*conc) return cmd_concurrence(c_alpha_sq, c_theta, c_phi, format, sink);
        if (*verify) {
            vo.cutoff_override = cutoff_flag;
            return cmd_verify(vo, sink);
        }
    } catch (const ecst::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ecst::cutoff_too_small& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
