#include "cylint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cylint/errors.hpp"
#include "cylint/fd.hpp"

namespace cylint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Partials of a phase function with respect to the 6 canonical variables.
Eigen::Matrix<double, 6, 1> phase_gradient_fd(const PhaseFn& F, const CylPhase& ph,
                                              double h0) {
    PhaseVec y = vec_from_phase(ph);
    Eigen::Matrix<double, 6, 1> g;
    for (int i = 0; i < 6; ++i) {
        double h = h0 * std::max(1.0, std::abs(y[i]));
        auto at = [&](double d) {
            PhaseVec s = y;
            s[i] += d;
            return F(phase_from_vec(s));
        };
        g[i] = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    }
    return g;
}

double bracket_from_gradients(const Eigen::Matrix<double, 6, 1>& gF,
                              const Eigen::Matrix<double, 6, 1>& gG) {
    double b = 0.0;
    for (int q = 0; q < 3; ++q) b += gF[q] * gG[3 + q] - gF[3 + q] * gG[q];
    return b;
}

double max_abs(std::initializer_list<double> terms) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, std::abs(t));
    return m;
}

}  // namespace

double poisson_bracket_fd(const PhaseFn& F, const PhaseFn& G, const CylPhase& ph,
                          double h0) {
    return bracket_from_gradients(phase_gradient_fd(F, ph, h0),
                                  phase_gradient_fd(G, ph, h0));
}

CommutationReport check_commutation(const SystemInstance& sys, int n_samples,
                                    std::uint64_t seed, double tol, double h0) {
    if (n_samples < 1) throw ValidationError("check_commutation needs n_samples >= 1");
    CommutationReport rep;
    rep.family = sys.family_id;
    rep.samples = n_samples;
    rep.seed = seed;
    rep.h = h0;
    rep.tol = tol;
    rep.pairs = {{"H-X1"}, {"H-X2"}, {"X1-X2"}};

    PhaseFn fH = [&sys](const CylPhase& p) { return integral_value(sys, Observable::H, p); };
    PhaseFn fX1 = [&sys](const CylPhase& p) { return integral_value(sys, Observable::X1, p); };
    PhaseFn fX2 = [&sys](const CylPhase& p) { return integral_value(sys, Observable::X2, p); };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.5, 2.0), uphi(0.0, kTwoPi),
        uz(-1.0, 1.0), up(-2.0, 2.0);

    for (int s = 0; s < n_samples; ++s) {
        CylPhase ph{CylPoint(ur(rng), uphi(rng), uz(rng)), up(rng), up(rng), up(rng)};
        Eigen::Matrix<double, 6, 1> g[3] = {phase_gradient_fd(fH, ph, h0),
                                            phase_gradient_fd(fX1, ph, h0),
                                            phase_gradient_fd(fX2, ph, h0)};
        const Eigen::Matrix<double, 6, 1>* gs[3][2] = {
            {&g[0], &g[1]}, {&g[0], &g[2]}, {&g[1], &g[2]}};
        for (int k = 0; k < 3; ++k) {
            double b = bracket_from_gradients(*gs[k][0], *gs[k][1]);
            double scale = std::max(1.0, gs[k][0]->norm() * gs[k][1]->norm());
            double res = std::abs(b) / scale;
            rep.pairs[k].max = std::max(rep.pairs[k].max, res);
            rep.pairs[k].mean += res;
        }
    }
    for (auto& pr : rep.pairs) {
        pr.mean /= n_samples;
        rep.max_residual = std::max(rep.max_residual, pr.max);
        rep.mean_residual += pr.mean / 3.0;
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

std::vector<CylPoint> grid_points(const GridSpec& grid) {
    std::vector<CylPoint> pts;
    for (int i = 0; i < grid.nr; ++i) {
        double r = grid.r_lo + (grid.r_hi - grid.r_lo) * i / std::max(1, grid.nr - 1);
        for (int j = 0; j < grid.nphi; ++j) {
            double phi = kTwoPi * j / grid.nphi;
            for (int k = 0; k < grid.nz; ++k) {
                double z = grid.z_lo +
                           (grid.z_hi - grid.z_lo) * k / std::max(1, grid.nz - 1);
                pts.emplace_back(r, phi, z);
            }
        }
    }
    return pts;
}

namespace {

struct PointEquations {
    double rederived[28];
    double printed[3];
};

const char* kEquationNames[28] = {
    "cyl2a_1", "cyl2a_2", "cyl2a_3", "cyl2a_4", "cyl2a_5", "cyl2a_6",
    "cyl2b_1", "cyl2b_2", "cyl2b_3", "cyl2b_4", "cyl2b_5", "cyl2b_6",
    "cyl1a_1", "cyl1a_2", "cyl1a_3",
    "cyl1b_1", "cyl1b_2", "cyl1b_3",
    "cyl0_1",  "cyl0_2",
    "extra2_1", "extra2_2", "extra2_3", "extra2_4",
    "extra1_1", "extra1_2", "extra1_3",
    "extra0",
};

// All 28 determining equations at one point, normalized per equation by the
// largest summand. Every derivative comes from 4th-order FD on value-only
// evaluators.
PointEquations equations_at(const SystemInstance& sys, const CylPoint& at, double h0) {
    const double r = at.r, r2 = r * r;

    auto s1c = [&sys](int i) {
        return ScalarField([&sys, i](const CylPoint& p) { return sys.s1(p)[i]; });
    };
    auto s2c = [&sys](int i) {
        return ScalarField([&sys, i](const CylPoint& p) { return sys.s2(p)[i]; });
    };

    Eigen::Vector3d s1 = sys.s1(at), s2 = sys.s2(at);
    FieldTriple B = sys.B(at);
    double Br = B.B_r, Bp = B.B_phi, Bz = B.B_z_cyl;

    // d[i][q]: derivative of component i with respect to coordinate q.
    double d1[3][3], d2[3][3];
    for (int i = 0; i < 3; ++i) {
        ScalarField f1 = s1c(i), f2 = s2c(i);
        for (int q = 0; q < 3; ++q) {
            Axis ax = static_cast<Axis>(q);
            d1[i][q] = fd_partial(f1, at, ax, h0);
            d2[i][q] = fd_partial(f2, at, ax, h0);
        }
    }
    double dm1[3], dm2[3], dW[3];
    for (int q = 0; q < 3; ++q) {
        Axis ax = static_cast<Axis>(q);
        dm1[q] = fd_partial(sys.m1, at, ax, h0);
        dm2[q] = fd_partial(sys.m2, at, ax, h0);
        dW[q] = fd_partial(sys.W, at, ax, h0);
    }

    PointEquations out;
    int n = 0;
    auto push = [&](std::initializer_list<double> terms) {
        double sum = 0.0;
        for (double t : terms) sum += t;
        out.rederived[n++] = sum / std::max(1.0, max_abs(terms));
    };

    // cyl2a
    push({d1[0][0]});
    push({d1[1][1], s1[0] / r});
    push({d1[0][1], r2 * d1[1][0], 2.0 * r2 * Bz});
    push({d1[2][1], r2 * d1[1][2], -2.0 * r2 * Br});
    push({d1[2][0], d1[0][2]});
    push({d1[2][2]});
    // cyl2b
    push({d2[0][0]});
    push({d2[1][1], s2[0] / r});
    push({d2[0][1], r2 * d2[1][0]});
    push({d2[2][1], r2 * d2[1][2], 2.0 * Br});
    push({d2[2][0], d2[0][2], -2.0 * Bp});
    push({d2[2][2]});
    // cyl1a
    push({dm1[0], -s1[2] * Bp, s1[1] * Bz});
    push({dm1[1], -s1[0] * Bz, s1[2] * Br, -2.0 * r2 * dW[1]});
    push({dm1[2], -s1[1] * Br, s1[0] * Bp});
    // cyl1b
    push({dm2[0], -s2[2] * Bp, s2[1] * Bz});
    push({dm2[1], -s2[0] * Bz, s2[2] * Br});
    push({dm2[2], -s2[1] * Br, s2[0] * Bp, -2.0 * dW[2]});
    // cyl0
    push({s1[0] * dW[0], s1[1] * dW[1], s1[2] * dW[2]});
    push({s2[0] * dW[0], s2[1] * dW[1], s2[2] * dW[2]});
    // extra2
    push({d2[1][1]});
    push({d2[0][1]});
    push({d1[0][2]});
    push({d2[2][1], -d1[1][2], 2.0 * Br});
    // extra1, re-derived from the first-order terms of the cross bracket.
    push({s2[0] * d1[0][0], s2[1] * d1[0][1], s2[2] * d1[0][2],
          -s1[0] * d2[0][0], -s1[1] * d2[0][1], -s1[2] * d2[0][2]});
    push({2.0 * s1[0] * Bp, -2.0 * s1[1] * Br,
          s2[0] * d1[2][0], s2[1] * d1[2][1], s2[2] * d1[2][2],
          -s1[0] * d2[2][0], -s1[1] * d2[2][1], -s1[2] * d2[2][2],
          2.0 * dm1[2]});
    push({2.0 * s2[0] * Bz, -2.0 * s2[2] * Br,
          s2[0] * d1[1][0], s2[1] * d1[1][1], s2[2] * d1[1][2],
          -s1[0] * d2[1][0], -s1[1] * d2[1][1], -s1[2] * d2[1][2],
          -2.0 * dm2[1]});
    // extra0
    push({-s1[0] * dm2[0], s2[1] * dm1[1], -s1[1] * dm2[1], s2[2] * dm1[2],
          -s1[2] * dm2[2], Br * (s2[1] * s1[2] - s1[1] * s2[2]),
          Bp * s1[0] * s2[2], -Bz * s1[0] * s2[1]});

    // The printed first-order equations, transcribed with the garbled token
    // "∂_φ 2_1^Z" read as the s1^Z derivative.
    auto pnorm = [&](std::initializer_list<double> terms) {
        double sum = 0.0;
        for (double t : terms) sum += t;
        return sum / std::max(1.0, max_abs(terms));
    };
    out.printed[0] = pnorm({s2[2] * d1[0][2], s2[1] * d1[0][1]});
    out.printed[1] = pnorm({-s1[1] * (2.0 * Br + d2[2][1]), s2[2] * d1[2][2],
                            -s1[2] * d2[2][2], s2[1] * d1[2][1],
                            s1[0] * (2.0 * Bp - d2[2][0]), 2.0 * dm1[2]});
    out.printed[2] = pnorm({-s2[2] * (2.0 * Br - d1[1][2]), s2[1] * d1[1][1],
                            -s1[2] * d2[1][2], -s1[0] * d2[1][0], -2.0 * dm2[1]});
    return out;
}

}  // namespace

ResidualReport determining_residuals(const SystemInstance& sys, const GridSpec& grid,
                                     double tol, double h0) {
    ResidualReport rep;
    rep.family = sys.family_id;
    rep.h = h0;
    rep.tol = tol;

    double eq_max[28] = {};
    double printed_max[3] = {};
    for (const CylPoint& at : grid_points(grid)) {
        if (at.r - 2.0 * h0 * std::max(1.0, at.r) < r_min())
            throw DomainError("residual grid too close to r_min for FD stencils");
        PointEquations pe = equations_at(sys, at, h0);
        for (int i = 0; i < 28; ++i)
            eq_max[i] = std::max(eq_max[i], std::abs(pe.rederived[i]));
        for (int i = 0; i < 3; ++i) {
            printed_max[i] = std::max(printed_max[i], std::abs(pe.printed[i]));
            rep.extra1_discrepancy =
                std::max(rep.extra1_discrepancy,
                         std::abs(pe.rederived[24 + i] - pe.printed[i]));
        }
    }
    for (int i = 0; i < 28; ++i) {
        rep.per_equation.emplace_back(kEquationNames[i], eq_max[i]);
        rep.max_residual = std::max(rep.max_residual, eq_max[i]);
        rep.mean_residual += eq_max[i] / 28.0;
    }
    for (int i = 0; i < 3; ++i)
        rep.extra1_printed.emplace_back(std::string("extra1_printed_") +
                                            std::to_string(i + 1),
                                        printed_max[i]);
    rep.pass = rep.max_residual <= tol;
    return rep;
}

double gauge_check(const SystemInstance& sys, const GridSpec& grid, double h0) {
    auto Ac = [&sys](int i) {
        return ScalarField([&sys, i](const CylPoint& p) { return sys.A(p)[i]; });
    };
    ScalarField Ar = Ac(0), Ap = Ac(1), Az = Ac(2);
    double worst = 0.0;
    for (const CylPoint& at : grid_points(grid)) {
        FieldTriple B = sys.B(at);
        double curl_r = fd_partial(Az, at, Axis::Phi, h0) - fd_partial(Ap, at, Axis::Z, h0);
        double curl_p = fd_partial(Ar, at, Axis::Z, h0) - fd_partial(Az, at, Axis::R, h0);
        double curl_z = fd_partial(Ap, at, Axis::R, h0) - fd_partial(Ar, at, Axis::Phi, h0);
        double scale = std::max(1.0, max_abs({B.B_r, B.B_phi, B.B_z_cyl}));
        worst = std::max(worst, max_abs({curl_r - B.B_r, curl_p - B.B_phi,
                                         curl_z - B.B_z_cyl}) / scale);
    }
    return worst;
}

double alpha_max(const SystemInstance& sys, const GridSpec& grid) {
    double worst = 0.0;
    for (const CylPoint& at : grid_points(grid))
        worst = std::max(worst, std::abs(alpha(sys.aux, at)));
    return worst;
}

ConservationReport conservation_report(const Trajectory& traj) {
    if (traj.times.empty()) throw ValidationError("conservation_report needs a non-empty trajectory");
    ConservationReport rep;
    auto add = [&rep](const std::string& name, const std::vector<double>& series) {
        if (series.empty()) return;
        ObservableDrift d;
        d.name = name;
        double ref = series.front();
        double scale = std::max(1.0, std::abs(ref));
        for (double v : series) {
            double drift = std::abs(v - ref) / scale;
            d.max = std::max(d.max, drift);
            d.mean += drift;
        }
        d.mean /= series.size();
        rep.max_drift = std::max(rep.max_drift, d.max);
        rep.drifts.push_back(d);
    };
    add("H", traj.H);
    add("X1", traj.X1);
    add("X2", traj.X2);
    add("X1_lin", traj.X1_lin);
    add("X2_lin", traj.X2_lin);
    return rep;
}

std::string json_report(const std::string& family, const std::string& kind,
                        std::uint64_t seed, double tolerance, double max_residual,
                        double mean_residual,
                        const std::vector<std::pair<std::string, double>>& per_equation,
                        bool pass) {
    std::ostringstream os;
    os << "{\"family\": \"" << family << "\", \"kind\": \"" << kind
       << "\", \"seed\": " << seed << ", \"tolerance\": " << format_full(tolerance)
       << ", \"max_residual\": " << format_full(max_residual)
       << ", \"mean_residual\": " << format_full(mean_residual)
       << ", \"per_equation\": {";
    bool first = true;
    for (const auto& [name, value] : per_equation) {
        if (!first) os << ", ";
        first = false;
        os << "\"" << name << "\": " << format_full(value);
    }
    os << "}, \"pass\": " << (pass ? "true" : "false") << "}";
    return os.str();
}

}  // namespace cylint
