#ifndef CYLINT_VERIFY_HPP
#define CYLINT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cylint/catalog.hpp"
#include "cylint/dynamics.hpp"

namespace cylint {

using PhaseFn = std::function<double(const CylPhase&)>;

// Poisson bracket sum_q (dF/dq dG/dp_q - dF/dp_q dG/dq), q in {r, phi, Z},
// all partials by 4th-order central differences at step h0 * max(1, |coord|).
double poisson_bracket_fd(const PhaseFn& F, const PhaseFn& G, const CylPhase& ph,
                          double h0 = 1e-3);

struct PairResidual {
    std::string pair;
    double max = 0.0;
    double mean = 0.0;
};

struct CommutationReport {
    std::string family;
    int samples = 0;
    std::uint64_t seed = 0;
    double h = 0.0;
    double tol = 0.0;
    std::vector<PairResidual> pairs;  // H-X1, H-X2, X1-X2
    double max_residual = 0.0;
    double mean_residual = 0.0;
    bool pass = false;
};

// Samples phases uniformly from r in [0.5, 2], phi in [0, 2*pi), Z in [-1, 1],
// each momentum in [-2, 2]; residuals normalized by max(1, |gradF| |gradG|).
CommutationReport check_commutation(const SystemInstance& sys, int n_samples,
                                    std::uint64_t seed, double tol, double h0 = 1e-3);

struct GridSpec {
    int nr = 5, nphi = 8, nz = 5;
    double r_lo = 0.5, r_hi = 2.0;
    double z_lo = -1.0, z_hi = 1.0;
};

std::vector<CylPoint> grid_points(const GridSpec& grid);

struct ResidualReport {
    std::string family;
    double h = 0.0;
    double tol = 0.0;
    // Max normalized residual over the grid for each of the 28 determining
    // equations, in fixed order.
    std::vector<std::pair<std::string, double>> per_equation;
    double max_residual = 0.0;
    double mean_residual = 0.0;  // mean of the per-equation maxima
    bool pass = false;
    // The first-order cross-bracket equations as literally printed (with the
    // garbled token read as s1^Z) alongside the re-derived forms used above.
    std::vector<std::pair<std::string, double>> extra1_printed;
    double extra1_discrepancy = 0.0;
};

// Evaluates all 28 determining equations from value-only evaluators of
// s1, s2, m1, m2, B and W, every derivative by 4th-order FD.
ResidualReport determining_residuals(const SystemInstance& sys, const GridSpec& grid,
                                     double tol, double h0 = 1e-3);

// Max normalized mismatch between the FD curl of A and the instance's B over
// the grid (2-form components).
double gauge_check(const SystemInstance& sys, const GridSpec& grid, double h0 = 1e-3);

// Max |alpha| over the grid; vanishes for every solution of the determining
// equations.
double alpha_max(const SystemInstance& sys, const GridSpec& grid);

struct ObservableDrift {
    std::string name;
    double max = 0.0;
    double mean = 0.0;
};

struct ConservationReport {
    std::vector<ObservableDrift> drifts;  // H, X1, X2 (+ linear ones if present)
    double max_drift = 0.0;
};

// Drift of each recorded observable relative to its initial value,
// |obs(t) - obs(0)| / max(1, |obs(0)|).
ConservationReport conservation_report(const Trajectory& traj);

// Serialization of any verify outcome into the common report schema.
std::string json_report(const std::string& family, const std::string& kind,
                        std::uint64_t seed, double tolerance, double max_residual,
                        double mean_residual,
                        const std::vector<std::pair<std::string, double>>& per_equation,
                        bool pass);

}  // namespace cylint

#endif
