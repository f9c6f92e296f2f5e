#ifndef CYLINT_DYNAMICS_HPP
#define CYLINT_DYNAMICS_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "cylint/catalog.hpp"

namespace cylint {

using PhaseVec = Eigen::Matrix<double, 6, 1>;  // (r, phi, Z, p_r, p_phi, p_Z)

enum class Scheme { RK4, ImplicitMidpoint };

struct IntegratorConfig {
    Scheme scheme = Scheme::ImplicitMidpoint;
    double dt = 1e-3;
    double fp_tol = 1e-12;   // implicit-midpoint fixed point
    int fp_max_iters = 50;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CylPhase> states;
    std::vector<double> H, X1, X2;
    std::vector<double> X1_lin, X2_lin;  // empty when the family has none
    bool truncated = false;              // stopped at r < r_min
};

CylPhase phase_from_vec(const PhaseVec& y);
PhaseVec vec_from_phase(const CylPhase& ph);

// Hamilton's equations with the instance's analytic gradW and jacA.
PhaseVec eom(const SystemInstance& sys, const PhaseVec& y);

// One step of the requested scheme; dt may be negative (time reversal).
PhaseVec step(const SystemInstance& sys, const PhaseVec& y, double dt,
              const IntegratorConfig& cfg);

// Fixed-step integration over [0, t_end], states sampled every cfg.dt.
// Trajectories reaching r < r_min are returned truncated with the flag set.
Trajectory integrate(const SystemInstance& sys, const CylPhase& initial, double t_end,
                     const IntegratorConfig& cfg);

// Columns t, r, phi, Z, p_r, p_phi, p_Z, H, X1, X2 (+ X1_lin, X2_lin when
// present), 17 significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

std::string format_full(double v);  // 17 significant digits

}  // namespace cylint

#endif
