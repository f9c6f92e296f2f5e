#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cylint/dynamics.hpp"
#include "cylint/errors.hpp"
#include "cylint/odes.hpp"
#include "cylint/params.hpp"
#include "cylint/specialfn.hpp"
#include "cylint/verify.hpp"

namespace {

using namespace cylint;

std::ostream& open_output(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw ValidationError("cannot write to '" + out_path + "'");
    return file;
}

int cmd_list() {
    for (const auto& d : family_catalog())
        std::cout << d.id << "  " << d.name << "  -  " << d.summary << "\n";
    return 0;
}

int cmd_describe(const std::string& family) {
    std::cout << family_schema_text(family);
    return 0;
}

int cmd_simulate(const std::string& family, const std::string& params_path,
                 const std::string& initial_path, double t_end, double dt,
                 const std::string& integrator, const std::string& out_path) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(t_end > 0.0)) throw ValidationError("t-end must be positive");
    SystemInstance sys = build_from_params(family, ParamFile::load(params_path));
    CylPhase initial = initial_phase_from_file(initial_path);
    IntegratorConfig cfg;
    cfg.dt = dt;
    if (integrator == "rk4")
        cfg.scheme = Scheme::RK4;
    else if (integrator == "midpoint")
        cfg.scheme = Scheme::ImplicitMidpoint;
    else
        throw ValidationError("integrator must be rk4 or midpoint");
    Trajectory traj = integrate(sys, initial, t_end, cfg);
    std::ofstream file;
    write_trajectory_csv(traj, open_output(out_path, file));
    return traj.truncated ? 3 : 0;
}

int cmd_verify(const std::string& kind, const std::string& family,
               const std::string& params_path, int samples, std::uint64_t seed,
               double tol, const std::string& initial_path, int steps, double dt,
               const std::string& out_path) {
    SystemInstance sys = build_from_params(family, ParamFile::load(params_path));
    std::string json;
    bool pass = false;
    if (kind == "commutation") {
        CommutationReport rep = check_commutation(sys, samples, seed, tol);
        std::vector<std::pair<std::string, double>> per;
        for (const auto& pr : rep.pairs) {
            per.emplace_back(pr.pair + "_max", pr.max);
            per.emplace_back(pr.pair + "_mean", pr.mean);
        }
        pass = rep.pass;
        json = json_report(family, "commutation", seed, tol, rep.max_residual,
                           rep.mean_residual, per, pass);
    } else if (kind == "residuals") {
        ResidualReport rep = determining_residuals(sys, GridSpec{}, tol);
        auto per = rep.per_equation;
        for (const auto& e : rep.extra1_printed) per.push_back(e);
        per.emplace_back("extra1_discrepancy", rep.extra1_discrepancy);
        pass = rep.pass;
        json = json_report(family, "residuals", seed, tol, rep.max_residual,
                           rep.mean_residual, per, pass);
    } else if (kind == "gauge") {
        double worst = gauge_check(sys, GridSpec{});
        pass = worst <= tol;
        json = json_report(family, "gauge", seed, tol, worst, worst,
                           {{"curl", worst}}, pass);
    } else if (kind == "conservation") {
        if (initial_path.empty())
            throw ValidationError("conservation verification needs --initial");
        CylPhase initial = initial_phase_from_file(initial_path);
        IntegratorConfig cfg;
        cfg.dt = dt;
        Trajectory traj = integrate(sys, initial, steps * dt, cfg);
        if (traj.truncated)
            throw ValidationError("trajectory truncated near the axis; shorten the run");
        ConservationReport rep = conservation_report(traj);
        std::vector<std::pair<std::string, double>> per;
        double mean = 0.0;
        for (const auto& d : rep.drifts) {
            per.emplace_back(d.name + "_max", d.max);
            per.emplace_back(d.name + "_mean", d.mean);
            mean += d.max / rep.drifts.size();
        }
        pass = rep.max_drift <= tol;
        json = json_report(family, "conservation", seed, tol, rep.max_drift, mean, per,
                           pass);
    } else {
        throw ValidationError("unknown verify kind '" + kind + "'");
    }
    std::ofstream file;
    open_output(out_path, file) << json << "\n";
    return pass ? 0 : 1;
}

int cmd_special(const std::string& fn, double u, double k) {
    EllipticModulus mod{k};
    double v;
    if (fn == "K")
        v = ellip_K(mod);
    else if (fn == "sn")
        v = jacobi_sn_cn_dn(u, mod).sn;
    else if (fn == "cn")
        v = jacobi_sn_cn_dn(u, mod).cn;
    else if (fn == "dn")
        v = jacobi_sn_cn_dn(u, mod).dn;
    else
        throw ValidationError("unknown special function '" + fn + "'");
    std::cout << format_full(v) << "\n";
    return 0;
}

void dump_profile(const ProfileSolution& sol, const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_output(out_path, file);
    os << "x,y,dy,monitor,branch\n";
    for (size_t i = 0; i < sol.x.size(); ++i)
        os << format_full(sol.x[i]) << ',' << format_full(sol.y[i]) << ','
           << format_full(sol.dy[i]) << ',' << format_full(sol.monitor[i]) << ','
           << sol.branch[i] << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"catalog, simulation and verification of integrable systems in "
                 "cylindrical-type magnetic fields"};
    app.require_subcommand(1);

    app.add_subcommand("list", "list the catalog families");

    std::string family;
    auto* describe = app.add_subcommand("describe", "show a family's parameter schema");
    describe->add_option("--family", family, "family id F1..F8")->required();

    std::string params_path, initial_path, out_path, integrator = "midpoint";
    double t_end = 1.0, dt = 1e-3;
    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory, CSV output");
    simulate->add_option("--family", family)->required();
    simulate->add_option("--params", params_path, "parameter file")->required();
    simulate->add_option("--initial", initial_path, "initial phase file")->required();
    simulate->add_option("--t-end", t_end)->required();
    simulate->add_option("--dt", dt);
    simulate->add_option("--integrator", integrator, "rk4 | midpoint");
    simulate->add_option("--out", out_path, "output file (default stdout)");

    std::string kind;
    int samples = 100, steps = 10000;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    auto* verify = app.add_subcommand("verify", "verification suites, JSON report");
    verify->add_option("kind", kind, "commutation | residuals | gauge | conservation")
        ->required();
    verify->add_option("--family", family)->required();
    verify->add_option("--params", params_path)->required();
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    verify->add_option("--tol", tol);
    verify->add_option("--initial", initial_path, "initial phase (conservation)");
    verify->add_option("--steps", steps, "step count (conservation)");
    verify->add_option("--dt", dt);
    verify->add_option("--out", out_path);

    std::string fn;
    double u = 0.0, kmod = 0.0;
    auto* special = app.add_subcommand("special", "Jacobi elliptic functions and K");
    special->add_option("fn", fn, "sn | cn | dn | K")->required();
    special->add_option("--u", u);
    special->add_option("--k", kmod)->required();

    auto* profile = app.add_subcommand("profile", "solve a profile ODE, CSV output");
    profile->require_subcommand(1);
    double f1 = 0.0, beta1 = 0.0, beta2 = 0.0, gamma0 = 1.0, dgamma0 = 0.0;
    double x0 = 0.0, x1 = 1.0;
    int psteps = 10000;
    auto* pgamma = profile->add_subcommand("gamma", "angular profile of the exotic family");
    pgamma->add_option("--f1", f1)->required();
    pgamma->add_option("--beta1", beta1)->required();
    pgamma->add_option("--beta2", beta2);
    pgamma->add_option("--gamma0", gamma0)->required();
    pgamma->add_option("--dgamma0", dgamma0);
    pgamma->add_option("--x0", x0);
    pgamma->add_option("--x1", x1)->required();
    pgamma->add_option("--steps", psteps);
    pgamma->add_option("--out", out_path);
    double C = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0, y0 = 0.0, dy0 = 0.0;
    auto* pmt = profile->add_subcommand("mt", "cubic first-integral profile");
    pmt->add_option("--C", C)->required();
    pmt->add_option("--C1", C1)->required();
    pmt->add_option("--C2", C2);
    pmt->add_option("--C3", C3);
    pmt->add_option("--y0", y0)->required();
    pmt->add_option("--dy0", dy0);
    pmt->add_option("--x0", x0);
    pmt->add_option("--x1", x1)->required();
    pmt->add_option("--steps", psteps);
    pmt->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand("describe")) return cmd_describe(family);
        if (app.got_subcommand("simulate"))
            return cmd_simulate(family, params_path, initial_path, t_end, dt, integrator,
                                out_path);
        if (app.got_subcommand("verify"))
            return cmd_verify(kind, family, params_path, samples, seed, tol,
                              initial_path, steps, dt, out_path);
        if (app.got_subcommand("special")) return cmd_special(fn, u, kmod);
        if (app.got_subcommand("profile")) {
            ProfileSolution sol =
                profile->got_subcommand("gamma")
                    ? solve_gamma(f1, beta1, beta2, gamma0, dgamma0, x0, x1, psteps)
                    : solve_MT(C, C1, C2, C3, y0, dy0, x0, x1, psteps);
            dump_profile(sol, out_path);
            return sol.truncated ? 3 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
