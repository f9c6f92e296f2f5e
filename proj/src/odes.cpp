#include "cylint/odes.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cylint/errors.hpp"

namespace cylint {

double ProfileSolution::max_monitor() const {
    double m = 0.0;
    for (double v : monitor) m = std::max(m, std::abs(v));
    return m;
}

namespace {

struct Hermite {
    double a, h, t;  // left node, step, local coordinate in [0,1]
    int i;
};

Hermite locate(const std::vector<double>& xs, double q) {
    if (q < xs.front() - 1e-12 || q > xs.back() + 1e-12)
        throw DomainError("profile query outside solved span");
    auto it = std::upper_bound(xs.begin(), xs.end(), q);
    int i = static_cast<int>(it - xs.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(xs.size()) - 2);
    double h = xs[i + 1] - xs[i];
    return {xs[i], h, (q - xs[i]) / h, i};
}

}  // namespace

double ProfileSolution::value(double q) const {
    auto L = locate(x, q);
    double t = L.t, h = L.h;
    double y0 = y[L.i], y1 = y[L.i + 1], m0 = dy[L.i] * h, m1 = dy[L.i + 1] * h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
}

double ProfileSolution::deriv(double q) const {
    auto L = locate(x, q);
    double t = L.t, h = L.h;
    double y0 = y[L.i], y1 = y[L.i + 1], m0 = dy[L.i] * h, m1 = dy[L.i + 1] * h;
    double t2 = t * t;
    return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 +
            (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1) / h;
}

Function1D ProfileSolution::as_function() const {
    auto self = std::make_shared<ProfileSolution>(*this);
    return {
        [self](double q) { return self->value(q); },
        [self](double q) { return self->deriv(q); },
        [self](double q) { return self->rhs(self->value(q), self->deriv(q)); },
        [self](double q) {
            double v = self->value(q), d = self->deriv(q);
            return self->rhs3(v, d, self->rhs(v, d));
        },
    };
}

namespace {

// Fixed-step RK4 on (y, y') with y'' = f(y, y'). stop(y) halts before the
// state leaves the admissible region.
ProfileSolution integrate_second_order(
    const std::function<double(double, double)>& f, double y0, double dy0, double x0,
    double x1, int steps, const std::function<double(double, double)>& monitor_fn,
    const std::function<bool(double)>& stop,
    const std::function<double(double, double)>& scale_fn) {
    ProfileSolution sol;
    sol.rhs = f;
    double h = (x1 - x0) / steps;
    double y = y0, dy = dy0, x = x0;
    sol.x.push_back(x);
    sol.y.push_back(y);
    sol.dy.push_back(dy);
    sol.monitor.push_back(monitor_fn(y, dy));
    sol.branch.push_back(dy >= 0 ? 1 : -1);
    for (int i = 0; i < steps; ++i) {
        double k1y = dy, k1d = f(y, dy);
        double k2y = dy + 0.5 * h * k1d, k2d = f(y + 0.5 * h * k1y, dy + 0.5 * h * k1d);
        double k3y = dy + 0.5 * h * k2d, k3d = f(y + 0.5 * h * k2y, dy + 0.5 * h * k2d);
        double k4y = dy + h * k3d, k4d = f(y + h * k3y, dy + h * k3d);
        double yn = y + h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
        double dyn = dy + h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
        double mn = monitor_fn(yn, dyn);
        // Truncate instead of recording a node the first integral no longer
        // certifies (a step that jumped across a singular point produces a
        // finite but meaningless state).
        bool degraded = !std::isfinite(yn) || !std::isfinite(dyn) ||
                        std::abs(mn) > 1e-9 * std::max(1.0, scale_fn(yn, dyn));
        if ((stop && stop(yn)) || degraded) {
            sol.truncated = true;
            break;
        }
        y = yn;
        dy = dyn;
        x = x0 + (i + 1) * h;
        sol.x.push_back(x);
        sol.y.push_back(y);
        sol.dy.push_back(dy);
        sol.monitor.push_back(mn);
        sol.branch.push_back(dy >= 0 ? 1 : -1);
    }
    if (sol.x.size() < 2) throw PositivityLoss("profile left admissible region immediately");
    return sol;
}

}  // namespace

ProfileSolution solve_gamma(double f1, double beta1, double beta2, double gamma0,
                            double dgamma0, double x0, double x1, int steps) {
    if (!(gamma0 > 0.0)) throw PositivityLoss("gamma0 must be positive");
    auto monitor = [=](double g, double dg) {
        return g * dg * dg + 4 * g * g * g - 4 * beta1 * g + f1 * g * g - beta2;
    };
    if (std::abs(monitor(gamma0, dgamma0)) > 1e-10)
        throw InconsistentInitialData(
            "initial data violates the gamma first integral by more than 1e-10");
    auto f = [=](double g, double dg) {
        return -(dg * dg + 12 * g * g - 4 * beta1 + 2 * f1 * g) / (2 * g);
    };
    auto stop = [](double g) { return g <= 1e-9; };
    auto scale = [=](double g, double dg) {
        return std::abs(g * dg * dg) + 4 * std::abs(g * g * g) +
               4 * std::abs(beta1 * g) + std::abs(f1 * g * g) + std::abs(beta2);
    };
    ProfileSolution sol = integrate_second_order(f, gamma0, dgamma0, x0, x1, steps,
                                                 monitor, stop, scale);
    sol.rhs3 = [=](double g, double dg, double d2g) {
        double N = dg * dg + 12 * g * g - 4 * beta1 + 2 * f1 * g;
        double dN = 2 * dg * d2g + 24 * g * dg + 2 * f1 * dg;
        return -dN / (2 * g) + N * dg / (2 * g * g);
    };
    return sol;
}

ProfileSolution solve_MT(double C, double C1, double C2, double C3, double y0,
                         double dy0, double x0, double x1, int steps) {
    auto monitor = [=](double y, double dy) {
        return dy * dy - (((C * y + C1) * y + C2) * y + C3);
    };
    if (std::abs(monitor(y0, dy0)) > 1e-10)
        throw InconsistentInitialData(
            "initial data violates the M/T first integral by more than 1e-10");
    auto f = [=](double y, double) { return (3 * C * y * y + 2 * C1 * y + C2) / 2; };
    auto scale = [=](double y, double dy) {
        return dy * dy + std::abs(C * y * y * y) + std::abs(C1 * y * y) +
               std::abs(C2 * y) + std::abs(C3);
    };
    ProfileSolution sol =
        integrate_second_order(f, y0, dy0, x0, x1, steps, monitor, nullptr, scale);
    sol.rhs3 = [=](double y, double dy, double) { return (3 * C * y + C1) * dy; };
    return sol;
}

}  // namespace cylint
