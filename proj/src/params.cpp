#include "cylint/params.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cylint/errors.hpp"

namespace cylint {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double& out) {
    try {
        size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

ParamFile ParamFile::parse(std::istream& in) {
    ParamFile pf;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("param file line " + std::to_string(lineno) +
                                  ": expected '<key> = <value>'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError("param file line " + std::to_string(lineno) +
                                  ": empty key or value");
        if (pf.kinds_.count(key) || pf.numbers_.count(key))
            throw ValidationError("param file: duplicate key '" + key + "'");
        double num;
        if (parse_number(value, num))
            pf.numbers_[key] = num;
        else
            pf.kinds_[key] = value;
        pf.consumed_[key] = false;
    }
    return pf;
}

ParamFile ParamFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read param file '" + path + "'");
    return parse(in);
}

bool ParamFile::has(const std::string& key) const {
    return kinds_.count(key) || numbers_.count(key);
}

double ParamFile::number(const std::string& key) const {
    auto it = numbers_.find(key);
    if (it == numbers_.end())
        throw ValidationError("missing numeric parameter '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

double ParamFile::number_or(const std::string& key, double fallback) const {
    if (!numbers_.count(key)) return fallback;
    return number(key);
}

std::string ParamFile::kind(const std::string& key) const {
    auto it = kinds_.find(key);
    if (it == kinds_.end())
        throw ValidationError("missing slot or profile kind for '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string ParamFile::kind_or(const std::string& key, const std::string& fallback) const {
    if (!kinds_.count(key)) return fallback;
    return kind(key);
}

Function1D ParamFile::slot(const std::string& name, bool periodic) const {
    std::string k = kind_or(name, "zero");
    auto arg = [&](const char* a) { return number(name + "." + a); };
    auto arg_or = [&](const char* a, double v) { return number_or(name + "." + a, v); };
    if (k == "zero") return fn_zero();
    if (k == "const") return fn_const(arg("c"));
    if (k == "poly") {
        Function1D f = fn_poly(arg_or("c0", 0.0), arg_or("c1", 0.0), arg_or("c2", 0.0),
                               arg_or("c3", 0.0), arg_or("c4", 0.0));
        if (periodic)
            throw ValidationError("slot '" + name + "': poly is not 2*pi-periodic");
        return f;
    }
    if (k == "power") {
        if (periodic)
            throw ValidationError("slot '" + name + "': power is not 2*pi-periodic");
        return fn_power(arg("a"), arg("n"));
    }
    if (k == "trig") {
        double freq = arg("k");
        if (periodic && std::abs(freq - std::round(freq)) > 1e-12)
            throw ValidationError("slot '" + name +
                                  "': periodic trig slot needs integer frequency k");
        return fn_trig(arg_or("a", 0.0), arg_or("b", 0.0), freq);
    }
    if (k == "exp2") {
        if (periodic)
            throw ValidationError("slot '" + name + "': exp2 is not 2*pi-periodic");
        return fn_exp2(arg_or("a", 0.0), arg_or("b", 0.0), arg("k"));
    }
    throw ValidationError("slot '" + name + "': unknown kind '" + k + "'");
}

void ParamFile::reject_unknown() const {
    for (const auto& [key, used] : consumed_)
        if (!used) throw ValidationError("unknown parameter '" + key + "'");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

MTProfile mt_profile_from(const ParamFile& pf, const std::string& slot, bool is_T) {
    std::string k = pf.kind_or(slot, "const");
    auto arg = [&](const char* a) { return pf.number(slot + "." + a); };
    auto arg_or = [&](const char* a, double v) { return pf.number_or(slot + "." + a, v); };
    if (k == "const") return profile_const(arg_or("value", 0.0), arg_or("c1", 0.0));
    if (k == "jacobi-ex1")
        return profile_jacobi_ex1(arg("M1"), arg("M2"), arg("M3"), arg("C"));
    if (k == "jacobi-ex2")
        return profile_jacobi_ex2(arg("M1"), arg("M2"), arg("M3"), arg("C"));
    if (k == "elem-ex3") return profile_elem_ex3(arg("M1"), arg("M3"), arg("C"));
    if (k == "elem-ex4") return profile_elem_ex4(arg("M1"), arg("M2"), arg("C"));
    if (k == "trig-exp") {
        // The C = 0 branch: trigonometric for the angular slot, exponential for
        // the axial one.
        if (is_T) return profile_trig(arg("k0"), arg_or("k1", 0.0), arg_or("k2", 0.0),
                                      arg_or("k3", 0.0));
        return profile_exp(arg("k0"), arg_or("k1", 0.0), arg_or("k2", 0.0),
                           arg_or("k3", 0.0));
    }
    if (k == "numeric") {
        double C = arg("C"), c1 = arg("c1"), c2 = arg_or("c2", 0.0),
               c3 = arg_or("c3", 0.0);
        double lo = is_T ? -0.5 : -2.0;
        double hi = is_T ? 2.0 * kTwoPi + 0.5 : 2.0;
        ProfileSolution sol = solve_MT(C, c1, c2, c3, arg("y0"), arg_or("dy0", 0.0), lo, hi);
        return profile_numeric(sol, C, c1, c2, c3);
    }
    throw ValidationError("slot '" + slot + "': unknown profile kind '" + k + "'");
}

}  // namespace

SystemInstance build_from_params(const std::string& family_id, const ParamFile& pf) {
    SystemInstance sys;
    if (family_id == "F1") {
        F1Params p;
        p.rho = pf.slot("rho");
        p.sigma = pf.slot("sigma");
        p.W1 = pf.slot("W1");
        p.tau0 = pf.number_or("tau0", 0.0);
        p.mu0 = pf.number_or("mu0", 0.0);
        pf.reject_unknown();
        sys = build_f1(p);
    } else if (family_id == "F2") {
        F2Params p;
        p.sigma0 = pf.number_or("sigma0", 0.0);
        p.tau0 = pf.number_or("tau0", 0.0);
        p.tau1 = pf.number_or("tau1", 0.0);
        p.W0 = pf.number_or("W0", 0.0);
        p.f1 = pf.number("f1");
        p.beta1 = pf.number("beta1");
        p.beta2 = pf.number_or("beta2", 0.0);
        p.phi0 = pf.number_or("phi0", 0.0);
        p.profile = pf.kind_or("profile", "closed");
        if (p.profile == "numeric") {
            p.gamma0 = pf.number("gamma0");
            p.dgamma0 = pf.number_or("dgamma0", 0.0);
        }
        pf.reject_unknown();
        sys = build_f2(p);
    } else if (family_id == "F3") {
        F3Params p;
        p.M = mt_profile_from(pf, "M", /*is_T=*/false);
        p.T = mt_profile_from(pf, "T", /*is_T=*/true);
        p.w0 = pf.number_or("w0", 0.0);
        p.W1 = pf.slot("W1");
        p.swap_coupling = pf.number_or("swap_coupling", 0.0) != 0.0;
        pf.reject_unknown();
        sys = build_f3(p);
    } else if (family_id == "F4") {
        F4Params p;
        p.mu = pf.slot("mu");
        p.rho = pf.slot("rho");
        p.W1 = pf.slot("W1");
        p.W3 = pf.slot("W3");
        pf.reject_unknown();
        sys = build_f4(p);
    } else if (family_id == "F5") {
        F5Params p;
        p.tau = pf.slot("tau", /*periodic=*/true);
        p.sigma = pf.slot("sigma");
        p.W1 = pf.slot("W1");
        p.W2 = pf.slot("W2", /*periodic=*/true);
        pf.reject_unknown();
        sys = build_f5(p);
    } else if (family_id == "F6") {
        F6Params p;
        p.rho = pf.slot("rho");
        p.W1 = pf.slot("W1");
        p.W3 = pf.slot("W3");
        pf.reject_unknown();
        sys = build_f6(p);
    } else if (family_id == "F7") {
        F7Params p;
        p.sigma = pf.slot("sigma");
        p.W1 = pf.slot("W1");
        p.W2 = pf.slot("W2", /*periodic=*/true);
        pf.reject_unknown();
        sys = build_f7(p);
    } else if (family_id == "F8") {
        F8Params p;
        p.psi = pf.slot("psi", /*periodic=*/true);
        p.rho = pf.slot("rho");
        p.W1 = pf.slot("W1");
        p.W2 = pf.slot("W2", /*periodic=*/true);
        p.tau0 = pf.number_or("tau0", 0.0);
        p.sigma0 = pf.number_or("sigma0", 0.0);
        p.gate_tol = pf.number_or("gate_tol", 1e-6);
        pf.reject_unknown();
        sys = build_f8(p);
    } else {
        throw ValidationError("unknown family id '" + family_id + "'");
    }
    return sys;
}

CylPhase initial_phase_from_file(const std::string& path) {
    ParamFile pf = ParamFile::load(path);
    CylPhase ph{CylPoint(pf.number("r"), pf.number_or("phi", 0.0),
                         pf.number_or("Z", 0.0)),
                pf.number_or("p_r", 0.0), pf.number_or("p_phi", 0.0),
                pf.number_or("p_Z", 0.0)};
    pf.reject_unknown();
    return ph;
}

std::string family_schema_text(const std::string& family_id) {
    const FamilyDescriptor& d = describe_family(family_id);
    std::ostringstream os;
    os << d.id << "  (" << d.name << ")\n  " << d.summary << "\n  parameters:\n";
    for (const auto& p : d.parameters) os << "    - " << p << "\n";
    os << "  constraints:\n";
    for (const auto& c : d.constraints) os << "    - " << c << "\n";
    os << "  function-slot kinds: zero | const (c) | poly (c0..c4) | power (a, n) | "
          "trig (a, b, k) | exp2 (a, b, k)\n";
    return os.str();
}

}  // namespace cylint
