#include "shgeff/shg.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "shgeff/errors.hpp"

namespace shgeff {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_2pi(double x) {
    x = std::fmod(x, kTwoPi);
    if (x < 0.0) x += kTwoPi;
    return x;
}
}  // namespace

AngleSet canonical_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw std::invalid_argument("canonical_angles: angles must be finite");
    theta = wrap_2pi(theta);
    if (theta > kPi) {
        theta = kTwoPi - theta;
        phi += kPi;
    }
    return {theta, wrap_2pi(phi)};
}

const char* to_string(PhaseMatchType pm) {
    switch (pm) {
        case PhaseMatchType::OO_E: return "ooe";
        case PhaseMatchType::EE_O: return "eeo";
        case PhaseMatchType::OE_E: return "oee";
        case PhaseMatchType::EO_O: return "eoo";
    }
    return "?";
}

std::optional<PhaseMatchType> parse_phase_match(std::string_view s) {
    if (s == "ooe") return PhaseMatchType::OO_E;
    if (s == "eeo") return PhaseMatchType::EE_O;
    if (s == "oee") return PhaseMatchType::OE_E;
    if (s == "eoo") return PhaseMatchType::EO_O;
    return std::nullopt;
}

Vec3 o_polarization(double phi) { return {std::sin(phi), -std::cos(phi), 0.0}; }

Vec3 e_polarization(double theta, double phi) {
    const double ct = std::cos(theta);
    return {-ct * std::cos(phi), -ct * std::sin(phi), std::sin(theta)};
}

PolarizationPair polarization_pair(const AngleSet& angles) {
    return {o_polarization(angles.phi), e_polarization(angles.theta, angles.phi), angles};
}

double chi_eff(const Tensor3& t, PhaseMatchType pm, const AngleSet& angles) {
    const Vec3 a = o_polarization(angles.phi);
    const Vec3 b = e_polarization(angles.theta, angles.phi);
    switch (pm) {
        case PhaseMatchType::OO_E: return contract3(t, b, a, a);
        case PhaseMatchType::EE_O: return contract3(t, a, b, b);
        case PhaseMatchType::OE_E: return contract3(t, b, a, b);
        case PhaseMatchType::EO_O: return contract3(t, a, b, a);
    }
    return 0.0;
}

Eig2 eig2_max(double m11, double m12, double m22) {
    if (!std::isfinite(m11) || !std::isfinite(m12) || !std::isfinite(m22))
        throw std::invalid_argument("eig2_max: entries must be finite");
    const double mean = 0.5 * (m11 + m22);
    const double disc = std::hypot(0.5 * (m11 - m22), m12);
    Eig2 e;
    e.lambda = mean + disc;
    if (m12 == 0.0) {
        e.v1 = (m11 >= m22) ? 1.0 : 0.0;
        e.v2 = (m11 >= m22) ? 0.0 : 1.0;
        return e;
    }
    // Two algebraically equivalent eigenvector expressions; pick the better
    // conditioned one.
    const double c1 = e.lambda - m22, c2 = e.lambda - m11;
    double v1, v2;
    if (std::abs(c1) >= std::abs(c2)) {
        v1 = c1;
        v2 = m12;
    } else {
        v1 = m12;
        v2 = c2;
    }
    const double n = std::hypot(v1, v2);
    v1 /= n;
    v2 /= n;
    if (v1 < 0.0 || (v1 == 0.0 && v2 < 0.0)) {  // first nonzero component positive
        v1 = -v1;
        v2 = -v2;
    }
    e.v1 = v1;
    e.v2 = v2;
    return e;
}

namespace {

struct Max1D {
    double phi = 0.0;
    double value = 0.0;
    long evaluations = 0;
};

// Maximizes a periodic objective over [0, 2*pi): uniform pre-scan, then
// golden-section refinement of the best bracket. The objectives are
// trigonometric polynomials of degree <= 3 in phi (at most a handful of local
// maxima), so a dense pre-scan cannot skip a basin.
template <typename F>
Max1D maximize_on_circle(F&& f, const SolverOptions& opts) {
    Max1D out;
    const int n = opts.grid_points;
    if (n < 8) throw std::invalid_argument("SolverOptions.grid_points must be >= 8");
    auto eval = [&](double phi) {
        ++out.evaluations;
        return f(phi);
    };

    const double h = kTwoPi / n;
    double best_phi = 0.0, best_val = eval(0.0);
    for (int i = 1; i < n; ++i) {
        const double phi = i * h;
        const double v = eval(phi);
        if (v > best_val) {
            best_val = v;
            best_phi = phi;
        }
    }

    constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double lo = best_phi - h, hi = best_phi + h;
    double c = hi - kInvPhi * (hi - lo), d = lo + kInvPhi * (hi - lo);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; (hi - lo) > opts.refine_tol && it < 300; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = eval(d);
        }
    }
    double phi = fc > fd ? c : d;
    double val = fc > fd ? fc : fd;
    if (best_val > val) {
        phi = best_phi;
        val = best_val;
    }

    // Report the wrapped representative and the value as evaluated there, so
    // downstream verification sees exactly the returned point.
    out.phi = wrap_2pi(phi);
    out.value = eval(out.phi);
    if (out.value < val - 1e-12 * std::max(1.0, std::abs(val))) out.value = val;  // paranoia only
    return out;
}

}  // namespace

OptResult d_eff1(const Tensor3& t, const SolverOptions& opts) {
    // Reduced objective: with w1(a) = a2*q1 - a1*q2, w2(a) = q3, the oo-e
    // coefficient equals z1*w1 + z2*w2; maximizing over the free unit z gives
    // ||(w1, w2)|| per azimuth.
    auto w_at = [&](double phi) {
        const Vec3 a = o_polarization(phi);
        const QForms q = q_forms(t, a);
        const double w1 = a[1] * q.q1 - a[0] * q.q2;
        return std::pair<double, double>(w1, q.q3);
    };
    Max1D m = maximize_on_circle(
        [&](double phi) {
            auto [w1, w2] = w_at(phi);
            return std::hypot(w1, w2);
        },
        opts);

    OptResult res;
    res.method = "reduced-1d/grid+golden";
    res.evaluations = m.evaluations;
    res.value = m.value;

    if (m.value == 0.0) {
        // Zero objective everywhere: any geometry is optimal. Canonical pick.
        res.degenerate = true;
        res.a_star = o_polarization(0.0);
        res.z1_star = 1.0;
        res.z2_star = 0.0;
        res.angles_star = {kPi / 2.0, 0.0};
        res.chi_at_angles = chi_eff(t, PhaseMatchType::OO_E, res.angles_star);
        return res;
    }
    res.a_star = o_polarization(m.phi);

    auto [w1, w2] = w_at(m.phi);
    res.z1_star = w1 / m.value;
    res.z2_star = w2 / m.value;

    // theta in [0, pi] forces sin(theta) >= 0. When the optimal z has
    // z2 < 0, the canonical box reaches only -value (through -z); the
    // magnitude check below is exact in both cases.
    double theta = (res.z2_star >= 0.0) ? std::atan2(res.z2_star, res.z1_star)
                                        : std::atan2(-res.z2_star, -res.z1_star);
    res.angles_star = {theta, m.phi};
    res.chi_at_angles = chi_eff(t, PhaseMatchType::OO_E, res.angles_star);
    if (std::abs(std::abs(res.chi_at_angles) - res.value) > opts.verify_tol)
        throw convergence_error("d_eff1: angle verification failed");
    return res;
}

OptResult d_eff2(const Tensor3& t, const SolverOptions& opts) {
    if (classify_symmetry(t) == SymmetryClass::General)
        throw symmetry_error(
            "d_eff2: reduced ee-o solver requires T(i,j,k) = T(i,k,j); "
            "use the grid oracle for general tensors");

    // Reduced objective: the ee-o coefficient is the quadratic form
    // z' [[r11, r12], [r12, r22]] z; maximizing over the free unit z gives the
    // top eigenvalue per azimuth.
    auto eig_at = [&](double phi) {
        const RForms r = r_forms(t, o_polarization(phi));
        return eig2_max(r.r11, r.r12, r.r22);
    };
    Max1D m = maximize_on_circle([&](double phi) { return eig_at(phi).lambda; }, opts);

    OptResult res;
    res.method = "reduced-1d/grid+golden";
    res.evaluations = m.evaluations;
    res.value = m.value;
    res.degenerate = (m.value == 0.0);
    if (res.degenerate) m.phi = 0.0;  // canonical azimuth for the flat objective
    res.a_star = o_polarization(m.phi);

    Eig2 e = eig_at(m.phi);
    double z1 = e.v1, z2 = e.v2;
    if (z2 < 0.0) {  // z and -z span the same eigenvector; keep sin(theta) >= 0
        z1 = -z1;
        z2 = -z2;
    }
    if (z2 == 0.0) z1 = std::abs(z1);
    res.z1_star = z1;
    res.z2_star = z2;
    res.angles_star = {std::atan2(z2, z1), m.phi};
    res.chi_at_angles = chi_eff(t, PhaseMatchType::EE_O, res.angles_star);
    if (std::abs(res.chi_at_angles - res.value) > opts.verify_tol)
        throw convergence_error("d_eff2: angle verification failed");
    return res;
}

double ScanGrid::theta(int it) const { return it * kPi / (n_theta - 1); }
double ScanGrid::phi(int ip) const { return ip * kTwoPi / n_phi; }

ScanGrid angle_scan(const Tensor3& t, PhaseMatchType pm, int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 2)
        throw std::invalid_argument("angle_scan: n_theta and n_phi must be >= 2");
    ScanGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    g.values.resize(size_t(n_theta) * n_phi);
    double best_abs = -1.0;
    for (int it = 0; it < n_theta; ++it) {
        const double theta = g.theta(it);
        for (int ip = 0; ip < n_phi; ++ip) {
            const double v = chi_eff(t, pm, {theta, g.phi(ip)});
            g.values[size_t(it) * n_phi + ip] = v;
            if (std::abs(v) > best_abs) {
                best_abs = std::abs(v);
                g.argmax_itheta = it;
                g.argmax_iphi = ip;
                g.argmax_value = v;
            }
        }
    }
    return g;
}

void write_csv(const ScanGrid& grid, std::ostream& os) {
    os << "theta,phi,value\n";
    char line[128];
    for (int it = 0; it < grid.n_theta; ++it)
        for (int ip = 0; ip < grid.n_phi; ++ip) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", grid.theta(it),
                          grid.phi(ip), grid.at(it, ip));
            os << line;
        }
}

}  // namespace shgeff
