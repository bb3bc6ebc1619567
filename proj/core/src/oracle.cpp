#include "shgeff/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace shgeff {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kStepFloor = 1e-10;

// Derivative-free coordinate descent (pattern search) with step halving:
// robust at the |.| kinks of the objectives. Never accepts a worse point.
template <typename F>
void pattern_refine(F&& f, double& u, double& v, double step_u, double step_v, double& best) {
    int guard = 0;
    while ((step_u > kStepFloor || step_v > kStepFloor) && ++guard < 100000) {
        double cand_u = u, cand_v = v, cand = best;
        const double us[2] = {u - step_u, u + step_u};
        const double vs[2] = {v - step_v, v + step_v};
        for (double uu : us) {
            const double val = f(uu, v);
            if (val > cand) {
                cand = val;
                cand_u = uu;
                cand_v = v;
            }
        }
        for (double vv : vs) {
            const double val = f(u, vv);
            if (val > cand) {
                cand = val;
                cand_u = u;
                cand_v = vv;
            }
        }
        if (cand > best) {
            best = cand;
            u = cand_u;
            v = cand_v;
        } else {
            step_u *= 0.5;
            step_v *= 0.5;
        }
    }
}

}  // namespace

DeffOracleResult grid_max_deff(const Tensor3& t, PhaseMatchType pm, int n) {
    if (n < 16) throw std::invalid_argument("grid_max_deff: n must be >= 16");
    DeffOracleResult out;
    out.grid_n = n;

    auto f = [&](double theta, double phi) {
        ++out.evaluations;
        return std::abs(chi_eff(t, pm, {theta, phi}));
    };

    const double ht = kPi / n, hp = kTwoPi / n;
    double best = -1.0, bt = 0.0, bp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = i * ht;
        for (int j = 0; j < n; ++j) {
            const double phi = j * hp;
            const double v = f(theta, phi);
            if (v > best) {  // strict: ties keep the lowest linear index
                best = v;
                bt = theta;
                bp = phi;
            }
        }
    }
    out.coarse_value = best;

    pattern_refine(f, bt, bp, ht, hp, best);
    out.value = best;

    out.argmax = canonical_angles(bt, bp);
    const double at_canonical = std::abs(chi_eff(t, pm, out.argmax));
    if (at_canonical > out.value) out.value = at_canonical;
    return out;
}

CeigOracleResult grid_max_ceig(const Tensor3& t, int n) {
    if (n < 16) throw std::invalid_argument("grid_max_ceig: n must be >= 16");
    CeigOracleResult out;
    out.grid_n = n;

    auto y_of = [](double polar, double azimuth) -> Vec3 {
        const double sp = std::sin(polar);
        return {sp * std::cos(azimuth), sp * std::sin(azimuth), std::cos(polar)};
    };
    // lambda_of_y inlined on the raw direction (normalized defensively so the
    // pattern search may roam without tripping the unit-norm contract).
    auto f = [&](double polar, double azimuth) {
        ++out.evaluations;
        return norm(contract_yy(t, normalized(y_of(polar, azimuth))));
    };

    const double ha = kPi / n, hb = kTwoPi / n;
    double best = -1.0, ba = 0.0, bb = 0.0;
    for (int i = 0; i < n; ++i) {
        const double polar = i * ha;
        const int jmax = (i == 0) ? 1 : n;  // pole evaluated once
        for (int j = 0; j < jmax; ++j) {
            const double azimuth = j * hb;
            const double v = f(polar, azimuth);
            if (v > best) {
                best = v;
                ba = polar;
                bb = azimuth;
            }
        }
    }
    out.coarse_value = best;

    pattern_refine(f, ba, bb, ha, hb, best);
    out.value = best;

    out.y = normalized(y_of(ba, bb));
    const Vec3 g = contract_yy(t, out.y);
    const double ng = norm(g);
    out.x = (ng > 0.0) ? scaled(g, 1.0 / ng) : Vec3{1.0, 0.0, 0.0};
    return out;
}

}  // namespace shgeff
