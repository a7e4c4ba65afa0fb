#include "cavgate/params.hpp"

#include <cmath>
#include <sstream>

namespace cavgate {

namespace {

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

[[noreturn]] void fail_geometry(const std::string& what) {
    throw InvalidGeometry("invalid geometry: " + what);
}

} // namespace

double CavityGeometry::effective_alpha_loss() const {
    if (bulk) return bulk->alpha_prime + bulk->beta * l_cav;
    return alpha_loss;
}

void CavityGeometry::validate() const {
    if (!finite_positive(l_cav)) fail_geometry("l_cav must be > 0");
    if (!finite_positive(a_eff)) fail_geometry("a_eff must be > 0");
    if (!(std::isfinite(t_ex) && t_ex > 0.0 && t_ex < 1.0))
        fail_geometry("t_ex must lie in (0, 1)");
    if (bulk) {
        if (!(std::isfinite(bulk->alpha_prime) && bulk->alpha_prime >= 0.0))
            fail_geometry("alpha_prime must be >= 0");
        if (!(std::isfinite(bulk->beta) && bulk->beta >= 0.0))
            fail_geometry("beta must be >= 0");
    }
    const double alpha = effective_alpha_loss();
    if (!(std::isfinite(alpha) && alpha > 0.0)) fail_geometry("alpha_loss must be > 0");
    if (alpha >= 0.5)
        fail_geometry("round-trip loss " + std::to_string(alpha) +
                      " too large for the linearized loss model (limit 0.5)");
}

CavityGeometry make_geometry(double t_ex, double l_cav, double a_eff, double alpha_loss) {
    CavityGeometry geo{t_ex, l_cav, a_eff, alpha_loss, std::nullopt};
    geo.validate();
    return geo;
}

CavityGeometry make_bulk_geometry(double t_ex, double l_cav, double a_eff, BulkLoss bulk) {
    CavityGeometry geo{t_ex, l_cav, a_eff, 0.0, bulk};
    geo.alpha_loss = geo.effective_alpha_loss();
    geo.validate();
    return geo;
}

void RateParams::validate() const {
    if (!finite_positive(g) || !finite_positive(kappa_in) || !finite_positive(kappa_ex) ||
        !finite_positive(gamma))
        throw Inconsistent("all rates must be finite and > 0");
    if (std::abs(kappa - (kappa_in + kappa_ex)) > 1e-12 * kappa)
        throw Inconsistent("kappa != kappa_in + kappa_ex");
    const double c_in_expected = g * g / (2.0 * gamma * kappa_in);
    if (std::abs(c_in - c_in_expected) > 1e-12 * c_in_expected)
        throw Inconsistent("c_in inconsistent with g^2/(2 gamma kappa_in)");
}

RateParams make_rates(double g, double kappa_in, double kappa_ex, double gamma) {
    RateParams r;
    r.g = g;
    r.kappa_in = kappa_in;
    r.kappa_ex = kappa_ex;
    r.gamma = gamma;
    r.kappa = kappa_in + kappa_ex;
    r.c_in = g * g / (2.0 * gamma * kappa_in);
    r.validate();
    return r;
}

RateParams rates_from_geometry(const CavityGeometry& geo) {
    geo.validate();
    const double alpha = geo.effective_alpha_loss();
    const double g = std::sqrt(1.0 / (2.0 * geo.a_eff * geo.l_cav));
    const double kappa_in = alpha / (4.0 * geo.l_cav);
    const double kappa_ex = geo.t_ex / (4.0 * geo.l_cav);
    return make_rates(g, kappa_in, kappa_ex, 1.0);
}

CavityGeometry geometry_from_rates(const RateParams& r, double a_eff) {
    r.validate();
    if (!finite_positive(a_eff)) throw Inconsistent("a_eff must be > 0");
    // g^2 = c gamma / (2 a_eff l_cav)  =>  l_cav = gamma / (2 a_eff g^2)
    const double l_cav = r.gamma / (2.0 * a_eff * r.g * r.g);
    const double alpha_loss = 4.0 * l_cav * r.kappa_in;
    const double t_ex = 4.0 * l_cav * r.kappa_ex;
    CavityGeometry geo{t_ex, l_cav, a_eff, alpha_loss, std::nullopt};
    try {
        geo.validate();
    } catch (const InvalidGeometry& e) {
        throw Inconsistent(std::string("rates not producible by a valid geometry: ") + e.what());
    }
    return geo;
}

std::vector<std::pair<std::string, double>> reference_ratio_table() {
    return {
        {"free-space", 0.067},
        {"fiber", 8.3},
        {"nanophotonic", 460.0},
        {"nanofiber", 0.04},
    };
}

} // namespace cavgate
