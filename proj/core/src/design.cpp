#include "cavgate/design.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cavgate {

namespace {

constexpr double kRegimeMarginLimit = 5.0;

CavityGeometry geometry_at(double t_ex, double l_cav, double a_eff, double alpha_loss,
                           const std::optional<BulkLoss>& bulk) {
    if (bulk) return make_bulk_geometry(t_ex, l_cav, a_eff, *bulk);
    return make_geometry(t_ex, l_cav, a_eff, alpha_loss);
}

double alpha_at(double l_cav, double alpha_loss, const std::optional<BulkLoss>& bulk) {
    if (bulk) return bulk->alpha_prime + bulk->beta * l_cav;
    return alpha_loss;
}

// Golden-section maximizer on x = log(v). `better(a, b)` must impose a strict
// weak order; it carries the near-tie rule for length optimization.
struct GoldenResult {
    double x = 0.0;
    double f = 0.0;
};

template <typename F, typename Better>
GoldenResult golden_max_log(const F& f, double lo, double hi, double xtol,
                            const Better& better) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lo), b = std::log(hi);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));
    while (b - a > xtol) {
        if (better(c, fc, d, fd)) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(std::exp(d));
        }
    }
    const double x = std::exp(0.5 * (a + b));
    return {x, f(x)};
}

bool plain_better(double, double fa, double, double fb) { return fa > fb; }

// Prefer the shorter cavity when fidelities agree to 1e-9.
bool short_cavity_better(double xa, double fa, double xb, double fb) {
    if (std::abs(fa - fb) <= 1e-9) return xa < xb;
    return fa > fb;
}

} // namespace

double tex_loss(double a_eff, double alpha_loss) {
    return alpha_loss * std::sqrt(2.0 / (a_eff * alpha_loss) + 1.0);
}

double tex_loss_approx(double a_eff, double alpha_loss) {
    return std::sqrt(2.0 * alpha_loss / a_eff);
}

double tex_delay(double l_cav, double a_eff, double alpha_loss) {
    return std::sqrt(8.0 * l_cav * (alpha_loss + 1.0 / a_eff) + alpha_loss * alpha_loss);
}

double tex_delay_approx(double l_cav, double a_eff) {
    return std::sqrt(8.0 * l_cav / a_eff);
}

double lcav_opt(double a_eff, double alpha_loss) {
    return 1.0 / (4.0 * (a_eff + 1.0 / alpha_loss));
}

double lcav_opt_approx(double alpha_loss) { return alpha_loss / 4.0; }

BulkOptimum lcav_bulk(double alpha_prime, double beta) {
    if (beta >= 4.0) return {0.0, true};
    return {alpha_prime / (4.0 - beta), false};
}

DurationThreshold duration_threshold(const RateParams& r) {
    r.validate();
    DurationThreshold t;
    t.branch_cavity = 1.0 / r.kappa;
    t.branch_atom = r.kappa / (r.g * r.g);
    t.w_min = std::max(t.branch_cavity, t.branch_atom);
    t.simplified = 1.0 / (r.gamma * std::sqrt(2.0 * r.c_in));
    return t;
}

DesignPoint design_point(double a_eff, double alpha_loss, std::optional<BulkLoss> bulk) {
    DesignPoint p;
    p.l_cav_opt = lcav_opt(a_eff, alpha_loss);
    p.t_ex_loss = tex_loss(a_eff, alpha_loss);
    p.t_ex_delay = tex_delay(p.l_cav_opt, a_eff, alpha_loss);
    const double c_in = 1.0 / (a_eff * alpha_loss);
    p.w_t_min = 1.0 / std::sqrt(2.0 * c_in);
    p.flags.margin_loss = p.t_ex_loss / alpha_loss;
    p.flags.margin_coupling = (2.0 / a_eff) / p.t_ex_loss;
    p.flags.regime_warning = p.flags.margin_loss < kRegimeMarginLimit ||
                             p.flags.margin_coupling < kRegimeMarginLimit;
    if (bulk) {
        p.l_cav_bulk = lcav_bulk(bulk->alpha_prime, bulk->beta);
        p.flags.bulk_dominated = p.l_cav_bulk->zero_length_optimal;
    }
    return p;
}

TexOptimum optimize_tex(double l_cav, double a_eff, double alpha_loss, double w_t,
                        const FidelityFn& fidelity, std::optional<BulkLoss> bulk,
                        double search_tol) {
    const double alpha = alpha_at(l_cav, alpha_loss, bulk);
    const double t_delay = tex_delay(l_cav, a_eff, alpha);
    const double lo = std::max(1.001 * alpha, 0.1 * t_delay);
    const double hi = std::min({0.9 * 2.0 / a_eff, 10.0 * t_delay, 0.999});
    if (!(lo < hi))
        throw BracketFailure("empty t_ex bracket at l_cav = " + std::to_string(l_cav));

    const auto eval = [&](double t) {
        return fidelity(geometry_at(t, l_cav, a_eff, alpha_loss, bulk), w_t);
    };

    GoldenResult best = golden_max_log(eval, lo, hi, search_tol, plain_better);
    const double f_lo = eval(lo);
    const double f_hi = eval(hi);
    if (best.f < std::max(f_lo, f_hi)) {
        // Not unimodal-detectable within the bracket: 64-point log grid scan,
        // then golden refinement between the argmax neighbours.
        constexpr int kGrid = 64;
        std::vector<double> ts(kGrid), fs(kGrid);
        const double la = std::log(lo), lb = std::log(hi);
        int ibest = 0;
        for (int i = 0; i < kGrid; ++i) {
            ts[i] = std::exp(la + (lb - la) * i / (kGrid - 1));
            fs[i] = eval(ts[i]);
            if (fs[i] > fs[ibest]) ibest = i;
        }
        const double rl = ts[std::max(0, ibest - 1)];
        const double rh = ts[std::min(kGrid - 1, ibest + 1)];
        GoldenResult refined = golden_max_log(eval, rl, rh, search_tol, plain_better);
        if (refined.f >= fs[ibest]) {
            best = refined;
        } else {
            best = {ts[ibest], fs[ibest]};
        }
    }
    return {best.x, best.f};
}

LcavOptimum optimize_lcav(double a_eff, double alpha_loss, double w_t,
                          const FidelityFn& fidelity, std::optional<BulkLoss> bulk,
                          double search_tol) {
    double l_ref;
    if (bulk) {
        const BulkOptimum b = lcav_bulk(bulk->alpha_prime, bulk->beta);
        l_ref = b.zero_length_optimal ? lcav_opt_approx(bulk->alpha_prime) : b.l_cav;
    } else {
        l_ref = lcav_opt(a_eff, alpha_loss);
    }
    if (!(l_ref > 0.0)) throw BracketFailure("no positive reference length for the l_cav bracket");

    const auto eval = [&](double l) {
        return optimize_tex(l, a_eff, alpha_loss, w_t, fidelity, bulk).fidelity;
    };
    GoldenResult outer =
        golden_max_log(eval, 1e-2 * l_ref, 1e2 * l_ref, search_tol, short_cavity_better);
    TexOptimum inner = optimize_tex(outer.x, a_eff, alpha_loss, w_t, fidelity, bulk);
    return {outer.x, inner.t_ex, inner.fidelity};
}

} // namespace cavgate
