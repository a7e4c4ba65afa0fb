#pragma once

#include <functional>
#include <optional>

#include "cavgate/params.hpp"

// Analytic optimal cavity parameters, the pulse-duration validity threshold,
// and numerical 1-D/2-D optimization against a finite-pulse fidelity.

namespace cavgate {

/// Pulse-duration threshold below which the first-order (loss + delay)
/// picture breaks down.
struct DurationThreshold {
    double w_min = 0.0;         ///< max(1/kappa, kappa/g^2)
    double branch_cavity = 0.0; ///< 1/kappa
    double branch_atom = 0.0;   ///< kappa/g^2
    double simplified = 0.0;    ///< 1/(gamma sqrt(2 C_in))
};

/// Optimal length when the round-trip loss grows with cavity length.
/// zero_length_optimal is the modeled outcome for beta >= 4 gamma/c, where no
/// finite optimum exists.
struct BulkOptimum {
    double l_cav = 0.0;
    bool zero_length_optimal = false;
};

struct DesignFlags {
    bool regime_warning = false;    ///< some 2/a_eff >> t_ex >> alpha margin < 5x
    double margin_loss = 0.0;       ///< t_ex / alpha_loss at the optimum
    double margin_coupling = 0.0;   ///< (2/a_eff) / t_ex at the optimum
    bool bulk_dominated = false;    ///< beta >= 4 gamma/c
};

struct DesignPoint {
    double t_ex_loss = 0.0;  ///< transmittance equalizing the two losses (exact form)
    double t_ex_delay = 0.0; ///< transmittance equalizing the two delays, at l_cav_opt
    double l_cav_opt = 0.0;  ///< length where the two conditions intersect (exact form)
    std::optional<BulkOptimum> l_cav_bulk;
    double w_t_min = 0.0;    ///< 1/(gamma sqrt(2 C_in))
    DesignFlags flags;
};

/// Exact form alpha*sqrt(2/(a_eff*alpha) + 1); minimizes loss_0 + loss_1 and
/// |loss_0 - loss_1| simultaneously, independent of cavity length.
double tex_loss(double a_eff, double alpha_loss);
double tex_loss_approx(double a_eff, double alpha_loss); ///< sqrt(2 alpha/a_eff)

/// Exact form sqrt(8 l_cav (alpha + 1/a_eff) + alpha^2); makes tau_0 == tau_1.
double tex_delay(double l_cav, double a_eff, double alpha_loss);
double tex_delay_approx(double l_cav, double a_eff); ///< sqrt(8 l_cav / a_eff)

/// Length where tex_loss == tex_delay: 1 / (4 (a_eff + 1/alpha_loss)).
double lcav_opt(double a_eff, double alpha_loss);
double lcav_opt_approx(double alpha_loss); ///< alpha_loss / 4

/// alpha'/(4 - beta) for beta < 4; zero-length outcome otherwise.
BulkOptimum lcav_bulk(double alpha_prime, double beta);

DurationThreshold duration_threshold(const RateParams& r);

DesignPoint design_point(double a_eff, double alpha_loss,
                         std::optional<BulkLoss> bulk = std::nullopt);

/// Gate-fidelity evaluator supplied by the pulse layer. Must be pure and
/// thread-safe.
using FidelityFn = std::function<double(const CavityGeometry&, double w_t)>;

struct TexOptimum {
    double t_ex = 0.0;
    double fidelity = 0.0;
};

struct LcavOptimum {
    double l_cav = 0.0;
    double t_ex = 0.0;
    double fidelity = 0.0;
};

/// Maximizes F over t_ex by golden-section search on log t_ex over the bracket
/// [max(1.001 alpha, 0.1 t_delay), min(0.9 * 2/a_eff, 10 t_delay, 0.999)],
/// relative tolerance search_tol. Falls back to a 64-point log grid scan with
/// local refinement when the interior result does not beat both bracket ends.
/// With bulk coefficients the loss is re-evaluated per length.
TexOptimum optimize_tex(double l_cav, double a_eff, double alpha_loss, double w_t,
                        const FidelityFn& fidelity,
                        std::optional<BulkLoss> bulk = std::nullopt,
                        double search_tol = 1e-4);

/// Nested 2-D optimization: outer golden-section on log l_cav over
/// [1e-2, 1e2] * l_cav_opt (rel. tolerance search_tol), inner optimize_tex.
/// Near-ties (|dF| <= 1e-9) resolve toward the shorter cavity.
LcavOptimum optimize_lcav(double a_eff, double alpha_loss, double w_t,
                          const FidelityFn& fidelity,
                          std::optional<BulkLoss> bulk = std::nullopt,
                          double search_tol = 1e-3);

} // namespace cavgate
