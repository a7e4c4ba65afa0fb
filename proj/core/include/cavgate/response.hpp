#pragma once

#include <complex>

#include "cavgate/params.hpp"

// Complex amplitude reflection response of the one-sided cavity, its Taylor
// expansion around resonance, and the derived loss/delay error measures.

namespace cavgate {

/// Reflection coefficients at one detuning delta = omega - omega_c (units gamma).
struct ResponseSample {
    double delta = 0.0;
    std::complex<double> l0; ///< atom in |0>: bare-cavity reflection
    std::complex<double> l1; ///< atom in |1>: atom-dressed reflection
};

/// Resonant photon-loss probabilities and group delays per atomic branch.
struct ErrorBudget {
    double loss_0 = 0.0; ///< 1 - L0(0)^2
    double loss_1 = 0.0; ///< 1 - L1(0)^2
    double tau_0 = 0.0;  ///< delay of the |0> branch, units 1/gamma
    double tau_1 = 0.0;  ///< delay of the |1> branch, units 1/gamma
};

/// Taylor coefficients at delta = 0:  L_n(delta) ~ const_n + i*slope_n*delta.
/// The zeroth coefficients are real and the first purely imaginary; the
/// imaginary magnitudes are stored as plain doubles.
struct SeriesCoefficients {
    double l0_const = 0.0;
    double l0_slope = 0.0;
    double l1_const = 0.0;
    double l1_slope = 0.0;
};

/// Real second-order coefficients, L_n ~ ... + curv_n * delta^2. Used for the
/// pulse-duration validity threshold and series-remainder bounds.
struct SecondOrderCoefficients {
    double l0_curv = 0.0;
    double l1_curv = 0.0;
};

/// d/dT_ex of the four error measures at fixed (l_cav, a_eff, alpha_loss).
struct TexDerivatives {
    double dloss0 = 0.0;
    double dloss1 = 0.0;
    double dtau0 = 0.0;
    double dtau1 = 0.0;
};

/// Rate form:
///   L0 = (-k_ex + k_in + i d) / (k_ex + k_in + i d)
///   L1 = (-k_ex + k_in + i d + g^2/(gamma + i d)) / (k_ex + k_in + i d + g^2/(gamma + i d))
ResponseSample eval_response(const RateParams& r, double delta);

/// Geometry form, written independently of eval_response as a consistency
/// pair; agrees with it through the geometry->rate map to rounding.
ResponseSample eval_response_geometric(const CavityGeometry& geo, double delta);

SeriesCoefficients series_coefficients(const CavityGeometry& geo);
SecondOrderCoefficients second_order_coefficients(const RateParams& r);

/// Closed-form loss/delay budget. Throws DegenerateCoupling at the tau_0 pole
/// |t_ex - alpha_loss| < 1e-12 and at the L1(0) zero t_ex = alpha_loss + 2/a_eff.
ErrorBudget error_budget(const CavityGeometry& geo);

TexDerivatives tex_derivatives(const CavityGeometry& geo);

} // namespace cavgate
