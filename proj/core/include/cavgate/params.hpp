#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cavgate/errors.hpp"

// Physical parameter model in canonical units: gamma = 1 (time unit 1/gamma)
// and c = 1 (length unit c/gamma). All quantities are dimensionless.

namespace cavgate {

/// Round-trip loss split into a mirror-scattering part and a bulk part that
/// grows linearly with cavity length: alpha_loss = alpha_prime + beta * l_cav.
struct BulkLoss {
    double alpha_prime = 0.0; ///< mirror-scattering loss per round trip
    double beta = 0.0;        ///< bulk loss per unit length, units gamma/c
};

/// The experimentally tunable cavity knobs.
struct CavityGeometry {
    double t_ex = 0.0;       ///< coupling-mirror transmittance, in (0, 1)
    double l_cav = 0.0;      ///< optical cavity length, units c/gamma
    double a_eff = 0.0;      ///< effective mode area over scattering cross-section
    double alpha_loss = 0.0; ///< round-trip loss, in (0, 1)
    std::optional<BulkLoss> bulk;

    /// alpha_prime + beta*l_cav when bulk coefficients are present,
    /// otherwise alpha_loss itself.
    double effective_alpha_loss() const;

    /// Throws InvalidGeometry if any invariant is violated. The linearized
    /// loss model requires the effective loss to stay well below 1; values
    /// >= 0.5 are rejected.
    void validate() const;
};

CavityGeometry make_geometry(double t_ex, double l_cav, double a_eff, double alpha_loss);
CavityGeometry make_bulk_geometry(double t_ex, double l_cav, double a_eff, BulkLoss bulk);

/// Dynamical rates of the atom-cavity system, all in units of gamma.
struct RateParams {
    double g = 0.0;        ///< atom-cavity coupling constant
    double kappa_in = 0.0; ///< internal (parasitic) field decay
    double kappa_ex = 0.0; ///< external (coupling-mirror) field decay
    double gamma = 1.0;    ///< atomic polarization decay; 1 in canonical units
    double kappa = 0.0;    ///< kappa_in + kappa_ex
    double c_in = 0.0;     ///< internal cooperativity g^2/(2 gamma kappa_in)

    void validate() const;
};

RateParams make_rates(double g, double kappa_in, double kappa_ex, double gamma = 1.0);

/// Geometry -> rates map:
///   g = sqrt(c gamma / (2 a_eff l_cav)),  kappa_in = c alpha_loss / (4 l_cav),
///   kappa_ex = c t_ex / (4 l_cav),  with c = gamma = 1.
/// Bulk coefficients, when present, replace alpha_loss by alpha' + beta*l_cav.
RateParams rates_from_geometry(const CavityGeometry& geo);

/// Exact inverse of rates_from_geometry for a given mode area. Throws
/// Inconsistent when the implied transmittance or loss leaves its domain.
CavityGeometry geometry_from_rates(const RateParams& r, double a_eff);

/// Representative kappa_in/gamma ratios for common cavity platforms.
std::vector<std::pair<std::string, double>> reference_ratio_table();

} // namespace cavgate
