#pragma once

#include <span>
#include <vector>

#include "cavgate/pulse.hpp"

// Independent time-domain oracle: integrates the rotating-frame amplitude
// equations with input-output extraction of the reflected pulse. Validates
// the frequency-domain pipeline and probes the short-pulse regime.

namespace cavgate {

enum class AtomState { zero, one };

/// Branch output plus the energy ledger accumulated by the integrator.
struct BranchResult {
    Waveform f_out;
    double absorbed_internal = 0.0; ///< 2 kappa_in * integral |beta|^2 dt
    double emitted_atom = 0.0;      ///< 2 gamma * integral |beta_e|^2 dt
    double residual_energy = 0.0;   ///< |beta|^2 + |beta_e|^2 at the grid end
};

/// Integrates, on the grid of f_in,
///   atom |0>:  beta'   = -kappa beta + sqrt(2 kappa_ex) f_in
///   atom |1>:  beta'   = g beta_e - kappa beta + sqrt(2 kappa_ex) f_in,
///              beta_e' = -g beta - gamma beta_e
/// with output f_out(t) = f_in(t) - sqrt(2 kappa_ex) beta(t). Signs are fixed
/// so the long-pulse limit reproduces the closed-form reflection including
/// the sign of L0(0). Adaptive Dormand-Prince 5(4) with dense output back
/// onto the input grid; local error per step <= tol.
/// Throws GridTooCoarse when f_in.dt > 0.1/kappa, ToleranceNotMet when the
/// step size underflows.
Waveform integrate_branch(const RateParams& r, AtomState atom, const Waveform& f_in,
                          double tol);

/// Initial amplitudes for ring-down studies; both default to the vacuum.
struct InitialState {
    std::complex<double> beta{0.0, 0.0};
    std::complex<double> beta_e{0.0, 0.0};
};

BranchResult integrate_branch_detailed(const RateParams& r, AtomState atom,
                                       const Waveform& f_in, double tol,
                                       InitialState init = {});

/// Numerical transfer-function identification: drives both branches with a
/// long Gaussian probe (duration >= 50/kappa) and returns the ratio of output
/// to input spectra at the DFT bins nearest to delta_grid, restricted to bins
/// with input spectral power above 1e-6 of the peak. Matches eval_response.
std::vector<ResponseSample> extract_response(const RateParams& r,
                                             std::span<const double> delta_grid,
                                             double probe_w_t = 0.0, double tol = 1e-10);

} // namespace cavgate
