#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cavgate/design.hpp"
#include "cavgate/response.hpp"

// Sampled photon wave packets, frequency-domain propagation through the
// cavity response, and assembly of the CPF gate fidelity.

namespace cavgate {

/// Uniform time grid. n is a power of two.
struct GridSpec {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t n = 0;
    double t_end() const { return t0 + dt * static_cast<double>(n); }
};

/// Grid sizing for gate evaluation. `ringdown` additionally resolves the
/// cavity decay in the time step (dt = min(w_t/32, 0.02/kappa), the default);
/// `bandwidth` only resolves the pulse (dt = w_t/32) and relies on the input
/// spectrum being negligible beyond Nyquist, which holds for Gaussian pulses.
/// Both give the same overlaps to rounding; `bandwidth` keeps optimizer loops
/// cheap.
enum class GridPolicy { ringdown, bandwidth };

/// Grid whose span covers the pulse, the branch delays and the slowest
/// response ring-down, with the pulse peak at t = 0.
GridSpec gate_grid(const RateParams& r, const ErrorBudget& budget, double w_t,
                   GridPolicy policy = GridPolicy::ringdown);

struct Waveform {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::complex<double>> samples;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    GridSpec grid() const { return {t0, dt, samples.size()}; }
    /// Time-domain norm, sum |f|^2 dt (compensated summation).
    double norm() const;
};

/// Frequency-domain twin of a Waveform on the conjugate grid: samples[k]
/// approximates the continuous transform integral f(t) exp(-i delta t) dt at
/// delta = freq_at(k), up to the constant phase exp(-i delta t0).
struct Spectrum {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::complex<double>> samples;

    std::size_t size() const { return samples.size(); }
    double delta_step() const;
    /// Signed angular detuning of bin k (negative frequencies in the upper half).
    double freq_at(std::size_t k) const;
    /// Spectral norm, sum |F|^2 dDelta / (2 pi); equals the time-domain norm.
    double norm() const;
};

Spectrum to_spectrum(const Waveform& w);
Waveform to_waveform(const Spectrum& s);

/// Unit-norm Gaussian f(t) = (pi w_t^2)^(-1/4) exp(-(t-center)^2/(2 w_t^2)).
/// Throws GridTooSmall when the sampled norm deviates from 1 by more than 1e-10.
Waveform gaussian_pulse(double w_t, double center, const GridSpec& grid);

/// Applies a frequency response: out = F^{-1}[ F[in](delta) * response(delta) ].
/// Requires |response| <= 1; throws AliasingDetected when more than 1e-8 of the
/// output energy sits within 3 samples of either grid edge.
Waveform propagate(const Waveform& in,
                   const std::function<std::complex<double>(double)>& response);

/// Lossless external-mirror reflection: pure delay by tau_ref via the phase
/// ramp exp(-i delta tau_ref), sub-sample accurate.
Waveform reflect_mirror(const Waveform& in, double tau_ref);

/// Inner product integral conj(a) b dt; grids must match.
std::complex<double> overlap(const Waveform& a, const Waveform& b);

/// Complex qubit amplitudes of the atom (a0, a1) and photon (aH, aV).
struct GateAmplitudes {
    std::complex<double> a0, a1, aH, aV;
    static GateAmplitudes symmetric(); ///< all 1/sqrt(2)
    void validate() const;             ///< throws InvalidAmplitudes
};

struct TauRefPolicy {
    enum class Kind { midpoint, explicit_value };
    Kind kind = Kind::midpoint;
    double tau = 0.0;
    static TauRefPolicy midpoint() { return {Kind::midpoint, 0.0}; }
    static TauRefPolicy explicit_tau(double t) { return {Kind::explicit_value, t}; }
};

struct GateResult {
    double fidelity = 0.0;
    std::complex<double> overlap_0; ///< <f_ref | L0-branch output>
    std::complex<double> overlap_1; ///< <f_ref | L1-branch output>
    double tau_ref = 0.0;
    ErrorBudget budget;
    bool first_order_valid = false; ///< w_t >= 5 * max(1/kappa, kappa/g^2)
};

/// CPF gate fidelity F = |<Psi_id|Psi_out>|^2 for a Gaussian input pulse of
/// duration w_t. H branches reflect off the cavity (L0/L1), V branches off the
/// external mirror; the ideal state carries the input delayed by tau_ref on
/// every branch. No renormalization: photon loss lowers F directly.
GateResult gate_fidelity(const CavityGeometry& geo, const GateAmplitudes& amps, double w_t,
                         TauRefPolicy policy = TauRefPolicy::midpoint(),
                         std::optional<GridSpec> grid = std::nullopt);

/// Fidelity callback for the design-module optimizers.
FidelityFn make_fidelity_fn(GateAmplitudes amps = GateAmplitudes::symmetric(),
                            TauRefPolicy policy = TauRefPolicy::midpoint(),
                            GridPolicy grid_policy = GridPolicy::bandwidth);

/// CSV waveform exchange, header "t,re,im", 15 significant digits.
void write_waveform_csv(const Waveform& w, const std::string& path);
Waveform read_waveform_csv(const std::string& path);

} // namespace cavgate
