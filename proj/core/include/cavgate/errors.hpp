#pragma once

#include <stdexcept>
#include <string>

namespace cavgate {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometry violates its invariants (domain bounds, loss budget).
struct InvalidGeometry : Error { using Error::Error; };

/// Rate set is not producible by any geometry with the given mode area.
struct Inconsistent : Error { using Error::Error; };

/// T_ex == alpha_loss: the resonant delay has a pole there.
struct DegenerateCoupling : Error { using Error::Error; };

/// Time grid truncates the pulse beyond the allowed norm deficit.
struct GridTooSmall : Error { using Error::Error; };

/// Time grid step too coarse to resolve the cavity decay.
struct GridTooCoarse : Error { using Error::Error; };

/// Significant signal energy at the grid edges (circular wrap-around).
struct AliasingDetected : Error { using Error::Error; };

/// Integrator could not satisfy the requested local error.
struct ToleranceNotMet : Error { using Error::Error; };

/// Probe spectrum has no usable power on the requested detuning grid.
struct InsufficientSpectralPower : Error { using Error::Error; };

/// Optimizer bracket is empty or degenerate.
struct BracketFailure : Error { using Error::Error; };

/// Qubit amplitudes are not normalized.
struct InvalidAmplitudes : Error { using Error::Error; };

/// Malformed or inconsistent configuration input.
struct ConfigError : Error { using Error::Error; };

/// File system failure while reading or writing artifacts.
struct IoError : Error { using Error::Error; };

} // namespace cavgate
