#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavgate/csv.hpp"
#include "cavgate/pulse.hpp"

namespace cavgate {

// Parameter sweeps over (w_t, l_cav, t_ex) with optional per-point
// optimization, evaluated by a bounded worker pool. Output ordering is fixed
// by grid position, so results are identical for any parallelism width.

struct SweepAxis {
    std::string name; ///< one of "w_t", "l_cav", "t_ex"
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;

    double value_at(int i) const;
};

struct SweepSpec {
    std::vector<SweepAxis> axes; ///< 1 or 2 axes, row-major output (axis 1 outer)
    double a_eff = 1.0;
    double alpha_loss = 0.0;
    std::optional<BulkLoss> bulk;
    std::optional<double> t_ex;  ///< fixed value; empty = axis or optimized
    std::optional<double> l_cav; ///< fixed value; empty = axis or optimized
    bool optimize_t_ex = false;
    bool optimize_l_cav = false;
    std::optional<double> w_t;
    TauRefPolicy tau_ref = TauRefPolicy::midpoint();
    GateAmplitudes amps = GateAmplitudes::symmetric();
    std::vector<std::string> quantities; ///< subset of known_quantities()
    int threads = 0;                     ///< 0 = hardware concurrency

    void validate() const; ///< throws ConfigError
};

const std::vector<std::string>& known_quantities();

/// Runs the sweep; the returned table has one column per axis followed by the
/// requested quantities.
CsvTable run_sweep(const SweepSpec& spec);

} // namespace cavgate
