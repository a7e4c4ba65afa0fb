#include "cavgate/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cavgate/csv.hpp"
#include "cavgate/fft.hpp"

namespace cavgate {

using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinSamples = 1 << 14;

std::size_t next_pow2(double x) {
    std::size_t n = 1;
    while (static_cast<double>(n) < x) n <<= 1;
    return n;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Compensated (Kahan) accumulation; keeps norms and overlaps reproducible
// and accurate on 2^20+ sample grids.
struct KahanC {
    cplx sum{0.0, 0.0};
    cplx c{0.0, 0.0};
    void add(cplx v) {
        const cplx y = v - c;
        const cplx t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct KahanR {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

void require_same_grid(const Waveform& a, const Waveform& b) {
    const bool same = a.size() == b.size() && std::abs(a.dt - b.dt) <= 1e-12 * a.dt &&
                      std::abs(a.t0 - b.t0) <= 1e-9 * std::max(1.0, std::abs(a.t0));
    if (!same) throw Error("waveform grids do not match");
}

// Ring-down of the slowest response pole is bounded below by
// kappa*gamma/(kappa+gamma); 15 decay times push the residual tail energy
// below 1e-13.
double ringdown_pad(const RateParams& r) {
    return 15.0 * (1.0 / r.kappa + 1.0 / r.gamma);
}

double max_abs_delay(const ErrorBudget& b) {
    return std::max(std::abs(b.tau_0), std::abs(b.tau_1));
}

} // namespace

double Waveform::norm() const {
    KahanR acc;
    for (const auto& v : samples) acc.add(std::norm(v));
    return acc.sum * dt;
}

double Spectrum::delta_step() const {
    return kTwoPi / (dt * static_cast<double>(samples.size()));
}

double Spectrum::freq_at(std::size_t k) const {
    const std::size_t n = samples.size();
    const double signed_k =
        k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    return kTwoPi * signed_k / (dt * static_cast<double>(n));
}

double Spectrum::norm() const {
    KahanR acc;
    for (const auto& v : samples) acc.add(std::norm(v));
    return acc.sum * delta_step() / kTwoPi;
}

Spectrum to_spectrum(const Waveform& w) {
    Spectrum s;
    s.t0 = w.t0;
    s.dt = w.dt;
    s.samples = fft_forward(w.samples);
    for (auto& v : s.samples) v *= w.dt;
    return s;
}

Waveform to_waveform(const Spectrum& s) {
    Waveform w;
    w.t0 = s.t0;
    w.dt = s.dt;
    w.samples = fft_inverse(s.samples);
    const double inv_dt = 1.0 / s.dt;
    for (auto& v : w.samples) v *= inv_dt;
    return w;
}

GridSpec gate_grid(const RateParams& r, const ErrorBudget& budget, double w_t,
                   GridPolicy policy) {
    if (!(w_t > 0.0)) throw Error("w_t must be > 0");
    double dt = w_t / 32.0;
    if (policy == GridPolicy::ringdown) dt = std::min(dt, 0.02 / r.kappa);
    const double half_span = 6.0 * w_t + max_abs_delay(budget) + ringdown_pad(r);
    const std::size_t n = std::max(kMinSamples, next_pow2(2.0 * half_span / dt));
    const double t0 = -dt * static_cast<double>(n / 2);
    return {t0, dt, n};
}

Waveform gaussian_pulse(double w_t, double center, const GridSpec& grid) {
    if (!(w_t > 0.0)) throw Error("w_t must be > 0");
    if (!(grid.dt > 0.0) || !is_pow2(grid.n))
        throw Error("grid needs dt > 0 and a power-of-two sample count");
    Waveform w;
    w.t0 = grid.t0;
    w.dt = grid.dt;
    w.samples.resize(grid.n);
    const double peak = std::pow(std::numbers::pi * w_t * w_t, -0.25);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double t = (w.time_at(i) - center) / w_t;
        w.samples[i] = cplx(peak * std::exp(-0.5 * t * t), 0.0);
    }
    const double deficit = std::abs(1.0 - w.norm());
    if (deficit > 1e-10) {
        std::ostringstream ss;
        ss << "grid truncates the Gaussian: norm deficit " << deficit;
        throw GridTooSmall(ss.str());
    }
    return w;
}

namespace {

void check_edges(const Waveform& w) {
    const std::size_t n = w.size();
    const std::size_t guard = std::min<std::size_t>(3, n);
    KahanR edge, total;
    for (std::size_t i = 0; i < n; ++i) total.add(std::norm(w.samples[i]));
    for (std::size_t i = 0; i < guard; ++i) {
        edge.add(std::norm(w.samples[i]));
        edge.add(std::norm(w.samples[n - 1 - i]));
    }
    if (edge.sum > 1e-8 * total.sum)
        throw AliasingDetected("signal energy at grid edges: enlarge the time grid");
}

} // namespace

Waveform propagate(const Waveform& in, const std::function<cplx(double)>& response) {
    Spectrum s = to_spectrum(in);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const cplx resp = response(s.freq_at(k));
        if (std::abs(resp) > 1.0 + 1e-9)
            throw Error("response magnitude exceeds 1: not a passive reflection");
        s.samples[k] *= resp;
    }
    Waveform out = to_waveform(s);
    check_edges(out);
    return out;
}

Waveform reflect_mirror(const Waveform& in, double tau_ref) {
    if (!(tau_ref >= 0.0)) throw Error("tau_ref must be >= 0");
    Spectrum s = to_spectrum(in);
    for (std::size_t k = 0; k < s.size(); ++k)
        s.samples[k] *= std::polar(1.0, -s.freq_at(k) * tau_ref);
    Waveform out = to_waveform(s);
    check_edges(out);
    return out;
}

std::complex<double> overlap(const Waveform& a, const Waveform& b) {
    require_same_grid(a, b);
    KahanC acc;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc.add(std::conj(a.samples[i]) * b.samples[i]);
    return acc.sum * a.dt;
}

GateAmplitudes GateAmplitudes::symmetric() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r, r, r};
}

void GateAmplitudes::validate() const {
    const double atom = std::norm(a0) + std::norm(a1);
    const double photon = std::norm(aH) + std::norm(aV);
    if (std::abs(atom - 1.0) > 1e-12 || std::abs(photon - 1.0) > 1e-12)
        throw InvalidAmplitudes("qubit amplitudes must be normalized");
}

GateResult gate_fidelity(const CavityGeometry& geo, const GateAmplitudes& amps, double w_t,
                         TauRefPolicy policy, std::optional<GridSpec> grid) {
    amps.validate();
    const RateParams r = rates_from_geometry(geo);
    const ErrorBudget budget = error_budget(geo);
    const double tau_ref = policy.kind == TauRefPolicy::Kind::midpoint
                               ? 0.5 * (budget.tau_0 + budget.tau_1)
                               : policy.tau;

    const GridSpec g = grid ? *grid : gate_grid(r, budget, w_t, GridPolicy::ringdown);
    // Delay and ring-down headroom to the right of the pulse; without it the
    // circular transform wraps the delayed output back onto the pulse.
    const double needed =
        6.0 * w_t + std::max(max_abs_delay(budget), std::abs(tau_ref)) +
        10.0 * (1.0 / r.kappa + 1.0 / r.gamma);
    if (g.t_end() < needed || g.t0 > -6.0 * w_t)
        throw AliasingDetected("grid span too small for the branch delays and ring-down");

    const Waveform f = gaussian_pulse(w_t, 0.0, g);
    const Spectrum s = to_spectrum(f);

    const double kin = r.kappa_in, kex = r.kappa_ex, g2 = r.g * r.g, ga = r.gamma;
    KahanC o0_acc, o1_acc;
    KahanR ov_acc;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double d = s.freq_at(k);
        const cplx id(0.0, d);
        const cplx atom = g2 / (ga + id);
        const cplx l0 = (-kex + kin + id) / (kex + kin + id);
        const cplx l1 = (-kex + kin + id + atom) / (kex + kin + id + atom);
        const double p = std::norm(s.samples[k]);
        const cplx ramp = std::polar(p, d * tau_ref);
        o0_acc.add(ramp * l0);
        o1_acc.add(ramp * l1);
        ov_acc.add(p);
    }
    const double measure = s.delta_step() / kTwoPi;
    const cplx o0 = o0_acc.sum * measure;
    const cplx o1 = o1_acc.sum * measure;
    const double ov = ov_acc.sum * measure;

    // <Psi_id|Psi_out>: the |0H> branch carries the CPF sign flip, V branches
    // see the mirror (identity up to the common tau_ref delay).
    const cplx a =
        -std::norm(amps.a0) * std::norm(amps.aH) * o0 +
        std::norm(amps.a1) * std::norm(amps.aH) * o1 +
        (std::norm(amps.a0) + std::norm(amps.a1)) * std::norm(amps.aV) * ov;

    GateResult res;
    res.fidelity = std::norm(a);
    res.overlap_0 = o0;
    res.overlap_1 = o1;
    res.tau_ref = tau_ref;
    res.budget = budget;
    res.first_order_valid = w_t >= 5.0 * duration_threshold(r).w_min;
    return res;
}

FidelityFn make_fidelity_fn(GateAmplitudes amps, TauRefPolicy policy, GridPolicy grid_policy) {
    return [amps, policy, grid_policy](const CavityGeometry& geo, double w_t) {
        const RateParams r = rates_from_geometry(geo);
        const ErrorBudget budget = error_budget(geo);
        const GridSpec g = gate_grid(r, budget, w_t, grid_policy);
        return gate_fidelity(geo, amps, w_t, policy, g).fidelity;
    };
}

void write_waveform_csv(const Waveform& w, const std::string& path) {
    std::string out = "t,re,im\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        out += format_g15(w.time_at(i));
        out += ',';
        out += format_g15(w.samples[i].real());
        out += ',';
        out += format_g15(w.samples[i].imag());
        out += '\n';
    }
    write_text_atomic(path, out);
}

Waveform read_waveform_csv(const std::string& path) {
    const CsvTable t = CsvTable::parse(read_text(path));
    if (t.header != std::vector<std::string>{"t", "re", "im"})
        throw IoError("waveform CSV must have header t,re,im");
    if (t.rows.size() < 2 || !is_pow2(t.rows.size()))
        throw IoError("waveform CSV needs a power-of-two number of samples");
    Waveform w;
    w.t0 = t.rows.front()[0];
    w.dt = t.rows[1][0] - w.t0;
    if (!(w.dt > 0.0)) throw IoError("waveform CSV time column must increase");
    w.samples.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double expected = w.t0 + w.dt * static_cast<double>(i);
        if (std::abs(t.rows[i][0] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
            throw IoError("waveform CSV grid is not uniform");
        w.samples.emplace_back(t.rows[i][1], t.rows[i][2]);
    }
    return w;
}

} // namespace cavgate
