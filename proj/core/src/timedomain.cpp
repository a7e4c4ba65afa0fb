#include "cavgate/timedomain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cavgate {

using cplx = std::complex<double>;

namespace {

// State layout: beta (cavity), beta_e (atom), then quadrature accumulators
// for intracavity, atomic and output energy.
constexpr int kDim = 7;
using State = std::array<double, kDim>;

State operator+(const State& a, const State& b) {
    State r;
    for (int i = 0; i < kDim; ++i) r[i] = a[i] + b[i];
    return r;
}

State operator*(double s, const State& a) {
    State r;
    for (int i = 0; i < kDim; ++i) r[i] = s * a[i];
    return r;
}

// Catmull-Rom interpolation of the sampled drive; zero outside the grid.
cplx drive_at(const Waveform& f, double t) {
    const double x = (t - f.t0) / f.dt;
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const auto i = static_cast<std::ptrdiff_t>(std::floor(x));
    if (i < 0 || i + 1 >= n) return {0.0, 0.0};
    const double u = x - static_cast<double>(i);
    const cplx p0 = i > 0 ? f.samples[i - 1] : cplx{0.0, 0.0};
    const cplx p1 = f.samples[i];
    const cplx p2 = f.samples[i + 1];
    const cplx p3 = i + 2 < n ? f.samples[i + 2] : cplx{0.0, 0.0};
    const cplx a = 2.0 * p1;
    const cplx b = p2 - p0;
    const cplx c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    const cplx d = -p0 + 3.0 * (p1 - p2) + p3;
    return 0.5 * (a + u * (b + u * (c + u * d)));
}

struct Rhs {
    const Waveform* f_in;
    double g = 0.0; // zero for the |0> branch
    double kappa = 0.0;
    double gamma = 0.0;
    double root_2kex = 0.0;

    State operator()(double t, const State& y) const {
        const cplx beta(y[0], y[1]);
        const cplx beta_e(y[2], y[3]);
        const cplx fin = drive_at(*f_in, t);
        const cplx dbeta = g * beta_e - kappa * beta + root_2kex * fin;
        const cplx dbeta_e = -g * beta - gamma * beta_e;
        const cplx fout = fin - root_2kex * beta;
        return {dbeta.real(),   dbeta.imag(),  dbeta_e.real(), dbeta_e.imag(),
                std::norm(beta), std::norm(beta_e), std::norm(fout)};
    }
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer, Noersett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseSegment {
    double t = 0.0, h = 0.0;
    State r1{}, r2{}, r3{}, r4{}, r5{};

    State eval(double ti) const {
        const double th = (ti - t) / h;
        const double th1 = 1.0 - th;
        State out;
        for (int i = 0; i < kDim; ++i)
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        return out;
    }
};

} // namespace

BranchResult integrate_branch_detailed(const RateParams& r, AtomState atom,
                                       const Waveform& f_in, double tol, InitialState init) {
    r.validate();
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw Error("integrator tol must lie in [1e-12, 1e-4]");
    if (f_in.size() < 4 || !(f_in.dt > 0.0)) throw Error("input waveform grid too short");
    if (f_in.dt > 0.1 / r.kappa)
        throw GridTooCoarse("input grid step exceeds 0.1/kappa");

    Rhs rhs;
    rhs.f_in = &f_in;
    rhs.g = atom == AtomState::one ? r.g : 0.0;
    rhs.kappa = r.kappa;
    rhs.gamma = r.gamma;
    rhs.root_2kex = std::sqrt(2.0 * r.kappa_ex);

    const double t_begin = f_in.t0;
    const double t_final = f_in.time_at(f_in.size() - 1);
    const double atol = 1e-2 * tol;

    Waveform out;
    out.t0 = f_in.t0;
    out.dt = f_in.dt;
    out.samples.resize(f_in.size());

    State y{};
    y[0] = init.beta.real();
    y[1] = init.beta.imag();
    y[2] = init.beta_e.real();
    y[3] = init.beta_e.imag();
    double t = t_begin;
    double h = std::min(f_in.dt, 0.1 / r.kappa);
    State k1 = rhs(t, y);
    std::size_t next_sample = 0;

    const auto emit_up_to = [&](const DenseSegment& seg, double t_seg_end) {
        while (next_sample < f_in.size() && f_in.time_at(next_sample) <= t_seg_end + 1e-12 * f_in.dt) {
            const double ts = f_in.time_at(next_sample);
            const State ys = seg.eval(ts);
            out.samples[next_sample] =
                f_in.samples[next_sample] - rhs.root_2kex * cplx(ys[0], ys[1]);
            ++next_sample;
        }
    };

    BranchResult result;
    int rejected_in_row = 0;
    while (t < t_final) {
        h = std::min(h, t_final - t);
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
            throw ToleranceNotMet("step size underflow in branch integration");

        const State k2 = rhs(t + c2 * h, y + (h * a21) * k1);
        const State k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const State k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 =
            rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = rhs(t + h, y1);

        double err = 0.0;
        const State ev = e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7;
        for (int i = 0; i < kDim; ++i) {
            const double sc = atol + tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            const double q = h * ev[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / kDim);

        if (err <= 1.0) {
            DenseSegment seg;
            seg.t = t;
            seg.h = h;
            for (int i = 0; i < kDim; ++i) {
                const double dy = y1[i] - y[i];
                seg.r1[i] = y[i];
                seg.r2[i] = dy;
                seg.r3[i] = h * k1[i] - dy;
                seg.r4[i] = dy - h * k7[i] - seg.r3[i];
                seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                 d6 * k6[i] + d7 * k7[i]);
            }
            emit_up_to(seg, t + h);
            t += h;
            y = y1;
            k1 = k7; // FSAL
            const double fac = std::min(rejected_in_row ? 1.0 : 5.0,
                                        std::max(0.2, 0.9 * std::pow(err, -0.2)));
            h *= std::max(fac, 1e-4);
            rejected_in_row = 0;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            ++rejected_in_row;
        }
    }
    // The final grid point coincides with t_final; emit anything left.
    if (next_sample < f_in.size()) {
        DenseSegment flat;
        flat.t = t;
        flat.h = 1.0;
        flat.r1 = y;
        emit_up_to(flat, t_final);
    }

    result.f_out = std::move(out);
    result.absorbed_internal = 2.0 * r.kappa_in * y[4];
    result.emitted_atom = 2.0 * r.gamma * y[5];
    result.residual_energy = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
    return result;
}

Waveform integrate_branch(const RateParams& r, AtomState atom, const Waveform& f_in,
                          double tol) {
    return integrate_branch_detailed(r, atom, f_in, tol).f_out;
}

std::vector<ResponseSample> extract_response(const RateParams& r,
                                             std::span<const double> delta_grid,
                                             double probe_w_t, double tol) {
    r.validate();
    const double w_min = 50.0 / r.kappa;
    const double w_t = probe_w_t > 0.0 ? probe_w_t : w_min;
    if (w_t < w_min) throw Error("probe duration must be at least 50/kappa");

    const double dt = std::min(w_t / 32.0, 0.02 / r.kappa);
    const double half = 6.0 * w_t + 15.0 * (1.0 / r.kappa + 1.0 / r.gamma) + 1.0;
    std::size_t n = 1 << 14;
    while (static_cast<double>(n) * dt < 2.0 * half) n <<= 1;
    const GridSpec grid{-dt * static_cast<double>(n / 2), dt, n};

    const Waveform probe = gaussian_pulse(w_t, 0.0, grid);
    const Spectrum in_spec = to_spectrum(probe);
    const Spectrum out0 = to_spectrum(integrate_branch(r, AtomState::zero, probe, tol));
    const Spectrum out1 = to_spectrum(integrate_branch(r, AtomState::one, probe, tol));

    double peak_power = 0.0;
    for (const auto& v : in_spec.samples) peak_power = std::max(peak_power, std::norm(v));

    const double d_step = in_spec.delta_step();
    const auto nd = static_cast<double>(n);
    std::vector<ResponseSample> result;
    for (const double want : delta_grid) {
        double idx = std::round(want / d_step);
        if (idx < -nd / 2 || idx >= nd / 2) continue;
        const std::size_t k = idx >= 0 ? static_cast<std::size_t>(idx)
                                       : static_cast<std::size_t>(idx + nd);
        if (std::norm(in_spec.samples[k]) <= 1e-6 * peak_power) continue;
        ResponseSample s;
        s.delta = in_spec.freq_at(k);
        s.l0 = out0.samples[k] / in_spec.samples[k];
        s.l1 = out1.samples[k] / in_spec.samples[k];
        result.push_back(s);
    }
    if (result.empty())
        throw InsufficientSpectralPower("no requested detuning has usable probe power");
    return result;
}

} // namespace cavgate
