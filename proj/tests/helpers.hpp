#pragma once

#include <cmath>
#include <random>

#include "cavgate/params.hpp"

namespace testutil {

// Reference point used throughout: a_eff = 1, alpha_loss = 1e-3 (C_in = 1000)
// at the analytic optimum. Values frozen from a 40-digit evaluation of the
// closed forms.
constexpr double kAeff = 1.0;
constexpr double kAlpha = 1.0e-3;
constexpr double kTexLoss = 0.044732538492690083;
constexpr double kLcavOpt = 0.00024975024975024975; // 1/4004
constexpr double kL0Res = -0.95626746150730992;     // L0(0) at the optimum
constexpr double kLossRes = 0.085552542062365547;
constexpr double kTauRes = 0.044687850642048035;
constexpr double kFLong = 0.95674559523806357; // ((-L0+L1+2)/4)^2
constexpr double kGOverKappa = 0.97740071074148087;
constexpr double kWMinExact = 0.022866269246345042; // max(1/kappa, kappa/g^2)
constexpr double kWMinSimpl = 0.022360679774997897; // 1/sqrt(2000)

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline cavgate::CavityGeometry design_geometry() {
    return cavgate::make_geometry(kTexLoss, kLcavOpt, kAeff, kAlpha);
}

// Valid geometries inside the CPF regime, away from the tau_0 pole and the
// L1(0) zero.
struct GeometrySampler {
    std::mt19937_64 rng;
    explicit GeometrySampler(unsigned seed = 20240901) : rng(seed) {}

    double log_uniform(double lo, double hi) {
        std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
        return std::exp(u(rng));
    }

    cavgate::CavityGeometry operator()() {
        for (;;) {
            const double a_eff = log_uniform(0.05, 20.0);
            const double alpha = log_uniform(1e-5, std::min(0.05 / a_eff, 0.3));
            const double t_lo = 1.2 * alpha;
            const double t_hi = std::min(0.85 * (alpha + 2.0 / a_eff), 0.9);
            if (!(t_lo < t_hi)) continue;
            const double t_ex = log_uniform(t_lo, t_hi);
            const double l_cav = log_uniform(1e-6, 1e-1);
            return cavgate::make_geometry(t_ex, l_cav, a_eff, alpha);
        }
    }
};

} // namespace testutil
