#include "cavgate/response.hpp"

#include <cmath>

namespace cavgate {

using cplx = std::complex<double>;

ResponseSample eval_response(const RateParams& r, double delta) {
    r.validate();
    const cplx id(0.0, delta);
    const cplx atom = r.g * r.g / (r.gamma + id);
    ResponseSample s;
    s.delta = delta;
    s.l0 = (-r.kappa_ex + r.kappa_in + id) / (r.kappa_ex + r.kappa_in + id);
    s.l1 = (-r.kappa_ex + r.kappa_in + id + atom) / (r.kappa_ex + r.kappa_in + id + atom);
    return s;
}

ResponseSample eval_response_geometric(const CavityGeometry& geo, double delta) {
    geo.validate();
    const double alpha = geo.effective_alpha_loss();
    const double t = geo.t_ex;
    const cplx iu(0.0, 4.0 * geo.l_cav * delta);
    const cplx atom = 2.0 / (geo.a_eff * cplx(1.0, delta));
    ResponseSample s;
    s.delta = delta;
    s.l0 = (-t + alpha + iu) / (t + alpha + iu);
    s.l1 = (-t + alpha + iu + atom) / (t + alpha + iu + atom);
    return s;
}

SeriesCoefficients series_coefficients(const CavityGeometry& geo) {
    geo.validate();
    const double alpha = geo.effective_alpha_loss();
    const double t = geo.t_ex;
    const double l = geo.l_cav;
    const double a = geo.a_eff;
    SeriesCoefficients c;
    c.l0_const = (alpha - t) / (alpha + t);
    c.l0_slope = 8.0 * l * t / ((alpha + t) * (alpha + t));
    const double d1 = alpha + t + 2.0 / a;
    c.l1_const = (alpha - t + 2.0 / a) / d1;
    c.l1_slope = 4.0 * t * (2.0 * a * l - 1.0) / (a * d1 * d1);
    return c;
}

SecondOrderCoefficients second_order_coefficients(const RateParams& r) {
    r.validate();
    const double g2 = r.g * r.g;
    const double ga = r.gamma;
    const double den = g2 + ga * r.kappa;
    SecondOrderCoefficients c;
    c.l0_curv = 2.0 * r.kappa_ex / (r.kappa * r.kappa * r.kappa);
    c.l1_curv = -2.0 * r.kappa_ex * (2.0 * g2 * ga + g2 * r.kappa - ga * ga * ga) /
                (den * den * den);
    return c;
}

ErrorBudget error_budget(const CavityGeometry& geo) {
    geo.validate();
    const double alpha = geo.effective_alpha_loss();
    const double t = geo.t_ex;
    const double l = geo.l_cav;
    const double a = geo.a_eff;
    if (std::abs(t - alpha) < 1e-12)
        throw DegenerateCoupling("t_ex == alpha_loss: tau_0 diverges at impedance matching");
    if (std::abs(t - (alpha + 2.0 / a)) < 1e-12)
        throw DegenerateCoupling("t_ex == alpha_loss + 2/a_eff: L1(0) vanishes, tau_1 undefined");
    ErrorBudget b;
    const double r0 = (alpha - t) / (alpha + t);
    const double r1 = (alpha - t + 2.0 / a) / (alpha + t + 2.0 / a);
    b.loss_0 = 1.0 - r0 * r0;
    b.loss_1 = 1.0 - r1 * r1;
    b.tau_0 = 8.0 * l * t / (t * t - alpha * alpha);
    b.tau_1 = -t * (2.0 * a * l - 1.0) /
              (alpha + 1.0 / a - a * (t * t - alpha * alpha) / 4.0);
    return b;
}

TexDerivatives tex_derivatives(const CavityGeometry& geo) {
    geo.validate();
    const double alpha = geo.effective_alpha_loss();
    const double t = geo.t_ex;
    const double l = geo.l_cav;
    const double a = geo.a_eff;
    if (std::abs(t - alpha) < 1e-12)
        throw DegenerateCoupling("t_ex == alpha_loss: tau_0 derivative diverges");
    const double two_a = 2.0 / a;
    TexDerivatives d;
    d.dloss0 = -4.0 * alpha * (t - alpha) / std::pow(t + alpha, 3);
    d.dloss1 = 4.0 * (two_a + alpha) * (two_a - t + alpha) / std::pow(two_a + t + alpha, 3);
    const double x = t * t - alpha * alpha;
    d.dtau0 = -8.0 * l * (t * t + alpha * alpha) / (x * x);
    const double dm = t - alpha - two_a;
    const double dp = t + alpha + two_a;
    d.dtau1 = 4.0 * (1.0 / a - 2.0 * l) *
              (t * t + alpha * alpha + 4.0 * alpha / a + 4.0 / (a * a)) /
              (dm * dm * dp * dp);
    return d;
}

} // namespace cavgate
