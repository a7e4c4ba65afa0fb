#include "cavgate/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cavgate/design.hpp"

namespace cavgate {

namespace {

const std::vector<std::string> kQuantities = {
    "f", "g_over_kappa", "loss0", "loss1", "tau0", "tau1", "t_ex_opt", "l_cav_opt"};

struct ResolvedPoint {
    double w_t = 0.0;
    double l_cav = 0.0;
    double t_ex = 0.0;
};

} // namespace

const std::vector<std::string>& known_quantities() { return kQuantities; }

double SweepAxis::value_at(int i) const {
    if (count == 1) return min;
    const double f = static_cast<double>(i) / (count - 1);
    if (log) return min * std::pow(max / min, f);
    return min + (max - min) * f;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) throw ConfigError("sweep needs 1 or 2 axes");
    for (const auto& ax : axes) {
        if (ax.name != "w_t" && ax.name != "l_cav" && ax.name != "t_ex")
            throw ConfigError("unknown sweep axis '" + ax.name + "'");
        if (ax.count < 1) throw ConfigError("axis count must be >= 1");
        if (ax.count == 1) {
            if (ax.min != ax.max)
                throw ConfigError("a single-point axis needs min == max");
        } else if (!(ax.min < ax.max)) {
            throw ConfigError("axis '" + ax.name + "' needs min < max");
        }
        if (ax.log && !(ax.min > 0.0))
            throw ConfigError("log axis '" + ax.name + "' needs min > 0");
    }
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw ConfigError("sweep axes must differ");
    const auto has_axis = [&](const std::string& n) {
        return std::any_of(axes.begin(), axes.end(),
                           [&](const SweepAxis& a) { return a.name == n; });
    };
    if (!has_axis("w_t") && !w_t) throw ConfigError("w_t needs an axis or a [pulse] value");
    if (has_axis("w_t") && w_t) throw ConfigError("w_t is both an axis and a fixed value");
    if (has_axis("l_cav") && (l_cav || optimize_l_cav))
        throw ConfigError("l_cav is an axis and also fixed/optimized");
    if (has_axis("t_ex") && (t_ex || optimize_t_ex))
        throw ConfigError("t_ex is an axis and also fixed/optimized");
    if (!has_axis("l_cav") && !l_cav && !optimize_l_cav)
        throw ConfigError("l_cav needs an axis, a value, or optimize");
    if (!has_axis("t_ex") && !t_ex && !optimize_t_ex)
        throw ConfigError("t_ex needs an axis, a value, or optimize");
    if (optimize_l_cav && !optimize_t_ex)
        throw ConfigError("optimizing l_cav requires optimizing t_ex as well");
    if (quantities.empty()) throw ConfigError("sweep needs at least one quantity");
    for (const auto& q : quantities)
        if (std::find(kQuantities.begin(), kQuantities.end(), q) == kQuantities.end())
            throw ConfigError("unknown sweep quantity '" + q + "'");
    if (!(a_eff > 0.0)) throw ConfigError("a_eff must be > 0");
    if (!bulk && !(alpha_loss > 0.0)) throw ConfigError("alpha_loss must be > 0");
}

CsvTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    const int n1 = spec.axes[0].count;
    const int n2 = spec.axes.size() == 2 ? spec.axes[1].count : 1;
    const std::size_t total = static_cast<std::size_t>(n1) * n2;

    CsvTable table;
    for (const auto& ax : spec.axes) table.header.push_back(ax.name);
    for (const auto& q : spec.quantities) table.header.push_back(q);
    table.rows.assign(total, {});

    const FidelityFn fid = make_fidelity_fn(spec.amps, spec.tau_ref, GridPolicy::bandwidth);

    const auto compute_row = [&](std::size_t flat) {
        const int i1 = static_cast<int>(flat) / n2;
        const int i2 = static_cast<int>(flat) % n2;

        ResolvedPoint p;
        p.w_t = spec.w_t.value_or(0.0);
        p.l_cav = spec.l_cav.value_or(0.0);
        p.t_ex = spec.t_ex.value_or(0.0);
        const double av[2] = {spec.axes[0].value_at(i1),
                              spec.axes.size() == 2 ? spec.axes[1].value_at(i2) : 0.0};
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            if (spec.axes[a].name == "w_t") p.w_t = av[a];
            if (spec.axes[a].name == "l_cav") p.l_cav = av[a];
            if (spec.axes[a].name == "t_ex") p.t_ex = av[a];
        }
        if (spec.optimize_l_cav) {
            const LcavOptimum o = optimize_lcav(spec.a_eff, spec.alpha_loss, p.w_t, fid, spec.bulk);
            p.l_cav = o.l_cav;
            p.t_ex = o.t_ex;
        } else if (spec.optimize_t_ex) {
            const TexOptimum o =
                optimize_tex(p.l_cav, spec.a_eff, spec.alpha_loss, p.w_t, fid, spec.bulk);
            p.t_ex = o.t_ex;
        }

        const CavityGeometry geo =
            spec.bulk ? make_bulk_geometry(p.t_ex, p.l_cav, spec.a_eff, *spec.bulk)
                      : make_geometry(p.t_ex, p.l_cav, spec.a_eff, spec.alpha_loss);

        std::vector<double> row;
        row.reserve(table.header.size());
        for (std::size_t a = 0; a < spec.axes.size(); ++a) row.push_back(av[a]);
        for (const auto& q : spec.quantities) {
            if (q == "f") {
                row.push_back(gate_fidelity(geo, spec.amps, p.w_t, spec.tau_ref).fidelity);
            } else if (q == "g_over_kappa") {
                const RateParams r = rates_from_geometry(geo);
                row.push_back(r.g / r.kappa);
            } else if (q == "t_ex_opt") {
                row.push_back(p.t_ex);
            } else if (q == "l_cav_opt") {
                row.push_back(p.l_cav);
            } else {
                const ErrorBudget b = error_budget(geo);
                if (q == "loss0") row.push_back(b.loss_0);
                if (q == "loss1") row.push_back(b.loss_1);
                if (q == "tau0") row.push_back(b.tau_0);
                if (q == "tau1") row.push_back(b.tau_1);
            }
        }
        table.rows[flat] = std::move(row);
    };

    unsigned width = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    width = std::min<unsigned>(width, static_cast<unsigned>(total));

    if (width <= 1) {
        for (std::size_t i = 0; i < total; ++i) compute_row(i);
        return table;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (unsigned w = 0; w < width; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total) return;
                try {
                    compute_row(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return table;
}

} // namespace cavgate
