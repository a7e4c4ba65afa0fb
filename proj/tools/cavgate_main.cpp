// Command-line front end: cavity response curves, analytic design reports,
// gate-fidelity evaluation and parameter sweeps, all driven by a plain-text
// config file. Quantities are dimensionless (gamma = 1, c = 1).

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "cavgate/config.hpp"
#include "cavgate/csv.hpp"
#include "cavgate/design.hpp"
#include "cavgate/errors.hpp"
#include "cavgate/pulse.hpp"
#include "cavgate/response.hpp"
#include "cavgate/svg.hpp"
#include "cavgate/sweep.hpp"
#include "cavgate/timedomain.hpp"

namespace {

using namespace cavgate;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string svg_path;
    int threads = 0;
    long seed = 0; // reserved; all computation is deterministic
    bool oracle = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_oracle) {
    cmd->add_option("--config", args.config_path, "configuration file")->required();
    cmd->add_option("--out", args.out_path, "output path");
    cmd->add_option("--svg", args.svg_path, "SVG plot path");
    cmd->add_option("--threads", args.threads, "worker pool width (sweep)");
    cmd->add_option("--seed", args.seed, "reserved; computation is deterministic");
    if (with_oracle)
        cmd->add_flag("--oracle", args.oracle, "cross-validate with the time-domain integrator");
}

std::optional<BulkLoss> bulk_from_config(const Config& cfg) {
    const bool has_prime = cfg.has("cavity", "alpha_prime");
    const bool has_beta = cfg.has("cavity", "beta");
    if (has_prime != has_beta)
        throw ConfigError("bulk loss needs both alpha_prime and beta");
    if (!has_prime) return std::nullopt;
    return BulkLoss{cfg.get_double("cavity", "alpha_prime"), cfg.get_double("cavity", "beta")};
}

double alpha_or_zero(const Config& cfg, const std::optional<BulkLoss>& bulk) {
    if (bulk) {
        if (cfg.has("cavity", "alpha_loss"))
            throw ConfigError("give either alpha_loss or bulk coefficients, not both");
        return 0.0;
    }
    return cfg.get_double("cavity", "alpha_loss");
}

CavityGeometry geometry_from_config(const Config& cfg) {
    const auto bulk = bulk_from_config(cfg);
    const double a_eff = cfg.get_double("cavity", "a_eff");
    const double t_ex = cfg.get_double("cavity", "t_ex");
    const double l_cav = cfg.get_double("cavity", "l_cav");
    try {
        if (bulk) return make_bulk_geometry(t_ex, l_cav, a_eff, *bulk);
        return make_geometry(t_ex, l_cav, a_eff, cfg.get_double("cavity", "alpha_loss"));
    } catch (const InvalidGeometry& e) {
        throw ConfigError(std::string("[cavity]: ") + e.what());
    }
}

GateAmplitudes amps_from_config(const Config& cfg) {
    if (!cfg.has("amplitudes", "a0_re")) return GateAmplitudes::symmetric();
    GateAmplitudes a;
    a.a0 = {cfg.get_double("amplitudes", "a0_re"), cfg.get_double_or("amplitudes", "a0_im", 0.0)};
    a.a1 = {cfg.get_double("amplitudes", "a1_re"), cfg.get_double_or("amplitudes", "a1_im", 0.0)};
    a.aH = {cfg.get_double("amplitudes", "ah_re"), cfg.get_double_or("amplitudes", "ah_im", 0.0)};
    a.aV = {cfg.get_double("amplitudes", "av_re"), cfg.get_double_or("amplitudes", "av_im", 0.0)};
    try {
        a.validate();
    } catch (const InvalidAmplitudes& e) {
        throw ConfigError(std::string("[amplitudes]: ") + e.what());
    }
    return a;
}

TauRefPolicy tau_policy_from_config(const Config& cfg) {
    if (!cfg.has("pulse", "tau_ref")) return TauRefPolicy::midpoint();
    const std::string v = cfg.get_string("pulse", "tau_ref");
    if (v == "midpoint") return TauRefPolicy::midpoint();
    return TauRefPolicy::explicit_tau(cfg.get_double("pulse", "tau_ref"));
}

std::optional<GridSpec> grid_from_config(const Config& cfg) {
    const bool any = cfg.has("pulse", "grid_n") || cfg.has("pulse", "grid_dt") ||
                     cfg.has("pulse", "grid_t0");
    if (!any) return std::nullopt;
    if (!(cfg.has("pulse", "grid_n") && cfg.has("pulse", "grid_dt") && cfg.has("pulse", "grid_t0")))
        throw ConfigError("grid override needs grid_n, grid_dt and grid_t0 together");
    GridSpec g{cfg.get_double("pulse", "grid_t0"), cfg.get_double("pulse", "grid_dt"),
               static_cast<std::size_t>(cfg.get_int("pulse", "grid_n"))};
    return g;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_atomic(out_path, content);
    }
}

std::string kv(const std::string& key, double v) { return key + "=" + format_g15(v) + "\n"; }

// --- subcommands -----------------------------------------------------------

int cmd_response(const CommonArgs& args) {
    const Config cfg = Config::load(args.config_path);
    const CavityGeometry geo = geometry_from_config(cfg);
    const double dmin = cfg.get_double("response", "delta_min");
    const double dmax = cfg.get_double("response", "delta_max");
    const int count = cfg.get_int("response", "count");
    const bool overlay = cfg.get_bool_or("response", "overlay", false);
    if (count < 2 || !(dmin < dmax))
        throw ConfigError("[response]: need count >= 2 and delta_min < delta_max");

    const RateParams r = rates_from_geometry(geo);
    const SeriesCoefficients sc = series_coefficients(geo);

    CsvTable t;
    t.header = {"delta", "abs_l0", "arg_l0", "abs_l1", "arg_l1"};
    if (overlay)
        for (const char* c : {"abs_l0_fo", "arg_l0_fo", "abs_l1_fo", "arg_l1_fo"})
            t.header.push_back(c);
    for (int i = 0; i < count; ++i) {
        const double d = dmin + (dmax - dmin) * i / (count - 1);
        const ResponseSample s = eval_response(r, d);
        std::vector<double> row = {d, std::abs(s.l0), std::arg(s.l0), std::abs(s.l1),
                                   std::arg(s.l1)};
        if (overlay) {
            const std::complex<double> fo0(sc.l0_const, sc.l0_slope * d);
            const std::complex<double> fo1(sc.l1_const, sc.l1_slope * d);
            row.insert(row.end(),
                       {std::abs(fo0), std::arg(fo0), std::abs(fo1), std::arg(fo1)});
        }
        t.rows.push_back(std::move(row));
    }
    const std::string csv = t.to_string();
    emit(args.out_path, csv);
    if (!args.svg_path.empty())
        write_text_atomic(args.svg_path,
                          svg_lineplot_from_csv(csv, "delta", {"abs_l0", "abs_l1"}, false,
                                                false, "amplitude reflection |L0|, |L1|"));
    return 0;
}

int cmd_design(const CommonArgs& args) {
    const Config cfg = Config::load(args.config_path);
    const auto bulk = bulk_from_config(cfg);
    const double a_eff = cfg.get_double("cavity", "a_eff");
    const double alpha = bulk ? bulk->alpha_prime : alpha_or_zero(cfg, bulk);
    // With bulk coefficients the length-independent loss is alpha_prime; the
    // analytic point is reported at that loss plus the bulk-corrected length.
    const DesignPoint p = design_point(a_eff, alpha, bulk);
    const RateParams r_opt =
        rates_from_geometry(make_geometry(p.t_ex_loss, p.l_cav_opt, a_eff, alpha));

    std::string rep;
    rep += kv("a_eff", a_eff);
    rep += kv("alpha_loss", alpha);
    rep += kv("c_in", 1.0 / (a_eff * alpha));
    rep += kv("t_ex_loss", p.t_ex_loss);
    rep += kv("t_ex_loss_approx", tex_loss_approx(a_eff, alpha));
    rep += kv("t_ex_delay_at_lcav_opt", p.t_ex_delay);
    rep += kv("l_cav_opt", p.l_cav_opt);
    rep += kv("l_cav_opt_approx", lcav_opt_approx(alpha));
    rep += kv("kappa_in_over_gamma_at_opt", r_opt.kappa_in);
    rep += kv("g_over_kappa_at_opt", r_opt.g / r_opt.kappa);
    rep += kv("w_t_min", p.w_t_min);
    rep += kv("w_t_min_5x", 5.0 * p.w_t_min);
    rep += kv("regime_warning", p.flags.regime_warning ? 1.0 : 0.0);
    rep += kv("margin_loss", p.flags.margin_loss);
    rep += kv("margin_coupling", p.flags.margin_coupling);
    if (p.l_cav_bulk) {
        rep += kv("l_cav_bulk", p.l_cav_bulk->l_cav);
        rep += kv("zero_length_optimal", p.l_cav_bulk->zero_length_optimal ? 1.0 : 0.0);
    }
    std::cout << rep;

    if (!args.out_path.empty() || !args.svg_path.empty()) {
        const double lmin = cfg.get_double_or("design", "curve_l_min", 1e-2 * p.l_cav_opt);
        const double lmax = cfg.get_double_or("design", "curve_l_max", 1e2 * p.l_cav_opt);
        const int count = cfg.get_int_or("design", "curve_count", 201);
        if (count < 2 || !(lmin > 0.0) || !(lmin < lmax))
            throw ConfigError("[design]: need curve_count >= 2 and 0 < curve_l_min < curve_l_max");
        CsvTable t;
        t.header = {"l_cav", "t_ex_loss", "t_ex_delay"};
        for (int i = 0; i < count; ++i) {
            const double l = lmin * std::pow(lmax / lmin, static_cast<double>(i) / (count - 1));
            const double al = bulk ? bulk->alpha_prime + bulk->beta * l : alpha;
            t.rows.push_back({l, tex_loss(a_eff, al), tex_delay(l, a_eff, al)});
        }
        const std::string csv = t.to_string();
        if (!args.out_path.empty()) write_text_atomic(args.out_path, csv);
        if (!args.svg_path.empty())
            write_text_atomic(args.svg_path,
                              svg_lineplot_from_csv(csv, "l_cav", {"t_ex_loss", "t_ex_delay"},
                                                    true, true, "transmittance conditions"));
    }
    return 0;
}

int cmd_fidelity(const CommonArgs& args) {
    const Config cfg = Config::load(args.config_path);
    const CavityGeometry geo = geometry_from_config(cfg);
    const double w_t = cfg.get_double("pulse", "w_t");
    const GateAmplitudes amps = amps_from_config(cfg);
    const TauRefPolicy policy = tau_policy_from_config(cfg);
    const std::optional<GridSpec> grid = grid_from_config(cfg);

    const GateResult res = gate_fidelity(geo, amps, w_t, policy, grid);

    std::string rep;
    rep += kv("w_t", w_t);
    rep += kv("t_ex", geo.t_ex);
    rep += kv("l_cav", geo.l_cav);
    rep += kv("a_eff", geo.a_eff);
    rep += kv("alpha_loss", geo.effective_alpha_loss());
    rep += kv("f", res.fidelity);
    rep += kv("overlap0_re", res.overlap_0.real());
    rep += kv("overlap0_im", res.overlap_0.imag());
    rep += kv("overlap1_re", res.overlap_1.real());
    rep += kv("overlap1_im", res.overlap_1.imag());
    rep += kv("tau_ref", res.tau_ref);
    rep += kv("loss0", res.budget.loss_0);
    rep += kv("loss1", res.budget.loss_1);
    rep += kv("tau0", res.budget.tau_0);
    rep += kv("tau1", res.budget.tau_1);
    rep += kv("first_order_valid", res.first_order_valid ? 1.0 : 0.0);

    const RateParams r = rates_from_geometry(geo);
    const GridSpec g = grid ? *grid : gate_grid(r, res.budget, w_t, GridPolicy::ringdown);
    const Waveform f_in = gaussian_pulse(w_t, 0.0, g);

    if (args.oracle) {
        const double tol = cfg.get_double_or("fidelity", "oracle_tol", 1e-10);
        const Waveform out0 = integrate_branch(r, AtomState::zero, f_in, tol);
        const Waveform out1 = integrate_branch(r, AtomState::one, f_in, tol);
        const Waveform ref = reflect_mirror(f_in, res.tau_ref);
        const std::complex<double> o0 = overlap(ref, out0);
        const std::complex<double> o1 = overlap(ref, out1);
        const std::complex<double> a =
            -std::norm(amps.a0) * std::norm(amps.aH) * o0 +
            std::norm(amps.a1) * std::norm(amps.aH) * o1 +
            (std::norm(amps.a0) + std::norm(amps.a1)) * std::norm(amps.aV) * ref.norm();
        const double f_oracle = std::norm(a);
        rep += kv("f_oracle", f_oracle);
        rep += kv("oracle_distance", std::abs(f_oracle - res.fidelity));
    }
    if (const auto prefix = cfg.get_optional("fidelity", "dump_prefix")) {
        const RateParams rr = r;
        write_waveform_csv(f_in, *prefix + "_in.csv");
        write_waveform_csv(
            propagate(f_in, [&](double d) { return eval_response(rr, d).l0; }),
            *prefix + "_out0.csv");
        write_waveform_csv(
            propagate(f_in, [&](double d) { return eval_response(rr, d).l1; }),
            *prefix + "_out1.csv");
        write_waveform_csv(reflect_mirror(f_in, res.tau_ref), *prefix + "_ref.csv");
    }
    emit(args.out_path, rep);
    if (args.out_path.empty() == false) std::cout << rep;
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const Config cfg = Config::load(args.config_path);
    SweepSpec spec;
    spec.bulk = bulk_from_config(cfg);
    spec.a_eff = cfg.get_double("cavity", "a_eff");
    spec.alpha_loss = spec.bulk ? 0.0 : alpha_or_zero(cfg, spec.bulk);
    spec.amps = amps_from_config(cfg);
    spec.tau_ref = tau_policy_from_config(cfg);

    for (int a = 1; a <= 2; ++a) {
        const std::string p = "axis" + std::to_string(a);
        if (!cfg.has("sweep", p)) break;
        SweepAxis ax;
        ax.name = cfg.get_string("sweep", p);
        ax.min = cfg.get_double("sweep", p + "_min");
        ax.max = cfg.get_double("sweep", p + "_max");
        ax.count = cfg.get_int("sweep", p + "_count");
        ax.log = cfg.get_string("sweep", p + "_scale") == "log";
        if (!ax.log && cfg.get_string("sweep", p + "_scale") != "linear")
            throw ConfigError(p + "_scale must be 'linear' or 'log'");
        spec.axes.push_back(ax);
    }

    const auto has_axis = [&](const std::string& n) {
        for (const auto& ax : spec.axes)
            if (ax.name == n) return true;
        return false;
    };
    if (cfg.has("cavity", "t_ex")) {
        const std::string v = cfg.get_string("cavity", "t_ex");
        if (v == "optimize")
            spec.optimize_t_ex = true;
        else
            spec.t_ex = cfg.get_double("cavity", "t_ex");
    }
    if (cfg.has("cavity", "l_cav")) {
        const std::string v = cfg.get_string("cavity", "l_cav");
        if (v == "optimize")
            spec.optimize_l_cav = true;
        else
            spec.l_cav = cfg.get_double("cavity", "l_cav");
    }
    if (!has_axis("w_t") && cfg.has("pulse", "w_t"))
        spec.w_t = cfg.get_double("pulse", "w_t");

    std::istringstream qs(cfg.get_string("sweep", "quantities"));
    std::string q;
    while (std::getline(qs, q, ',')) spec.quantities.push_back(q);
    spec.threads = args.threads > 0 ? args.threads : cfg.get_int_or("sweep", "threads", 0);

    const CsvTable table = run_sweep(spec);
    const std::string csv = table.to_string();
    emit(args.out_path, csv);

    if (!args.svg_path.empty()) {
        if (spec.axes.size() == 2) {
            write_text_atomic(args.svg_path,
                              svg_heatmap_from_csv(csv, spec.axes[1].name, spec.axes[0].name,
                                                   spec.quantities.front(), spec.axes[1].log,
                                                   spec.axes[0].log,
                                                   spec.quantities.front() + " sweep"));
        } else {
            write_text_atomic(args.svg_path,
                              svg_lineplot_from_csv(csv, spec.axes[0].name, spec.quantities,
                                                    spec.axes[0].log, false,
                                                    "sweep along " + spec.axes[0].name));
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity-QED CPF gate design toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* response = app.add_subcommand("response", "reflection coefficients vs detuning");
    add_common(response, args, false);
    CLI::App* design = app.add_subcommand("design", "analytic optimal cavity parameters");
    add_common(design, args, false);
    CLI::App* fidelity = app.add_subcommand("fidelity", "CPF gate fidelity for a Gaussian pulse");
    add_common(fidelity, args, true);
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV (optionally SVG)");
    add_common(sweep, args, false);

    try {
        app.parse(argc, argv);
        if (response->parsed()) return cmd_response(args);
        if (design->parsed()) return cmd_design(args);
        if (fidelity->parsed()) return cmd_fidelity(args);
        if (sweep->parsed()) return cmd_sweep(args);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
