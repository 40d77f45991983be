// `smallball verify`: checks ball_mass >= threshold * t^a over an (eps, t,
// center) grid with the small-ball clock t = s * eps^b. Exit 1 when the
// verification fails. `smallball expclaim`: lower-bound margin check for the
// truncated Gaussian-type integral. `smallball fit`: exponential-form fit of
// the mass table.

#include "cli_common.hpp"

#include "chaosmoments/smallball.hpp"

namespace cli {

namespace {

struct KernelArgs2 {
    std::string kernel = "heat1";
    double alpha = 1.5;
    double beta = 1.2;
    CLI::Option *kernel_opt = nullptr, *alpha_opt = nullptr, *beta_opt = nullptr;

    void add(CLI::App* c) {
        kernel_opt = c->add_option("--kernel", kernel, "kernel nickname (default heat1)");
        alpha_opt = c->add_option("--alpha", alpha, "stability index for aheat/frac");
        beta_opt = c->add_option("--beta", beta, "time-fractional order for frac");
    }
    chaosmoments::KernelSpec resolve(const CommonOpts& common) {
        from_config(kernel_opt, common, "kernel", kernel);
        from_config(alpha_opt, common, "alpha", alpha);
        from_config(beta_opt, common, "beta", beta);
        return parse_kernel(kernel, alpha, beta);
    }
};

struct VerifyState {
    CommonOpts common;
    KernelArgs2 k;
    double a = 0.0, b = 2.0, threshold = 0.1;
    std::string eps = "0.05:0.5:6";
    int y_per_eps = 3;
    CLI::Option *a_opt = nullptr, *b_opt = nullptr, *thr_opt = nullptr, *eps_opt = nullptr,
                *y_opt = nullptr;
};

int run_verify(VerifyState& st) {
    load_config(st.common);
    from_config(st.a_opt, st.common, "a", st.a);
    from_config(st.b_opt, st.common, "b", st.b);
    from_config(st.thr_opt, st.common, "threshold", st.threshold);
    from_config(st.eps_opt, st.common, "eps", st.eps);
    from_config(st.y_opt, st.common, "y-per-eps", st.y_per_eps);
    auto spec = st.k.resolve(st.common);
    auto report = chaosmoments::verify_small_ball(spec, st.a, st.b, parse_grid(st.eps),
                                                  st.y_per_eps, st.threshold);

    nlohmann::json payload = envelope("smallball verify");
    payload["kernel"] = chaosmoments::to_json(spec);
    payload["a"] = report.a;
    payload["b"] = report.b;
    payload["threshold"] = report.threshold;
    payload["y_samples"] = report.y_samples;
    payload["worst_ratio"] = report.worst_ratio;
    payload["slope_mismatch"] = report.slope_mismatch;
    payload["passed"] = report.passed;
    auto grid = nlohmann::json::array();
    std::ostringstream csv;
    csv << "eps,t,ratio,worst_delta,mass_zero\n";
    for (const auto& cell : report.grid) {
        nlohmann::json g;
        g["eps"] = cell.eps;
        g["t"] = cell.t;
        g["ratio"] = cell.ratio;
        g["worst_delta"] = cell.worst_delta;
        g["mass_zero"] = cell.mass_zero;
        grid.push_back(g);
        csv << fmt_double(cell.eps) << ',' << fmt_double(cell.t) << ','
            << fmt_double(cell.ratio) << ',' << fmt_double(cell.worst_delta) << ','
            << (cell.mass_zero ? "true" : "false") << '\n';
    }
    payload["grid"] = grid;
    emit(st.common, payload, csv.str());
    return report.passed ? 0 : 1;
}

struct ExpClaimState {
    CommonOpts common;
    double nu = 2.0;
    std::string deltas = "log:0.01:100:50";
    CLI::Option *nu_opt = nullptr, *deltas_opt = nullptr;
};

int run_expclaim(ExpClaimState& st) {
    load_config(st.common);
    from_config(st.nu_opt, st.common, "nu", st.nu);
    from_config(st.deltas_opt, st.common, "deltas", st.deltas);
    auto report = chaosmoments::exp_lower_claim_check(st.nu, parse_grid(st.deltas));

    nlohmann::json payload = envelope("smallball expclaim");
    payload["nu"] = report.nu;
    payload["c"] = report.c;
    payload["c_nu"] = report.c_nu;
    payload["passed"] = report.passed;
    double worst = 0.0;
    auto rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "delta,margin\n";
    for (std::size_t i = 0; i < report.delta.size(); ++i) {
        nlohmann::json r;
        r["delta"] = report.delta[i];
        r["margin"] = report.margin[i];
        rows.push_back(r);
        csv << fmt_double(report.delta[i]) << ',' << fmt_double(report.margin[i]) << '\n';
        if (i == 0 || report.margin[i] < worst) worst = report.margin[i];
    }
    payload["rows"] = rows;
    payload["worst_margin"] = worst;
    emit(st.common, payload, csv.str());
    return report.passed ? 0 : 1;
}

struct FitState {
    CommonOpts common;
    KernelArgs2 k;
    std::string t = "log:0.01:0.25:8";
    std::string eps = "0.1,0.2,0.4";
    int y_per_eps = 3;
    CLI::Option *t_opt = nullptr, *eps_opt = nullptr, *y_opt = nullptr;
};

int run_fit(FitState& st) {
    load_config(st.common);
    from_config(st.t_opt, st.common, "t", st.t);
    from_config(st.eps_opt, st.common, "eps", st.eps);
    from_config(st.y_opt, st.common, "y-per-eps", st.y_per_eps);
    auto spec = st.k.resolve(st.common);
    auto table = chaosmoments::smallball_mass_table(spec, parse_grid(st.t), parse_grid(st.eps),
                                                    st.y_per_eps);
    auto fit = chaosmoments::exponential_form_fit(spec, table);

    nlohmann::json payload = envelope("smallball fit");
    payload["kernel"] = chaosmoments::to_json(spec);
    payload["applicable"] = fit.applicable;
    payload["C1"] = fit.C1;
    payload["C2"] = fit.C2;
    payload["residual_rms"] = fit.residual_rms;
    payload["rows_used"] = fit.rows_used;
    payload["rows_zero_mass"] = fit.rows_zero_mass;
    auto rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "t,eps,mass\n";
    for (const auto& row : table) {
        nlohmann::json r;
        r["t"] = row.t;
        r["eps"] = row.eps;
        r["mass"] = row.mass;
        rows.push_back(r);
        csv << fmt_double(row.t) << ',' << fmt_double(row.eps) << ','
            << fmt_double(row.mass) << '\n';
    }
    payload["table"] = rows;
    emit(st.common, payload, csv.str());
    return 0;
}

}  // namespace

void register_smallball(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("smallball",
                                   "small-ball mass nondegeneracy checks and fits");
    cmd->require_subcommand(1);

    {
        auto st = std::make_shared<VerifyState>();
        auto* c = cmd->add_subcommand("verify",
                                      "check ball_mass >= threshold * t^a on the (eps, t) grid");
        st->k.add(c);
        st->a_opt = c->add_option("--a", st->a, "claimed mass exponent a");
        st->b_opt = c->add_option("--b", st->b, "claimed clock exponent b (t = s * eps^b)");
        st->thr_opt = c->add_option("--threshold", st->threshold, "pass threshold (default 0.1)");
        st->eps_opt = c->add_option("--eps", st->eps,
                                    "radius grid: lo:hi:n, log:lo:hi:n, or a comma list");
        st->y_opt = c->add_option("--y-per-eps", st->y_per_eps,
                                  "center-grid points per axis (default 3)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_verify(*st); }; });
    }
    {
        auto st = std::make_shared<ExpClaimState>();
        auto* c = cmd->add_subcommand(
            "expclaim", "margin of int_0^delta exp(-r^nu/2) dr over its exponential lower form");
        st->nu_opt = c->add_option("--nu", st->nu, "exponent nu > 0 (default 2)");
        st->deltas_opt = c->add_option("--deltas", st->deltas,
                                       "delta grid (default log:0.01:100:50)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_expclaim(*st); }; });
    }
    {
        auto st = std::make_shared<FitState>();
        auto* c = cmd->add_subcommand("fit",
                                      "fit log(mass/t^a) = log C1 - C2 t^bp/eps^ce on a mass table");
        st->k.add(c);
        st->t_opt = c->add_option("--t", st->t, "time grid (default log:0.01:0.25:8)");
        st->eps_opt = c->add_option("--eps", st->eps, "radius grid (default 0.1,0.2,0.4)");
        st->y_opt = c->add_option("--y-per-eps", st->y_per_eps,
                                  "center-grid points per axis (default 3)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_fit(*st); }; });
    }
}

}  // namespace cli
