// `moments ...`: Monte-Carlo chaos moments, the truncated p-th moment with
// its tail estimate, the finite-difference reference simulation, and the
// lower-bound localisation construction. All Monte-Carlo subcommands require
// --seed and reproduce byte-identically for a fixed config; --threads N is
// bit-identical to --threads 1.

#include "cli_common.hpp"

#include "chaosmoments/fd_oracle.hpp"
#include "chaosmoments/moments.hpp"

namespace cli {

namespace {

using chaosmoments::MomentEstimate;

const char* method_name(chaosmoments::EstimateMethod m) {
    switch (m) {
        case chaosmoments::EstimateMethod::MC: return "mc";
        case chaosmoments::EstimateMethod::Quadrature: return "quadrature";
        case chaosmoments::EstimateMethod::ClosedForm: return "closed_form";
    }
    return "unknown";
}

nlohmann::json estimate_json(const MomentEstimate& e) {
    nlohmann::json j;
    j["value"] = e.value;
    j["std_error"] = e.std_error;
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    j["method"] = method_name(e.method);
    return j;
}

struct ModelArgs {
    std::string kernel = "heat1";
    double alpha = 1.5;
    double beta = 0.8;
    std::string noise = "white-white";
    double gamma = 0.5;
    double lambda = 0.5;
    std::string lambdas;
    std::string x;
    double initial = 1.0;
    CLI::Option *kernel_opt = nullptr, *alpha_opt = nullptr, *beta_opt = nullptr,
                *noise_opt = nullptr, *gamma_opt = nullptr, *lambda_opt = nullptr,
                *lambdas_opt = nullptr, *x_opt = nullptr, *initial_opt = nullptr;

    void add(CLI::App* c) {
        kernel_opt = c->add_option("--kernel", kernel, "kernel nickname (default heat1)");
        alpha_opt = c->add_option("--alpha", alpha, "stability index for aheat/frac");
        beta_opt = c->add_option("--beta", beta, "time-fractional order for frac");
        noise_opt = c->add_option("--noise", noise,
                                  "white-white | white-riesz | riesz | product "
                                  "(default white-white)");
        gamma_opt = c->add_option("--gamma", gamma, "time exponent for riesz/product noise");
        lambda_opt = c->add_option("--lambda", lambda, "spatial Riesz exponent");
        lambdas_opt = c->add_option("--lambdas", lambdas, "product-kernel exponents");
        x_opt = c->add_option("--x", x, "evaluation point (default origin)");
        initial_opt = c->add_option("--initial", initial, "flat initial value (default 1)");
    }
    std::pair<chaosmoments::ChaosKernelSpec, chaosmoments::NoiseSpec>
    resolve(const CommonOpts& g, int n, double t) {
        from_config(kernel_opt, g, "kernel", kernel);
        from_config(alpha_opt, g, "alpha", alpha);
        from_config(beta_opt, g, "beta", beta);
        from_config(noise_opt, g, "noise", noise);
        from_config(gamma_opt, g, "gamma", gamma);
        from_config(lambda_opt, g, "lambda", lambda);
        from_config(lambdas_opt, g, "lambdas", lambdas);
        from_config(x_opt, g, "x", x);
        from_config(initial_opt, g, "initial", initial);
        chaosmoments::ChaosKernelSpec spec;
        spec.kernel = parse_kernel(kernel, alpha, beta);
        spec.n = n;
        spec.t = t;
        spec.x = parse_point(x);
        spec.initial_value = initial;
        auto nz = parse_noise(noise, gamma, lambda, lambdas, spec.kernel.d);
        return {spec, nz};
    }
};

struct SeedArgs {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string samples = "100000";
    CLI::Option *threads_opt = nullptr, *samples_opt = nullptr;

    void add(CLI::App* c) {
        c->add_option("--seed", seed, "RNG seed (required: runs must be reproducible)")
            ->required();
        threads_opt = c->add_option("--threads", threads,
                                    "worker threads; results are thread-count invariant");
        samples_opt = c->add_option("--samples", samples, "sample count, e.g. 1e6");
    }
    std::int64_t resolve(const CommonOpts& g) {
        from_config(threads_opt, g, "threads", threads);
        from_config(samples_opt, g, "samples", samples);
        return parse_count(samples);
    }
};

struct PhiState {
    CommonOpts common;
    ModelArgs model;
    SeedArgs mc;
    int n = 1;
    double t = 0.25;
    CLI::Option *n_opt = nullptr, *t_opt = nullptr;
};

int run_phi(PhiState& st) {
    load_config(st.common);
    from_config(st.n_opt, st.common, "n", st.n);
    from_config(st.t_opt, st.common, "t", st.t);
    std::int64_t samples = st.mc.resolve(st.common);
    auto [spec, noise] = st.model.resolve(st.common, st.n, st.t);
    auto est = chaosmoments::phi_n(spec, noise, samples, st.mc.seed, st.mc.threads);

    nlohmann::json payload = envelope("moments phi");
    payload["kernel"] = chaosmoments::to_json(spec.kernel);
    payload["noise"] = chaosmoments::to_json(noise);
    payload["n"] = st.n;
    payload["t"] = st.t;
    payload["estimate"] = estimate_json(est);
    std::ostringstream csv;
    csv << "n,t,value,std_error\n"
        << st.n << ',' << fmt_double(st.t) << ',' << fmt_double(est.value) << ','
        << fmt_double(est.std_error) << '\n';
    emit(st.common, payload, csv.str());
    return 0;
}

struct EstimateState {
    CommonOpts common;
    ModelArgs model;
    SeedArgs mc;
    int p = 2;
    int n_max = 3;
    std::string t = "0.25";
    CLI::Option *p_opt = nullptr, *nmax_opt = nullptr, *t_opt = nullptr;
};

int run_estimate(EstimateState& st) {
    load_config(st.common);
    from_config(st.p_opt, st.common, "p", st.p);
    from_config(st.nmax_opt, st.common, "nmax", st.n_max);
    from_config(st.t_opt, st.common, "t", st.t);
    std::int64_t samples = st.mc.resolve(st.common);
    auto t_grid = parse_grid(st.t);

    nlohmann::json payload = envelope("moments estimate");
    payload["p"] = st.p;
    payload["n_max"] = st.n_max;
    auto rows = nlohmann::json::array();
    std::ostringstream csv;
    csv << "t,value,std_error,tail_estimate\n";
    for (double t : t_grid) {
        auto [spec, noise] = st.model.resolve(st.common, 1, t);
        if (rows.empty()) {
            payload["kernel"] = chaosmoments::to_json(spec.kernel);
            payload["noise"] = chaosmoments::to_json(noise);
        }
        auto res = chaosmoments::pth_moment_truncated(st.p, spec, noise, st.n_max, samples,
                                                      st.mc.seed, st.mc.threads);
        nlohmann::json r;
        r["t"] = t;
        r["estimate"] = estimate_json(res.estimate);
        r["tail_estimate"] = res.tail_estimate;
        rows.push_back(r);
        csv << fmt_double(t) << ',' << fmt_double(res.estimate.value) << ','
            << fmt_double(res.estimate.std_error) << ',' << fmt_double(res.tail_estimate)
            << '\n';
    }
    if (t_grid.size() == 1) {
        payload["t"] = t_grid[0];
        payload["estimate"] = rows[0]["estimate"];
        payload["tail_estimate"] = rows[0]["tail_estimate"];
    } else {
        payload["rows"] = rows;
    }
    emit(st.common, payload, csv.str());
    return 0;
}

struct OracleState {
    CommonOpts common;
    std::uint64_t seed = 0;
    int threads = 1;
    double t = 0.25, dx = 0.0078125, dt = -1.0, amp = 1.0, domain_half = 2.0;
    std::string paths = "10000";
    CLI::Option *threads_opt = nullptr, *paths_opt = nullptr, *t_opt = nullptr,
                *dx_opt = nullptr, *dt_opt = nullptr;
};

int run_oracle(OracleState& st) {
    load_config(st.common);
    from_config(st.threads_opt, st.common, "threads", st.threads);
    from_config(st.paths_opt, st.common, "paths", st.paths);
    from_config(st.t_opt, st.common, "t", st.t);
    from_config(st.dx_opt, st.common, "dx", st.dx);
    from_config(st.dt_opt, st.common, "dt", st.dt);
    double dt = st.dt > 0 ? st.dt : st.dx * st.dx / 2;
    auto res = chaosmoments::fd_oracle_she(st.t, st.dx, dt, parse_count(st.paths), st.seed,
                                           st.amp, st.domain_half, st.threads);

    nlohmann::json payload = envelope("moments fd-oracle");
    payload["t"] = st.t;
    payload["dx"] = st.dx;
    payload["dt"] = dt;
    payload["n_paths"] = res.n_paths;
    payload["seed"] = res.seed;
    payload["mean"] = res.mean;
    payload["mean_se"] = res.mean_se;
    payload["second"] = res.second;
    payload["second_se"] = res.second_se;
    payload["fourth"] = res.fourth;
    payload["fourth_se"] = res.fourth_se;
    std::ostringstream csv;
    csv << "moment,value,std_error\n"
        << "1," << fmt_double(res.mean) << ',' << fmt_double(res.mean_se) << '\n'
        << "2," << fmt_double(res.second) << ',' << fmt_double(res.second_se) << '\n'
        << "4," << fmt_double(res.fourth) << ',' << fmt_double(res.fourth_se) << '\n';
    emit(st.common, payload, csv.str());
    return 0;
}

struct RestrictedState {
    CommonOpts common;
    SeedArgs mc;
    int p = 2, m = 1;
    double eps = 1.0, t = 1.0, b = 2.0;
    CLI::Option *p_opt = nullptr, *m_opt = nullptr, *eps_opt = nullptr, *t_opt = nullptr,
                *b_opt = nullptr;
};

int run_restricted(RestrictedState& st) {
    load_config(st.common);
    from_config(st.p_opt, st.common, "p", st.p);
    from_config(st.m_opt, st.common, "m", st.m);
    from_config(st.eps_opt, st.common, "eps", st.eps);
    from_config(st.t_opt, st.common, "t", st.t);
    from_config(st.b_opt, st.common, "b", st.b);
    std::int64_t samples = st.mc.resolve(st.common);
    auto plan = chaosmoments::make_lower_bound_plan(st.p, st.m, st.eps, st.t, st.b);
    auto est = chaosmoments::restricted_integral_mc(plan, samples, st.mc.seed, st.mc.threads);
    double closed = chaosmoments::restricted_integral_closed_form(plan);
    double z = est.std_error > 0 ? (est.value - closed) / est.std_error : 0.0;

    nlohmann::json payload = envelope("moments restricted");
    payload["p"] = plan.p;
    payload["m"] = plan.m;
    payload["m_p"] = plan.m_p;
    payload["eps"] = plan.eps;
    payload["t"] = plan.t;
    payload["L"] = plan.L;
    payload["centers"] = plan.centers;
    payload["estimate"] = estimate_json(est);
    payload["closed_form"] = closed;
    payload["z_score"] = z;
    std::ostringstream csv;
    csv << "value,std_error,closed_form,z_score\n"
        << fmt_double(est.value) << ',' << fmt_double(est.std_error) << ','
        << fmt_double(closed) << ',' << fmt_double(z) << '\n';
    emit(st.common, payload, csv.str());
    return 0;
}

struct LowerBoundState {
    CommonOpts common;
    int p = 2, m = 1;
    double eps = 1.0, t = 1.0;
    std::string a = "0", b = "2", lambda = "1/2", gamma = "1/2";
    CLI::Option *p_opt = nullptr, *m_opt = nullptr, *eps_opt = nullptr, *t_opt = nullptr,
                *a_opt = nullptr, *b_opt = nullptr, *lambda_opt = nullptr, *gamma_opt = nullptr;
};

int run_lower_bound(LowerBoundState& st) {
    load_config(st.common);
    from_config(st.p_opt, st.common, "p", st.p);
    from_config(st.m_opt, st.common, "m", st.m);
    from_config(st.eps_opt, st.common, "eps", st.eps);
    from_config(st.t_opt, st.common, "t", st.t);
    from_config(st.a_opt, st.common, "a", st.a);
    from_config(st.b_opt, st.common, "b", st.b);
    from_config(st.lambda_opt, st.common, "lambda", st.lambda);
    from_config(st.gamma_opt, st.common, "gamma", st.gamma);

    auto a = chaosmoments::parse_rational(st.a);
    auto b = chaosmoments::parse_rational(st.b);
    auto lambda = chaosmoments::parse_rational(st.lambda);
    auto gamma = chaosmoments::parse_rational(st.gamma);

    auto plan = chaosmoments::make_lower_bound_plan(st.p, st.m, st.eps, st.t,
                                                    chaosmoments::rational_double(b));
    auto report = chaosmoments::lower_bound_value(plan, chaosmoments::rational_double(a),
                                                  chaosmoments::rational_double(b),
                                                  chaosmoments::rational_double(lambda),
                                                  chaosmoments::rational_double(gamma));
    auto opt = chaosmoments::lower_bound_optimized_exponents(a, b, lambda, gamma);

    nlohmann::json payload = envelope("moments lower-bound");
    payload["p"] = plan.p;
    payload["m"] = plan.m;
    payload["m_p"] = plan.m_p;
    payload["eps"] = plan.eps;
    payload["t"] = plan.t;
    payload["L"] = plan.L;
    payload["log_value"] = report.log_value;
    payload["m0"] = report.m0;
    payload["eps_tp"] = report.eps_tp;
    payload["optimized_t_exp"] = chaosmoments::rational_str(opt.t_exp);
    payload["optimized_p_exp"] = chaosmoments::rational_str(opt.p_exp);
    std::ostringstream csv;
    csv << "log_value,m0,eps_tp,t_exp,p_exp\n"
        << fmt_double(report.log_value) << ',' << fmt_double(report.m0) << ','
        << fmt_double(report.eps_tp) << ',' << chaosmoments::rational_str(opt.t_exp) << ','
        << chaosmoments::rational_str(opt.p_exp) << '\n';
    emit(st.common, payload, csv.str());
    return 0;
}

}  // namespace

void register_moments(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("moments",
                                   "chaos-moment Monte Carlo and the lower-bound construction");
    cmd->require_subcommand(1);

    {
        auto st = std::make_shared<PhiState>();
        auto* c = cmd->add_subcommand("phi", "second moment of the n-th chaos term");
        st->model.add(c);
        st->n_opt = c->add_option("--n", st->n, "chaos order (default 1)");
        st->t_opt = c->add_option("--t", st->t, "time (default 0.25)");
        st->mc.add(c);
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_phi(*st); }; });
    }
    {
        auto st = std::make_shared<EstimateState>();
        auto* c = cmd->add_subcommand(
            "estimate", "truncated p-th moment with tail estimate; --t may be a grid");
        st->model.add(c);
        st->p_opt = c->add_option("--p", st->p, "moment order: 1, 2, or 4 (default 2)");
        st->nmax_opt = c->add_option("--nmax", st->n_max, "chaos truncation order (default 3)");
        st->t_opt = c->add_option("--t", st->t, "time or time grid (default 0.25)");
        st->mc.add(c);
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_estimate(*st); }; });
    }
    {
        auto st = std::make_shared<OracleState>();
        auto* c = cmd->add_subcommand(
            "fd-oracle", "finite-difference reference moments for the d=1 white-noise heat equation");
        st->t_opt = c->add_option("--t", st->t, "horizon (default 0.25)");
        st->dx_opt = c->add_option("--dx", st->dx, "grid step (default 1/128)");
        st->dt_opt = c->add_option("--dt", st->dt, "time step (default dx^2/2)");
        st->paths_opt = c->add_option("--paths", st->paths, "number of paths (default 1e4)");
        c->add_option("--seed", st->seed, "RNG seed")->required();
        st->threads_opt = c->add_option("--threads", st->threads, "worker threads");
        c->add_option("--amp", st->amp, "noise amplitude (default 1)");
        c->add_option("--domain-half", st->domain_half,
                      "half-width of the periodic domain (default 2)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_oracle(*st); }; });
    }
    {
        auto st = std::make_shared<RestrictedState>();
        auto* c = cmd->add_subcommand(
            "restricted", "Monte Carlo vs closed form for the window-restricted simplex integral");
        st->p_opt = c->add_option("--p", st->p, "moment order (even, default 2)");
        st->m_opt = c->add_option("--m", st->m, "total chaos order (default 1)");
        st->eps_opt = c->add_option("--eps", st->eps, "ball radius in the plan (default 1)");
        st->t_opt = c->add_option("--t", st->t, "horizon (default 1)");
        st->b_opt = c->add_option("--b", st->b, "clock exponent (default 2)");
        st->mc.add(c);
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_restricted(*st); }; });
    }
    {
        auto st = std::make_shared<LowerBoundState>();
        auto* c = cmd->add_subcommand(
            "lower-bound", "localisation-plan summand and its optimized growth exponents");
        st->p_opt = c->add_option("--p", st->p, "moment order (even, default 2)");
        st->m_opt = c->add_option("--m", st->m, "total chaos order (default 1)");
        st->eps_opt = c->add_option("--eps", st->eps, "ball radius (default 1)");
        st->t_opt = c->add_option("--t", st->t, "horizon (default 1)");
        st->a_opt = c->add_option("--a", st->a, "scaling exponent a (rational, default 0)");
        st->b_opt = c->add_option("--b", st->b, "scaling exponent b (rational, default 2)");
        st->lambda_opt = c->add_option("--lambda", st->lambda,
                                       "spatial exponent (rational, default 1/2)");
        st->gamma_opt = c->add_option("--gamma", st->gamma,
                                      "time exponent (rational, default 1/2)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_lower_bound(*st); }; });
    }
}

}  // namespace cli
