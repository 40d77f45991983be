// `kernels ...`: pointwise kernel values, radial Fourier transforms, ball
// masses, and the special functions behind the fractional families.
// `noise ...`: covariance and spectral-density evaluation for a noise spec.

#include "cli_common.hpp"

#include "chaosmoments/special.hpp"

namespace cli {

namespace {

struct KernelArgs {
    std::string kernel = "heat1";
    double alpha = 1.5;
    double beta = 0.8;
    CLI::Option *kernel_opt = nullptr, *alpha_opt = nullptr, *beta_opt = nullptr;

    void add(CLI::App* c) {
        kernel_opt = c->add_option("--kernel", kernel,
                                   "kernel nickname: heat1..3, aheat1..3, wave1..3, "
                                   "frac1..3, or she|swe|sfd (default heat1)");
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

struct EvalState {
    CommonOpts common;
    KernelArgs k;
    double t = 1.0;
    std::string x;
    bool fourier = false;
    CLI::Option *t_opt = nullptr, *x_opt = nullptr;
};

int run_eval(EvalState& st) {
    load_config(st.common);
    from_config(st.t_opt, st.common, "t", st.t);
    from_config(st.x_opt, st.common, "x", st.x);
    auto spec = st.k.resolve(st.common);
    auto x = parse_point(st.x);
    if (x.empty()) x.assign(spec.d, 0.0);
    nlohmann::json payload = envelope(st.fourier ? "kernels fourier" : "kernels eval");
    payload["kernel"] = chaosmoments::to_json(spec);
    payload["t"] = st.t;
    double v;
    if (st.fourier) {
        if (x.size() != 1)
            chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                               "--x must hold the radial frequency |xi| for fourier");
        payload["xi"] = x[0];
        v = chaosmoments::kernel_fourier(spec, st.t, x[0]);
    } else {
        payload["x"] = x;
        v = chaosmoments::kernel_value(spec, st.t, x);
    }
    payload["value"] = v;
    emit(st.common, payload, "value\n" + fmt_double(v) + "\n");
    return 0;
}

struct MassState {
    CommonOpts common;
    KernelArgs k;
    double t = 1.0, delta = 0.0, eps = 0.1;
    bool total = false;
    CLI::Option *t_opt = nullptr, *delta_opt = nullptr, *eps_opt = nullptr;
};

int run_mass(MassState& st) {
    load_config(st.common);
    from_config(st.t_opt, st.common, "t", st.t);
    from_config(st.delta_opt, st.common, "delta", st.delta);
    from_config(st.eps_opt, st.common, "eps", st.eps);
    auto spec = st.k.resolve(st.common);
    nlohmann::json payload = envelope(st.total ? "kernels totalmass" : "kernels mass");
    payload["kernel"] = chaosmoments::to_json(spec);
    payload["t"] = st.t;
    double v;
    if (st.total) {
        v = chaosmoments::total_mass(spec, st.t);
    } else {
        payload["delta"] = st.delta;
        payload["eps"] = st.eps;
        v = chaosmoments::ball_mass(spec, st.t, st.delta, st.eps);
    }
    payload["value"] = v;
    emit(st.common, payload, "value\n" + fmt_double(v) + "\n");
    return 0;
}

struct MlState {
    CommonOpts common;
    double beta = 1.0, beta2 = 1.0, z = 0.0;
    CLI::Option *beta_opt = nullptr, *beta2_opt = nullptr, *z_opt = nullptr;
};

int run_ml(MlState& st) {
    load_config(st.common);
    from_config(st.beta_opt, st.common, "beta", st.beta);
    from_config(st.beta2_opt, st.common, "beta2", st.beta2);
    from_config(st.z_opt, st.common, "z", st.z);
    double v = chaosmoments::mittag_leffler(st.beta, st.beta2, st.z);
    nlohmann::json payload = envelope("kernels ml");
    payload["beta"] = st.beta;
    payload["beta2"] = st.beta2;
    payload["z"] = st.z;
    payload["value"] = v;
    emit(st.common, payload, "value\n" + fmt_double(v) + "\n");
    return 0;
}

struct WrightState {
    CommonOpts common;
    double a = -0.5, b = 0.5, z = -1.0;
    CLI::Option *a_opt = nullptr, *b_opt = nullptr, *z_opt = nullptr;
};

int run_wright(WrightState& st) {
    load_config(st.common);
    from_config(st.a_opt, st.common, "a", st.a);
    from_config(st.b_opt, st.common, "b", st.b);
    from_config(st.z_opt, st.common, "z", st.z);
    double v = chaosmoments::wright(st.a, st.b, st.z);
    nlohmann::json payload = envelope("kernels wright");
    payload["a"] = st.a;
    payload["b"] = st.b;
    payload["z"] = st.z;
    payload["value"] = v;
    emit(st.common, payload, "value\n" + fmt_double(v) + "\n");
    return 0;
}

struct NoiseState {
    CommonOpts common;
    std::string noise = "riesz";
    double gamma = 0.5, lambda = 0.5;
    std::string lambdas;
    int d = 1;
    std::string tau, x, xi;
    CLI::Option *noise_opt = nullptr, *gamma_opt = nullptr, *lambda_opt = nullptr,
                *lambdas_opt = nullptr, *d_opt = nullptr;
};

int run_noise_eval(NoiseState& st) {
    load_config(st.common);
    from_config(st.noise_opt, st.common, "noise", st.noise);
    from_config(st.gamma_opt, st.common, "gamma", st.gamma);
    from_config(st.lambda_opt, st.common, "lambda", st.lambda);
    from_config(st.lambdas_opt, st.common, "lambdas", st.lambdas);
    from_config(st.d_opt, st.common, "d", st.d);
    auto n = parse_noise(st.noise, st.gamma, st.lambda, st.lambdas, st.d);
    nlohmann::json payload = envelope("noise eval");
    payload["noise"] = chaosmoments::to_json(n);
    payload["description"] = chaosmoments::describe(n);
    payload["lambda_total"] = chaosmoments::lambda_total(n);
    payload["has_spectral_density"] = chaosmoments::has_spectral_density(n);
    if (!st.tau.empty())
        payload["time_cov"] = chaosmoments::time_cov(n, parse_grid(st.tau).at(0));
    if (!st.x.empty()) payload["space_cov"] = chaosmoments::space_cov(n, parse_point(st.x));
    if (!st.xi.empty())
        payload["spectral_density"] = chaosmoments::spectral_density(n, parse_point(st.xi));
    emit(st.common, payload, "");
    return 0;
}

}  // namespace

void register_kernels(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("kernels",
                                   "Green-function values, Fourier symbols, ball masses");
    cmd->require_subcommand(1);

    {
        auto st = std::make_shared<EvalState>();
        auto* c = cmd->add_subcommand("eval", "pointwise kernel value G_t(x)");
        st->k.add(c);
        st->t_opt = c->add_option("--t", st->t, "time (default 1)");
        st->x_opt = c->add_option("--x", st->x, "point, comma-separated (default origin)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_eval(*st); }; });
    }
    {
        auto st = std::make_shared<EvalState>();
        st->fourier = true;
        auto* c = cmd->add_subcommand("fourier", "radial Fourier value G^_t(|xi|)");
        st->k.add(c);
        st->t_opt = c->add_option("--t", st->t, "time (default 1)");
        st->x_opt = c->add_option("--xi,--x", st->x, "radial frequency |xi|")->required();
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_eval(*st); }; });
    }
    {
        auto st = std::make_shared<MassState>();
        auto* c = cmd->add_subcommand("mass",
                                      "kernel mass of the eps-ball at distance delta, or total mass");
        st->k.add(c);
        st->t_opt = c->add_option("--t", st->t, "time (default 1)");
        st->delta_opt = c->add_option("--delta", st->delta, "center offset |x-y| (default 0)");
        st->eps_opt = c->add_option("--eps", st->eps, "ball radius (default 0.1)");
        c->add_flag("--total", st->total, "total kernel mass instead of a ball mass");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_mass(*st); }; });
    }
    {
        auto st = std::make_shared<MlState>();
        auto* c = cmd->add_subcommand("ml", "Mittag-Leffler E_{beta,beta2}(z)");
        st->beta_opt = c->add_option("--beta", st->beta, "first index (default 1)");
        st->beta2_opt = c->add_option("--beta2", st->beta2, "second index (default 1)");
        st->z_opt = c->add_option("--z", st->z, "argument")->required();
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_ml(*st); }; });
    }
    {
        auto st = std::make_shared<WrightState>();
        auto* c = cmd->add_subcommand("wright", "Wright phi(a, b; z)");
        st->a_opt = c->add_option("--a", st->a, "first index, > -1 (default -1/2)");
        st->b_opt = c->add_option("--b", st->b, "second index (default 1/2)");
        st->z_opt = c->add_option("--z", st->z, "argument")->required();
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_wright(*st); }; });
    }

    auto* ncmd = app.add_subcommand("noise", "noise covariance and spectral evaluation");
    ncmd->require_subcommand(1);
    {
        auto st = std::make_shared<NoiseState>();
        auto* c = ncmd->add_subcommand("eval",
                                       "covariance values and spectral density of a noise spec");
        st->noise_opt = c->add_option("--noise", st->noise,
                                      "white-white | white-riesz | riesz | product (default riesz)");
        st->gamma_opt = c->add_option("--gamma", st->gamma, "time exponent (default 0.5)");
        st->lambda_opt = c->add_option("--lambda", st->lambda, "Riesz exponent (default 0.5)");
        st->lambdas_opt = c->add_option("--lambdas", st->lambdas,
                                        "product-kernel exponents, comma-separated");
        st->d_opt = c->add_option("--d", st->d, "spatial dimension (default 1)");
        c->add_option("--tau", st->tau, "evaluate the time covariance at this lag");
        c->add_option("--x", st->x, "evaluate the space covariance at this point");
        c->add_option("--xi", st->xi, "evaluate the spectral density at this frequency");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_noise_eval(*st); }; });
    }
}

}  // namespace cli
