// `exponents table`: the four-row moment-exponent table at exact rational
// parameters. `exponents check`: lower/upper exponent identity for one
// (a, b, lambda, gamma).

#include "cli_common.hpp"

#include "chaosmoments/exponents.hpp"

namespace cli {

namespace {

using chaosmoments::KernelKind;
using chaosmoments::Rational;
using chaosmoments::rational_double;
using chaosmoments::rational_str;
using chaosmoments::RationalPair;

nlohmann::json pair_json(const RationalPair& p) {
    nlohmann::json j;
    j["t_exp"] = rational_str(p.t_exp);
    j["t_exp_value"] = rational_double(p.t_exp);
    j["p_exp"] = rational_str(p.p_exp);
    j["p_exp_value"] = rational_double(p.p_exp);
    return j;
}

struct TableState {
    CommonOpts common;
    std::string lambda = "1/2";
    std::string hurst = "3/4";
    std::string alpha = "3/2";
    std::string beta = "4/5";
    CLI::Option *lambda_opt = nullptr, *hurst_opt = nullptr, *alpha_opt = nullptr,
                *beta_opt = nullptr;
};

int run_table(TableState& st) {
    load_config(st.common);
    from_config(st.lambda_opt, st.common, "lambda", st.lambda);
    from_config(st.hurst_opt, st.common, "H", st.hurst);
    from_config(st.alpha_opt, st.common, "alpha", st.alpha);
    from_config(st.beta_opt, st.common, "beta", st.beta);

    Rational lambda = chaosmoments::parse_rational(st.lambda);
    Rational hurst = chaosmoments::parse_rational(st.hurst);
    Rational alpha = chaosmoments::parse_rational(st.alpha);
    Rational beta = chaosmoments::parse_rational(st.beta);

    const KernelKind kinds[] = {KernelKind::Heat, KernelKind::AlphaHeat, KernelKind::Wave,
                                KernelKind::FracDiff};
    const char* names[] = {"heat", "alpha_heat", "wave", "frac"};

    nlohmann::json payload = envelope("exponents table");
    payload["lambda"] = rational_str(lambda);
    payload["H"] = rational_str(hurst);
    payload["alpha"] = rational_str(alpha);
    payload["beta"] = rational_str(beta);
    auto rows = nlohmann::json::array();

    std::ostringstream csv;
    csv << "kernel,a,b,hbar,moment_t_exp,moment_p_exp,h_form_t_exp,h_form_p_exp,match\n";

    for (int i = 0; i < 4; ++i) {
        auto row = chaosmoments::table_row(kinds[i], alpha, beta, lambda, hurst);
        bool match = row.lower == row.upper && row.lower == row.closed_form;
        nlohmann::json r;
        r["kernel"] = names[i];
        r["a"] = rational_str(row.a);
        r["b"] = rational_str(row.b);
        r["hbar"] = rational_str(row.hbar);
        r["gamma"] = rational_str(row.gamma);
        r["moment"] = pair_json(row.lower);       // exponents of t and p in the moment bound
        r["upper"] = pair_json(row.upper);
        r["when_gamma_2m2H"] = pair_json(row.closed_form);  // same pair written in H
        r["match"] = match;
        rows.push_back(r);
        csv << names[i] << ',' << rational_str(row.a) << ',' << rational_str(row.b) << ','
            << rational_str(row.hbar) << ',' << rational_str(row.lower.t_exp) << ','
            << rational_str(row.lower.p_exp) << ',' << rational_str(row.closed_form.t_exp)
            << ',' << rational_str(row.closed_form.p_exp) << ','
            << (match ? "true" : "false") << '\n';
    }
    payload["rows"] = rows;
    emit(st.common, payload, csv.str());
    for (const auto& r : payload["rows"])
        if (!r["match"].get<bool>()) return 1;
    return 0;
}

struct CheckState {
    CommonOpts common;
    std::string a, b, lambda, gamma;
    CLI::Option *a_opt = nullptr, *b_opt = nullptr, *lambda_opt = nullptr,
                *gamma_opt = nullptr;
};

int run_check(CheckState& st) {
    load_config(st.common);
    from_config(st.a_opt, st.common, "a", st.a);
    from_config(st.b_opt, st.common, "b", st.b);
    from_config(st.lambda_opt, st.common, "lambda", st.lambda);
    from_config(st.gamma_opt, st.common, "gamma", st.gamma);
    for (const auto* p : {&st.a, &st.b, &st.lambda, &st.gamma})
        if (p->empty())
            chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                               "--a, --b, --lambda, --gamma are all required");

    Rational a = chaosmoments::parse_rational(st.a);
    Rational b = chaosmoments::parse_rational(st.b);
    Rational lambda = chaosmoments::parse_rational(st.lambda);
    Rational gamma = chaosmoments::parse_rational(st.gamma);

    auto lower = chaosmoments::lower_exponents(a, b, lambda, gamma);
    auto hbar = chaosmoments::hbar_rational({a, b}, lambda);
    auto upper = chaosmoments::upper_exponents(hbar, gamma);
    bool match = chaosmoments::matching_check(a, b, lambda, gamma);

    nlohmann::json payload = envelope("exponents check");
    payload["a"] = rational_str(a);
    payload["b"] = rational_str(b);
    payload["lambda"] = rational_str(lambda);
    payload["gamma"] = rational_str(gamma);
    payload["hbar"] = rational_str(hbar);
    payload["lower"] = pair_json(lower);
    payload["upper"] = pair_json(upper);
    payload["match"] = match;

    std::ostringstream csv;
    csv << "hbar,lower_t_exp,lower_p_exp,upper_t_exp,upper_p_exp,match\n"
        << rational_str(hbar) << ',' << rational_str(lower.t_exp) << ','
        << rational_str(lower.p_exp) << ',' << rational_str(upper.t_exp) << ','
        << rational_str(upper.p_exp) << ',' << (match ? "true" : "false") << '\n';
    emit(st.common, payload, csv.str());
    return match ? 0 : 1;
}

}  // namespace

void register_exponents(CLI::App& app, Action& action) {
    auto* cmd = app.add_subcommand("exponents", "moment-growth exponent algebra (exact rationals)");
    cmd->require_subcommand(1);

    {
        auto st = std::make_shared<TableState>();
        auto* c = cmd->add_subcommand(
            "table", "all four kernel rows: scaling pair, hbar, and matching exponent pairs");
        st->lambda_opt = c->add_option("--lambda", st->lambda,
                                       "spatial covariance exponent as a rational (default 1/2)");
        st->hurst_opt = c->add_option("--H", st->hurst,
                                      "temporal Hurst index in [1/2,1), gamma = 2-2H (default 3/4)");
        st->alpha_opt = c->add_option("--alpha", st->alpha,
                                      "alpha for the alpha-heat and fractional rows (default 3/2)");
        st->beta_opt = c->add_option("--beta", st->beta,
                                     "beta for the fractional-diffusion row (default 4/5)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_table(*st); }; });
    }
    {
        auto st = std::make_shared<CheckState>();
        auto* c = cmd->add_subcommand(
            "check", "lower vs upper exponent identity for one (a, b, lambda, gamma)");
        st->a_opt = c->add_option("--a", st->a, "scaling exponent a (rational)");
        st->b_opt = c->add_option("--b", st->b, "scaling exponent b (rational)");
        st->lambda_opt = c->add_option("--lambda", st->lambda, "spatial exponent (rational)");
        st->gamma_opt = c->add_option("--gamma", st->gamma, "time exponent in (0,1] (rational)");
        add_common(c, st->common);
        c->callback([st, &action] { action = [st] { return run_check(*st); }; });
    }
}

}  // namespace cli
