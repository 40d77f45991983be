#pragma once

// Shared plumbing for the CLI subcommands: kernel/noise nickname parsing,
// grid syntax, JSON config merge (flags > config file > defaults), and the
// output emitters. Output is fully deterministic: no timestamps, fixed key
// order (alphabetical within JSON objects), fixed float formatting.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/json_specs.hpp"
#include "chaosmoments/kernels.hpp"
#include "chaosmoments/noise.hpp"
#include "chaosmoments/rational.hpp"

namespace cli {

using Action = std::function<int()>;

// every register_* hook fills `action` with the selected leaf handler
void register_exponents(CLI::App& app, Action& action);
void register_diagrams(CLI::App& app, Action& action);
void register_kernels(CLI::App& app, Action& action);
void register_smallball(CLI::App& app, Action& action);
void register_hls(CLI::App& app, Action& action);
void register_moments(CLI::App& app, Action& action);

struct CommonOpts {
    std::string output = "json";  // json | csv (count-style commands add text)
    std::string out_path;         // empty -> stdout
    std::string config_path;
    nlohmann::json config = nlohmann::json::object();

    CLI::Option* output_opt = nullptr;
};

inline void add_common(CLI::App* cmd, CommonOpts& c, const char* default_output = "json") {
    c.output = default_output;
    c.output_opt = cmd->add_option("--output,--format", c.output,
                                   std::string("output format (default ") + default_output + ")")
                       ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", c.out_path, "write output to this file instead of stdout");
    cmd->add_option("--config", c.config_path,
                    "JSON file of defaults keyed by long option name; explicit flags win");
}

inline void load_config(CommonOpts& c) {
    if (c.config_path.empty()) return;
    std::ifstream in(c.config_path);
    if (!in) chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                                "cannot open config file: " + c.config_path);
    try {
        in >> c.config;
    } catch (const std::exception& e) {
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                           std::string("cannot parse config file: ") + e.what());
    }
    if (!c.config.is_object())
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                           "config file must hold a JSON object");
}

// flag wins; otherwise take the config value; otherwise keep the default
template <typename T>
void from_config(const CLI::Option* opt, const CommonOpts& c, const char* key, T& var) {
    if (opt != nullptr && opt->count() > 0) return;
    auto it = c.config.find(key);
    if (it == c.config.end()) return;
    try {
        if constexpr (std::is_same_v<T, std::string>) {
            if (it->is_string())
                var = it->get<std::string>();
            else
                var = it->dump();
        } else {
            var = it->get<T>();
        }
    } catch (const std::exception&) {
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                           std::string("config value for '") + key + "' has the wrong type");
    }
}

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void write_out(const CommonOpts& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                                 "cannot open output file: " + c.out_path);
    out << text;
}

inline nlohmann::json envelope(const std::string& command) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["command"] = command;
    return j;
}

// payload emitted as pretty JSON; csv used when --output csv
inline void emit(const CommonOpts& c, const nlohmann::json& payload, const std::string& csv) {
    if (c.output == "json") {
        write_out(c, payload.dump(2) + "\n");
    } else if (c.output == "csv") {
        if (csv.empty())
            chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                               "csv output is not available for this subcommand");
        write_out(c, csv);
    } else {
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                           "text output is not available for this subcommand");
    }
}

// "0.5" | "0.1,0.2,0.4" | "0.1:1:10" (linspace, inclusive) | "log:0.01:100:50"
inline std::vector<double> parse_grid(const std::string& s) {
    using chaosmoments::ErrorCode;
    auto bad = [&]() -> double {
        chaosmoments::fail(ErrorCode::BadUsage, "cannot parse grid: " + s);
    };
    auto to_d = [&](const std::string& p) {
        try {
            std::size_t pos = 0;
            double v = std::stod(p, &pos);
            if (pos != p.size()) return bad();
            return v;
        } catch (const std::exception&) {
            return bad();
        }
    };
    bool logscale = s.rfind("log:", 0) == 0;
    std::string body = logscale ? s.substr(4) : s;
    std::vector<std::string> parts;
    std::size_t start = 0;
    char sep = body.find(':') != std::string::npos ? ':' : ',';
    while (true) {
        auto pos = body.find(sep, start);
        parts.push_back(body.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (sep == ':' && parts.size() == 3) {
        double lo = to_d(parts[0]), hi = to_d(parts[1]);
        long n = std::lround(to_d(parts[2]));
        if (n < 1) bad();
        std::vector<double> g(n);
        if (n == 1) {
            g[0] = lo;
        } else if (logscale) {
            if (lo <= 0 || hi <= 0)
                chaosmoments::fail(ErrorCode::BadUsage, "log grid needs positive endpoints");
            double la = std::log(lo), lb = std::log(hi);
            for (long i = 0; i < n; ++i)
                g[i] = std::exp(la + (lb - la) * double(i) / double(n - 1));
        } else {
            for (long i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
        }
        return g;
    }
    if (logscale || sep == ':') bad();
    std::vector<double> g;
    g.reserve(parts.size());
    for (const auto& p : parts) g.push_back(to_d(p));
    if (g.empty()) bad();
    return g;
}

// comma-separated point, e.g. "0.3" or "0.1,-0.2,0.4"; empty -> {}
inline std::vector<double> parse_point(const std::string& s) {
    if (s.empty()) return {};
    return parse_grid(s);
}

// comma-separated row sizes, e.g. "4,4"
inline std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> sizes;
    for (double v : parse_grid(s)) {
        int n = int(std::lround(v));
        if (std::abs(v - n) > 1e-9)
            chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                               "row sizes must be integers: " + s);
        sizes.push_back(n);
    }
    return sizes;
}

// kernel nicknames: family (heat|aheat|wave|frac) + dimension digit; plain
// family name means d=1; she/swe/sfd are the d=1 equation aliases
inline chaosmoments::KernelSpec parse_kernel(const std::string& name, double alpha,
                                             double beta) {
    using chaosmoments::KernelSpec;
    std::string base = name;
    int d = 1;
    if (!base.empty() && base.back() >= '1' && base.back() <= '9') {
        d = base.back() - '0';
        base.pop_back();
    }
    KernelSpec k;
    if (base == "heat" || base == "she") {
        k = KernelSpec::heat(d);
    } else if (base == "aheat" || base == "alpha-heat" || base == "alpha_heat") {
        k = KernelSpec::alpha_heat(d, alpha);
    } else if (base == "wave" || base == "swe") {
        k = KernelSpec::wave(d);
    } else if (base == "frac" || base == "fracdiff" || base == "sfd") {
        k = KernelSpec::frac(d, alpha, beta);
    } else {
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                           "unknown kernel '" + name +
                               "' (use heat|aheat|wave|frac + dimension, or she|swe|sfd)");
    }
    chaosmoments::validate(k);
    return k;
}

// noise nicknames; d is taken from the kernel the command operates with
inline chaosmoments::NoiseSpec parse_noise(const std::string& name, double gamma,
                                           double lambda, const std::string& lambdas_csv,
                                           int d) {
    using chaosmoments::NoiseSpec;
    NoiseSpec n;
    if (name == "white-white" || name == "white") {
        n = NoiseSpec::white_white();
        if (d != 1)
            chaosmoments::fail(chaosmoments::ErrorCode::UnsupportedParameter,
                               "white spatial noise is one-dimensional");
    } else if (name == "white-riesz") {
        n = NoiseSpec::white_time_riesz(lambda, d);
    } else if (name == "riesz") {
        n = NoiseSpec::riesz(gamma, lambda, d);
    } else if (name == "product") {
        n = NoiseSpec::product(gamma, parse_point(lambdas_csv));
        if (int(n.lambdas.size()) != d)
            chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                               "--lambdas must list one exponent per dimension");
    } else {
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage,
                           "unknown noise '" + name +
                               "' (use white-white|white-riesz|riesz|product)");
    }
    chaosmoments::validate(n);
    return n;
}

inline const char* kernel_kind_name(chaosmoments::KernelKind k) {
    switch (k) {
        case chaosmoments::KernelKind::Heat: return "heat";
        case chaosmoments::KernelKind::AlphaHeat: return "alpha_heat";
        case chaosmoments::KernelKind::Wave: return "wave";
        case chaosmoments::KernelKind::FracDiff: return "frac";
    }
    return "unknown";
}

inline std::int64_t parse_count(const std::string& s) {
    // accepts 1000000 and 1e6 spellings
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() || v < 0 || v > 9.2e18)
            chaosmoments::fail(chaosmoments::ErrorCode::BadUsage, "bad count: " + s);
        return std::llround(v);
    } catch (const chaosmoments::Error&) {
        throw;
    } catch (const std::exception&) {
        chaosmoments::fail(chaosmoments::ErrorCode::BadUsage, "bad count: " + s);
    }
}

}  // namespace cli
