#include "chaosmoments/json_specs.hpp"

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

using nlohmann::json;

json to_json(const NoiseSpec& n) {
    json t;
    if (n.time == TimeKind::White) {
        t = {{"kind", "white"}};
    } else {
        t = {{"kind", "power"}, {"gamma", n.gamma}};
    }
    json s;
    switch (n.space) {
        case SpaceKind::DeltaD1: s = {{"kind", "white"}, {"d", 1}}; break;
        case SpaceKind::Riesz: s = {{"kind", "riesz"}, {"lambda", n.lambda}, {"d", n.d}}; break;
        case SpaceKind::ProductRL: s = {{"kind", "product"}, {"lambdas", n.lambdas}}; break;
    }
    return {{"time", t}, {"space", s}};
}

NoiseSpec noise_from_json(const json& j) {
    NoiseSpec n;
    try {
        const json& t = j.at("time");
        std::string tk = t.at("kind").get<std::string>();
        if (tk == "white") {
            n.time = TimeKind::White;
        } else if (tk == "power") {
            n.time = TimeKind::Power;
            n.gamma = t.at("gamma").get<double>();
        } else {
            fail(ErrorCode::BadUsage, "unknown time covariance kind: " + tk);
        }
        const json& s = j.at("space");
        std::string sk = s.at("kind").get<std::string>();
        if (sk == "white") {
            n.space = SpaceKind::DeltaD1;
            n.d = s.value("d", 1);
        } else if (sk == "riesz") {
            n.space = SpaceKind::Riesz;
            n.lambda = s.at("lambda").get<double>();
            n.d = s.at("d").get<int>();
        } else if (sk == "product") {
            n.space = SpaceKind::ProductRL;
            n.lambdas = s.at("lambdas").get<std::vector<double>>();
            n.d = int(n.lambdas.size());
        } else {
            fail(ErrorCode::BadUsage, "unknown space covariance kind: " + sk);
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::BadUsage, std::string("bad noise spec: ") + e.what());
    }
    validate(n);
    return n;
}

json to_json(const KernelSpec& k) {
    switch (k.kind) {
        case KernelKind::Heat: return {{"kind", "heat"}, {"d", k.d}};
        case KernelKind::AlphaHeat:
            return {{"kind", "alpha_heat"}, {"d", k.d}, {"alpha", k.alpha}};
        case KernelKind::Wave: return {{"kind", "wave"}, {"d", k.d}};
        case KernelKind::FracDiff:
            return {{"kind", "frac"}, {"d", k.d}, {"alpha", k.alpha}, {"beta", k.beta}};
    }
    fail(ErrorCode::BadUsage, "unknown kernel kind");
}

KernelSpec kernel_from_json(const json& j) {
    KernelSpec k;
    try {
        std::string kk = j.at("kind").get<std::string>();
        k.d = j.at("d").get<int>();
        if (kk == "heat") {
            k.kind = KernelKind::Heat;
        } else if (kk == "alpha_heat") {
            k.kind = KernelKind::AlphaHeat;
            k.alpha = j.at("alpha").get<double>();
        } else if (kk == "wave") {
            k.kind = KernelKind::Wave;
        } else if (kk == "frac") {
            k.kind = KernelKind::FracDiff;
            k.alpha = j.at("alpha").get<double>();
            k.beta = j.at("beta").get<double>();
        } else {
            fail(ErrorCode::BadUsage, "unknown kernel kind: " + kk);
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::BadUsage, std::string("bad kernel spec: ") + e.what());
    }
    validate(k);
    return k;
}

}  // namespace chaosmoments
