#include "chaosmoments/moments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/rng.hpp"

namespace chaosmoments {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::int64_t kBlock = 8192;
constexpr int kVertexCap = 8;

using Point = std::array<double, 3>;

double sq(double v) { return v * v; }

// 53-bit uniform strictly inside (0,1); safe for logs and inverse CDFs.
double uniform01(std::mt19937_64& g) {
    return (double(g() >> 11) + 0.5) * 0x1p-53;
}

double normal01(std::mt19937_64& g) {
    double u1 = uniform01(g), u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double exp1(std::mt19937_64& g) { return -std::log(uniform01(g)); }

void sphere_dir(int d, std::mt19937_64& g, Point& dir) {
    if (d == 1) {
        dir = {uniform01(g) < 0.5 ? -1.0 : 1.0, 0.0, 0.0};
    } else if (d == 2) {
        double th = 2.0 * kPi * uniform01(g);
        dir = {std::cos(th), std::sin(th), 0.0};
    } else {
        double z = 2.0 * uniform01(g) - 1.0;
        double th = 2.0 * kPi * uniform01(g);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        dir = {r * std::cos(th), r * std::sin(th), z};
    }
}

// Chambers-Mallows-Stuck draw of a symmetric alpha-stable variable with
// characteristic function exp(-|sigma xi|^alpha).
double stable_symmetric(double alpha, double sigma, std::mt19937_64& g) {
    double u = kPi * (uniform01(g) - 0.5);
    double e = exp1(g);
    if (alpha == 2.0) return sigma * 2.0 * std::sin(u) * std::sqrt(e);
    double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    double w = std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
    return sigma * s * w;
}

// Kanter draw of a one-sided beta-stable variable with Laplace transform
// exp(-s^beta), beta in (0,1).
double stable_positive(double beta, std::mt19937_64& g) {
    double th = kPi * uniform01(g);
    double e = exp1(g);
    double la = (beta / (1.0 - beta)) * std::log(std::sin(beta * th)) +
                std::log(std::sin((1.0 - beta) * th)) -
                (1.0 / (1.0 - beta)) * std::log(std::sin(th));
    return std::exp(((1.0 - beta) / beta) * (la - std::log(e)));
}

// Draw a spatial increment with the normalised law of the kernel slice G_g
// and return the slice mass as the importance weight. The fractional slice
// uses the stable subordination identity
//   g^{beta-1} E_{beta,beta}(-g^beta q) = E[ (beta U / g) e^{-q U} ],
// U = (g/S)^beta with S one-sided beta-stable, so the weight is beta U / g.
double chain_step(const KernelSpec& k, double g, std::mt19937_64& eng, Point& dx) {
    dx = {0.0, 0.0, 0.0};
    switch (k.kind) {
        case KernelKind::Heat: {
            double s = std::sqrt(g);
            for (int i = 0; i < k.d; ++i) dx[i] = s * normal01(eng);
            return 1.0;
        }
        case KernelKind::AlphaHeat: {
            if (k.d != 1)
                fail(ErrorCode::UnsupportedParameter, "alpha-heat chain sampling is d=1 only");
            dx[0] = stable_symmetric(k.alpha, std::pow(0.5 * g, 1.0 / k.alpha), eng);
            return 1.0;
        }
        case KernelKind::Wave: {
            if (k.d == 1) {
                dx[0] = g * (2.0 * uniform01(eng) - 1.0);
                return g;  // density 1/2 on (-g, g)
            }
            if (k.d == 2) {
                // radial CDF (g - sqrt(g^2 - r^2)) / g of the normalised disk law
                double u = uniform01(eng);
                double r = g * std::sqrt(u * (2.0 - u));
                Point dir;
                sphere_dir(2, eng, dir);
                dx = {r * dir[0], r * dir[1], 0.0};
                return g;
            }
            Point dir;
            sphere_dir(3, eng, dir);
            dx = {g * dir[0], g * dir[1], g * dir[2]};
            return g;  // uniform surface measure of total mass g
        }
        case KernelKind::FracDiff: {
            if (k.d != 1)
                fail(ErrorCode::UnsupportedParameter, "fractional chain sampling is d=1 only");
            if (k.beta > 1.0)
                fail(ErrorCode::UnsupportedParameter,
                     "fractional chain sampling covers beta <= 1");
            double usub = g;
            double w = 1.0;
            if (k.beta < 1.0) {
                double s = stable_positive(k.beta, eng);
                usub = std::pow(g / s, k.beta);
                w = k.beta * usub / g;
            }
            dx[0] = stable_symmetric(k.alpha, std::pow(0.5 * usub, 1.0 / k.alpha), eng);
            return w;
        }
    }
    fail(ErrorCode::UnsupportedParameter, "unknown kernel kind");
}

bool kernel_has_pointwise_density(const KernelSpec& k) {
    return !(k.kind == KernelKind::Wave && k.d == 3);
}

double surface_area(int d) { return d == 1 ? 2.0 : (d == 2 ? 2.0 * kPi : 4.0 * kPi); }

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------
// Block-parallel Monte Carlo driver. Per-block engines are derived from
// (seed, block index) and block results merge in index order, so the output
// is bit-identical for any thread count.
// ---------------------------------------------------------------------------

MeanAccumulator run_blocks(std::int64_t n_samples, std::uint64_t seed, int threads,
                           const std::function<double(std::mt19937_64&)>& one_sample) {
    if (n_samples <= 0) fail(ErrorCode::BadUsage, "sample count must be positive");
    if (threads < 1 || threads > 64) fail(ErrorCode::BadUsage, "thread count out of range");
    const std::int64_t blocks = (n_samples + kBlock - 1) / kBlock;
    std::vector<MeanAccumulator> acc(static_cast<std::size_t>(blocks));
    auto run_block = [&](std::int64_t b) {
        std::mt19937_64 eng = make_engine(seed, static_cast<std::uint64_t>(b));
        std::int64_t count = std::min<std::int64_t>(kBlock, n_samples - b * kBlock);
        MeanAccumulator a;
        for (std::int64_t i = 0; i < count; ++i) a.add(one_sample(eng));
        acc[static_cast<std::size_t>(b)] = a;
    };
    if (threads == 1 || blocks == 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        int nt = static_cast<int>(std::min<std::int64_t>(threads, blocks));
        pool.reserve(static_cast<std::size_t>(nt));
        for (int k = 0; k < nt; ++k)
            pool.emplace_back([&] {
                for (std::int64_t b = next++; b < blocks; b = next++) run_block(b);
            });
        for (auto& th : pool) th.join();
    }
    MeanAccumulator total;
    for (const auto& a : acc) total.merge(a);
    return total;
}

MomentEstimate to_estimate(const MeanAccumulator& acc, std::uint64_t seed) {
    MomentEstimate est;
    est.value = acc.mean();
    est.std_error = acc.std_error();
    est.n_samples = static_cast<std::int64_t>(acc.n);
    est.seed = seed;
    est.method = EstimateMethod::MC;
    return est;
}

// ---------------------------------------------------------------------------
// Shared validation
// ---------------------------------------------------------------------------

void check_noise_integrability(const NoiseSpec& noise) {
    if (noise.time == TimeKind::Power && noise.gamma >= 1.0)
        fail(ErrorCode::SingularityNotIntegrable,
             "temporal correlation exponent gamma must lie below 1");
    if (noise.space == SpaceKind::Riesz && noise.lambda >= noise.d)
        fail(ErrorCode::SingularityNotIntegrable,
             "spatial singularity order lambda must lie below d");
    validate(noise);
}

Point eval_point(const ChaosKernelSpec& spec) {
    Point x{0.0, 0.0, 0.0};
    if (!spec.x.empty()) {
        if (static_cast<int>(spec.x.size()) != spec.kernel.d)
            fail(ErrorCode::BadUsage, "evaluation point dimension does not match the kernel");
        for (int i = 0; i < spec.kernel.d; ++i) x[static_cast<std::size_t>(i)] = spec.x[i];
    }
    return x;
}

void check_spec(const ChaosKernelSpec& spec) {
    validate(spec.kernel);
    if (spec.t <= 0.0) fail(ErrorCode::NonpositiveTime, "chaos kernel requires t > 0");
    if (spec.n < 0) fail(ErrorCode::BadUsage, "chaos order must be nonnegative");
    eval_point(spec);
}

// ---------------------------------------------------------------------------
// Diagram integral sampler
// ---------------------------------------------------------------------------

struct DiagramContext {
    KernelSpec kernel;
    NoiseSpec noise;
    double t = 1.0;
    Point x{0.0, 0.0, 0.0};
    double initial_value = 1.0;
    int d = 1;

    std::vector<int> sizes;
    std::vector<int> offsets;
    std::array<int, kVertexCap> partner{};
    std::array<int, kVertexCap> edge_of{};
    std::array<int, kVertexCap> edge_low{};
    std::array<int, kVertexCap> edge_high{};
    int n_vertices = 0;
    int n_edges = 0;

    bool w_time = true;
    bool w_space = true;
    bool use_zeta = true;  // cancel covariance factors via displacement proposals
    double gamma = 1.0;
    double edge_time_weight = 1.0;  // colored time: 2 t^{1-gamma} / (1-gamma)
    double zeta_cut = 1.0;          // power-law displacement proposal radius
    double zeta_const = 1.0;        // Riesz normalisation over the cut ball

    DiagramContext(const RowLayout& rows, const Diagram& diag, const ChaosKernelSpec& spec,
                   const NoiseSpec& ns) {
        kernel = spec.kernel;
        noise = ns;
        t = spec.t;
        initial_value = spec.initial_value;
        d = kernel.d;
        check_spec(spec);
        check_noise_integrability(noise);
        if (noise.d != d) fail(ErrorCode::BadUsage, "noise and kernel dimensions differ");
        x = eval_point(spec);

        sizes = rows.sizes;
        offsets = rows.offsets;
        n_vertices = rows.total;
        for (int s : sizes)
            if (s < 1) fail(ErrorCode::BadUsage, "diagram rows must be nonempty");
        if (n_vertices > kVertexCap)
            fail(ErrorCode::DimensionCap, "diagram vertex count exceeds the Monte Carlo cap");
        if (static_cast<int>(diag.edges.size()) * 2 != n_vertices)
            fail(ErrorCode::BadUsage, "diagram is not a perfect matching of the rows");
        n_edges = static_cast<int>(diag.edges.size());

        partner.fill(-1);
        for (int e = 0; e < n_edges; ++e) {
            auto [a, b] = diag.edges[static_cast<std::size_t>(e)];
            if (a < 0 || b < 0 || a >= n_vertices || b >= n_vertices || a == b)
                fail(ErrorCode::BadUsage, "diagram edge out of range");
            if (partner[a] != -1 || partner[b] != -1)
                fail(ErrorCode::BadUsage, "diagram vertex matched twice");
            if (rows.row_of(a) == rows.row_of(b))
                fail(ErrorCode::BadUsage, "diagram edge inside a row");
            partner[a] = b;
            partner[b] = a;
            edge_of[a] = edge_of[b] = e;
            edge_low[e] = std::min(a, b);
            edge_high[e] = std::max(a, b);
        }

        w_time = white_in_time(noise);
        w_space = white_in_space(noise);
        if (!w_time) {
            gamma = noise.gamma;
            edge_time_weight = 2.0 * std::pow(t, 1.0 - gamma) / (1.0 - gamma);
        }
        use_zeta = kernel_has_pointwise_density(kernel);
        if (!w_space) {
            zeta_cut = 32.0 * std::pow(t, 1.0 / scaling_b(kernel));
            if (noise.space == SpaceKind::Riesz)
                zeta_const = surface_area(d) * std::pow(zeta_cut, d - noise.lambda) /
                             (d - noise.lambda);
        }
    }

    double time_base(std::mt19937_64& g, double& q) const {
        // half uniform, half square-root wedge at u = t; matches the terminal
        // chain-gap singularity of the weighted factors in d = 1
        double u;
        if (uniform01(g) < 0.5) {
            u = t * uniform01(g);
        } else {
            double v = uniform01(g);
            u = t * (1.0 - v * v);
        }
        q = 0.5 / t + 0.25 / std::sqrt(t * (t - u));
        return u;
    }

    double sample_zeta(std::mt19937_64& g, Point& z) const {
        z = {0.0, 0.0, 0.0};
        if (noise.space == SpaceKind::Riesz) {
            double r = zeta_cut * std::pow(uniform01(g), 1.0 / (d - noise.lambda));
            Point dir;
            sphere_dir(d, g, dir);
            for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = r * dir[static_cast<std::size_t>(i)];
            return zeta_const;
        }
        double c = 1.0;
        for (int i = 0; i < d; ++i) {
            double li = noise.lambdas[static_cast<std::size_t>(i)];
            double r = zeta_cut * std::pow(uniform01(g), 1.0 / (1.0 - li));
            z[static_cast<std::size_t>(i)] = uniform01(g) < 0.5 ? -r : r;
            c *= 2.0 * std::pow(zeta_cut, 1.0 - li) / (1.0 - li);
        }
        return c;
    }

    double density_at(double g, const Point& from, const Point& to) const {
        std::vector<double> diff(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            diff[static_cast<std::size_t>(i)] =
                from[static_cast<std::size_t>(i)] - to[static_cast<std::size_t>(i)];
        return kernel_value(kernel, g, diff);
    }

    double space_cov_at(const Point& a, const Point& b) const {
        std::vector<double> diff(static_cast<std::size_t>(d));
        bool all_zero = true;
        for (int i = 0; i < d; ++i) {
            diff[static_cast<std::size_t>(i)] =
                a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
            if (diff[static_cast<std::size_t>(i)] != 0.0) all_zero = false;
        }
        if (all_zero) return 0.0;  // measure-zero collision
        return space_cov(noise, diff);
    }

    // One importance-sampled draw of the diagram integrand. Matched pairs
    // share their time variable under white time; under colored time the
    // power-law gap proposal cancels the |t_v - t_w|^{-gamma} factor. The
    // first visit to a matched pair samples the row-chain slice exactly; the
    // second visit either jumps by a power-law displacement (cancelling the
    // spatial covariance) and weights the chain density, or, for kernels
    // without a pointwise density, samples the chain and weights the
    // covariance directly.
    double sample(std::mt19937_64& eng) const {
        double w = 1.0;
        std::array<double, kVertexCap> tau{};

        if (w_time) {
            // sorted edge times from squared-uniform gaps: the proposal
            // carries the same g^{-1/2} factors as the weighted heat chains
            std::array<double, kVertexCap / 2> gap{}, v{};
            double total = 0.0;
            for (int j = 0; j < n_edges; ++j) {
                double u = uniform01(eng);
                gap[static_cast<std::size_t>(j)] = t * u * u;
                total += gap[static_cast<std::size_t>(j)];
                w *= 2.0 * std::sqrt(t * gap[static_cast<std::size_t>(j)]);
            }
            if (total >= t) return 0.0;
            double cum = t;
            for (int j = n_edges - 1; j >= 0; --j) {
                cum -= gap[static_cast<std::size_t>(j)];
                v[static_cast<std::size_t>(j)] = cum;
            }
            std::array<int, kVertexCap / 2> perm{};
            for (int j = 0; j < n_edges; ++j) perm[static_cast<std::size_t>(j)] = j;
            for (int j = n_edges - 1; j > 0; --j) {
                int k = static_cast<int>(eng() % static_cast<std::uint64_t>(j + 1));
                std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(k)]);
            }
            w *= factorial(n_edges);  // number of order sectors
            for (int e = 0; e < n_edges; ++e) {
                double te = v[static_cast<std::size_t>(perm[static_cast<std::size_t>(e)])];
                tau[static_cast<std::size_t>(edge_low[e])] = te;
                tau[static_cast<std::size_t>(edge_high[e])] = te;
            }
        } else {
            for (int e = 0; e < n_edges; ++e) {
                double q;
                double u = time_base(eng, q);
                w /= q;
                double dlt = t * std::pow(uniform01(eng), 1.0 / (1.0 - gamma));
                double s = uniform01(eng) < 0.5 ? u - dlt : u + dlt;
                if (s <= 0.0 || s >= t) return 0.0;
                w *= edge_time_weight;
                tau[static_cast<std::size_t>(edge_high[e])] = u;
                tau[static_cast<std::size_t>(edge_low[e])] = s;
            }
        }

        std::array<Point, kVertexCap> pos{};
        std::array<bool, kVertexCap> known{};
        std::array<bool, kVertexCap / 2> zeta_done{};
        known.fill(false);
        zeta_done.fill(false);

        for (std::size_t r = 0; r < sizes.size(); ++r) {
            int n = sizes[r];
            std::array<int, kVertexCap> idx{};
            for (int j = 0; j < n; ++j) idx[static_cast<std::size_t>(j)] = offsets[r] + j;
            std::sort(idx.begin(), idx.begin() + n,
                      [&](int a, int b) { return tau[static_cast<std::size_t>(a)] < tau[static_cast<std::size_t>(b)]; });
            Point cur = x;
            double cur_t = t;
            for (int j = n - 1; j >= 0; --j) {
                int vtx = idx[static_cast<std::size_t>(j)];
                double g = cur_t - tau[static_cast<std::size_t>(vtx)];
                if (g <= 0.0) return 0.0;
                int pv = partner[static_cast<std::size_t>(vtx)];
                if (known[static_cast<std::size_t>(vtx)]) {
                    // white space: the matched pair shares this position
                    w *= density_at(g, cur, pos[static_cast<std::size_t>(vtx)]);
                } else if (!w_space && use_zeta && known[static_cast<std::size_t>(pv)]) {
                    Point z;
                    w *= sample_zeta(eng, z);
                    Point p = pos[static_cast<std::size_t>(pv)];
                    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] += z[static_cast<std::size_t>(i)];
                    pos[static_cast<std::size_t>(vtx)] = p;
                    known[static_cast<std::size_t>(vtx)] = true;
                    zeta_done[static_cast<std::size_t>(edge_of[static_cast<std::size_t>(vtx)])] = true;
                    w *= density_at(g, cur, p);
                } else {
                    Point dx;
                    w *= chain_step(kernel, g, eng, dx);
                    Point p = cur;
                    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] += dx[static_cast<std::size_t>(i)];
                    pos[static_cast<std::size_t>(vtx)] = p;
                    known[static_cast<std::size_t>(vtx)] = true;
                    if (w_space) {
                        pos[static_cast<std::size_t>(pv)] = p;
                        known[static_cast<std::size_t>(pv)] = true;
                    }
                }
                cur = pos[static_cast<std::size_t>(vtx)];
                cur_t = tau[static_cast<std::size_t>(vtx)];
            }
            w *= initial_value / factorial(n);
        }

        if (!w_space && !use_zeta) {
            for (int e = 0; e < n_edges; ++e)
                if (!zeta_done[static_cast<std::size_t>(e)])
                    w *= space_cov_at(pos[static_cast<std::size_t>(edge_low[e])],
                                      pos[static_cast<std::size_t>(edge_high[e])]);
        }
        return std::isfinite(w) ? w : 0.0;
    }
};

// Exact-weight estimator for the white-white d=1 heat chaos norm: mapping the
// chain gaps through u_j = t U_j^2 makes every factor constant, so
// Phi_n = (t/pi)^{n/2} Vol{ U in (0,1)^n : sum U_j^2 < 1 }.
MomentEstimate phi_white_white_heat(const ChaosKernelSpec& spec, std::int64_t n_samples,
                                    std::uint64_t seed, int threads) {
    const int n = spec.n;
    const double scale = std::pow(spec.t / kPi, 0.5 * n) * sq(spec.initial_value);
    MeanAccumulator acc = run_blocks(n_samples, seed, threads, [n, scale](std::mt19937_64& g) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += sq(uniform01(g));
        return s < 1.0 ? scale : 0.0;
    });
    return to_estimate(acc, seed);
}

MomentEstimate sum_over_diagrams(const std::vector<int>& sizes, const ChaosKernelSpec& spec,
                                 const NoiseSpec& noise, std::int64_t n_samples,
                                 std::uint64_t seed, int threads) {
    RowLayout rows(sizes);
    std::vector<Diagram> diagrams = enumerate_admissible(sizes);
    if (diagrams.empty()) fail(ErrorCode::BadUsage, "no admissible diagram for these rows");
    std::int64_t per = std::max<std::int64_t>(
        n_samples / static_cast<std::int64_t>(diagrams.size()), 1);
    MomentEstimate out;
    out.method = EstimateMethod::MC;
    out.seed = seed;
    double var = 0.0;
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
        MomentEstimate est = eval_F_D(rows, diagrams[i], spec, noise, per,
                                      derive_seed(seed, i), threads);
        out.value += est.value;
        var += sq(est.std_error);
        out.n_samples += est.n_samples;
    }
    out.std_error = std::sqrt(var);
    return out;
}

// Envelope log-term of the chaos series, log[C^n t^{n(hbar+2H)} / (n!)^{hbar+1}].
double envelope_log_term(int n, double log_c, double hb, double hurst, double t) {
    return n * (log_c + (hb + 2.0 * hurst) * std::log(t)) -
           (hb + 1.0) * std::lgamma(n + 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Chaos kernel evaluation
// ---------------------------------------------------------------------------

double eval_f_n(const ChaosKernelSpec& spec, const std::vector<double>& times,
                const std::vector<std::vector<double>>& points) {
    check_spec(spec);
    if (!kernel_has_pointwise_density(spec.kernel))
        fail(ErrorCode::MeasureKernelNoDensity,
             "wave d=3 is measure-valued; pointwise chaos kernels are unavailable");
    const int n = spec.n;
    if (n < 1) fail(ErrorCode::BadUsage, "chaos order must be at least 1");
    if (static_cast<int>(times.size()) != n || static_cast<int>(points.size()) != n)
        fail(ErrorCode::BadUsage, "need one time and one point per chaos order");
    const int d = spec.kernel.d;
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d)
            fail(ErrorCode::BadUsage, "point dimension does not match the kernel");

    // ordered-simplex indicator
    for (int j = 0; j < n; ++j) {
        if (times[static_cast<std::size_t>(j)] <= 0.0 ||
            times[static_cast<std::size_t>(j)] >= spec.t)
            return 0.0;
        if (j > 0 && times[static_cast<std::size_t>(j)] <= times[static_cast<std::size_t>(j - 1)])
            return 0.0;
    }

    Point x = eval_point(spec);
    std::vector<double> cur(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
    double cur_t = spec.t;
    double val = spec.initial_value;
    std::vector<double> diff(static_cast<std::size_t>(d));
    for (int j = n - 1; j >= 0; --j) {
        double g = cur_t - times[static_cast<std::size_t>(j)];
        for (int i = 0; i < d; ++i)
            diff[static_cast<std::size_t>(i)] =
                cur[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        val *= kernel_value(spec.kernel, g, diff);
        cur = points[static_cast<std::size_t>(j)];
        cur_t = times[static_cast<std::size_t>(j)];
    }
    return val;
}

double eval_f_n_symmetrized(const ChaosKernelSpec& spec, const std::vector<double>& times,
                            const std::vector<std::vector<double>>& points) {
    check_spec(spec);
    const int n = spec.n;
    if (static_cast<int>(times.size()) != n || static_cast<int>(points.size()) != n)
        fail(ErrorCode::BadUsage, "need one time and one point per chaos order");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return times[static_cast<std::size_t>(a)] < times[static_cast<std::size_t>(b)]; });
    std::vector<double> ts(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> ps(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        ts[static_cast<std::size_t>(j)] = times[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
        ps[static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    }
    // only the sorted ordering can lie on the simplex
    return eval_f_n(spec, ts, ps) / factorial(n);
}

// ---------------------------------------------------------------------------
// Chaos second moments and diagram integrals
// ---------------------------------------------------------------------------

MomentEstimate phi_n(const ChaosKernelSpec& spec, const NoiseSpec& noise,
                     std::int64_t n_samples, std::uint64_t seed, int threads) {
    check_spec(spec);
    check_noise_integrability(noise);
    if (noise.d != spec.kernel.d) fail(ErrorCode::BadUsage, "noise and kernel dimensions differ");
    if (spec.n < 1) fail(ErrorCode::BadUsage, "chaos order must be at least 1");

    if (white_in_time(noise) && white_in_space(noise) &&
        spec.kernel.kind == KernelKind::Heat && spec.kernel.d == 1)
        return phi_white_white_heat(spec, n_samples, seed, threads);

    if (2 * spec.n > kVertexCap)
        fail(ErrorCode::DimensionCap, "chaos order exceeds the diagram Monte Carlo cap");
    return sum_over_diagrams({spec.n, spec.n}, spec, noise, n_samples, seed, threads);
}

MomentEstimate eval_F_D(const RowLayout& rows, const Diagram& diag,
                        const ChaosKernelSpec& spec, const NoiseSpec& noise,
                        std::int64_t n_samples, std::uint64_t seed, int threads) {
    DiagramContext ctx(rows, diag, spec, noise);
    MeanAccumulator acc = run_blocks(n_samples, seed, threads,
                                     [&ctx](std::mt19937_64& g) { return ctx.sample(g); });
    return to_estimate(acc, seed);
}

TruncatedMoment pth_moment_truncated(int p, const ChaosKernelSpec& spec,
                                     const NoiseSpec& noise, int n_max,
                                     std::int64_t n_samples, std::uint64_t seed,
                                     int threads) {
    check_spec(spec);
    check_noise_integrability(noise);
    if (noise.d != spec.kernel.d) fail(ErrorCode::BadUsage, "noise and kernel dimensions differ");
    if (p != 1 && p != 2 && p != 4)
        fail(ErrorCode::UnsupportedParameter, "truncated moments cover p in {1, 2, 4}");
    if (n_max < 0) fail(ErrorCode::BadUsage, "truncation order must be nonnegative");

    TruncatedMoment out;
    out.n_max = n_max;
    out.estimate.seed = seed;
    out.estimate.method = EstimateMethod::ClosedForm;

    // centred chaos terms: E[u] = I_0 exactly
    if (p == 1) {
        out.estimate.value = spec.initial_value;
        return out;
    }
    if (p * n_max > kVertexCap)
        fail(ErrorCode::DimensionCap, "p * n_max exceeds the diagram Monte Carlo cap");

    const double i0 = spec.initial_value;
    double var = 0.0;
    std::vector<double> phi_values(static_cast<std::size_t>(n_max) + 1, 0.0);

    if (p == 2) {
        out.estimate.value = sq(i0);
        for (int n = 1; n <= n_max; ++n) {
            ChaosKernelSpec term = spec;
            term.n = n;
            MomentEstimate est =
                phi_n(term, noise, n_samples, derive_seed(seed, static_cast<std::uint64_t>(n)), threads);
            phi_values[static_cast<std::size_t>(n)] = est.value;
            out.estimate.value += est.value;
            var += sq(est.std_error);
            out.estimate.n_samples += est.n_samples;
            out.estimate.method = EstimateMethod::MC;
        }
    } else {
        out.estimate.value = 0.0;
        std::uint64_t term_index = 0;
        for (int n1 = 0; n1 <= n_max; ++n1)
            for (int n2 = 0; n2 <= n_max; ++n2)
                for (int n3 = 0; n3 <= n_max; ++n3)
                    for (int n4 = 0; n4 <= n_max; ++n4) {
                        int total = n1 + n2 + n3 + n4;
                        std::vector<int> parts;
                        for (int v : {n1, n2, n3, n4})
                            if (v > 0) parts.push_back(v);
                        if (total == 0) {
                            out.estimate.value += sq(sq(i0));
                            continue;
                        }
                        if (total % 2 != 0 || parts.size() < 2) continue;
                        if (count_admissible(parts) == 0) continue;
                        ChaosKernelSpec term = spec;
                        MomentEstimate est = sum_over_diagrams(
                            parts, term, noise, n_samples,
                            derive_seed(seed, 1000 + term_index), threads);
                        ++term_index;
                        double outer = std::pow(i0, 4.0 - static_cast<double>(parts.size()));
                        out.estimate.value += outer * est.value;
                        var += sq(outer * est.std_error);
                        out.estimate.n_samples += est.n_samples;
                        out.estimate.method = EstimateMethod::MC;
                    }
        // reference second moments for the tail fit
        for (int n = 1; n <= n_max; ++n) {
            ChaosKernelSpec term = spec;
            term.n = n;
            MomentEstimate est = phi_n(term, noise, std::max<std::int64_t>(n_samples / 8, 2048),
                                       derive_seed(seed, 500 + static_cast<std::uint64_t>(n)), threads);
            phi_values[static_cast<std::size_t>(n)] = est.value;
        }
    }
    out.estimate.std_error = std::sqrt(var);

    // Tail from the chaos-norm envelope Phi_n <= C^n t^{n(hbar+2H)} / (n!)^{hbar+1}
    // with C fitted on the retained terms (defaulting to 1 when none are usable).
    const double hb = hbar_exponent(spec.kernel, lambda_total(noise));
    const double hurst = white_in_time(noise) ? 0.5 : 1.0 - noise.gamma / 2.0;
    if (hb + 1.0 <= 0.0) {
        out.tail_estimate = std::numeric_limits<double>::infinity();
        return out;
    }
    double log_c = 0.0;
    bool fitted = false;
    for (int n = 1; n <= n_max; ++n) {
        double v = phi_values[static_cast<std::size_t>(n)];
        if (v <= 0.0) continue;
        double c = (std::log(v) + (hb + 1.0) * std::lgamma(n + 1.0)) / n -
                   (hb + 2.0 * hurst) * std::log(spec.t);
        log_c = fitted ? std::max(log_c, c) : c;
        fitted = true;
    }
    if (!fitted) log_c = 0.0;

    if (p == 2) {
        double tail = 0.0;
        for (int n = n_max + 1; n <= 500; ++n) {
            double lt = envelope_log_term(n, log_c, hb, hurst, spec.t);
            if (lt < -45.0 && n > n_max + 4) break;
            tail += std::exp(lt);
        }
        out.tail_estimate = tail;
    } else {
        // fourth moment via the norm series (sum_n (p-1)^{n/2} ||I_n||)^p
        double kept = std::abs(i0), all = std::abs(i0);
        for (int n = 1; n <= 500; ++n) {
            double b = std::exp(0.5 * envelope_log_term(n, log_c, hb, hurst, spec.t)) *
                       std::pow(3.0, 0.5 * n);
            if (n <= n_max) kept += b;
            all += b;
            if (b < 1e-18 * all && n > n_max + 4) break;
        }
        out.tail_estimate = std::pow(all, 4) - std::pow(kept, 4);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Moment lower-bound machinery
// ---------------------------------------------------------------------------

LowerBoundPlan make_lower_bound_plan(int p, int m, double eps, double t, double b) {
    if (p < 2 || p % 2 != 0)
        fail(ErrorCode::ConstraintViolated, "lower-bound plans need even p >= 2");
    if (m < 1) fail(ErrorCode::ConstraintViolated, "lower-bound plans need m >= 1");
    if ((2 * m) % p != 0)
        fail(ErrorCode::ConstraintViolated, "p must divide 2m so that m_p = 2m/p is integral");
    if (!(eps > 0.0) || eps > 1.0)
        fail(ErrorCode::RadiusOutOfRange, "localisation radius must lie in (0, 1]");
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "lower-bound plans need t > 0");
    if (!(b > 0.0)) fail(ErrorCode::ConstraintViolated, "scaling exponent b must be positive");

    LowerBoundPlan plan;
    plan.p = p;
    plan.m = m;
    plan.eps = eps;
    plan.t = t;
    plan.b = b;
    plan.m_p = 2 * m / p;
    plan.L = t / (2.0 * (plan.m_p + 1));
    for (int j = 1; j <= plan.m_p; ++j) plan.centers.push_back(j * plan.L);

    const double clock = std::pow(eps, b);
    // gap window: interior gaps live in [t/(4(m_p+1)), t/(m_p+1)]; the upper
    // edge must not exceed the small-ball clock eps^b
    if (t / (plan.m_p + 1) > clock)
        fail(ErrorCode::ConstraintViolated,
             "time gaps exceed the small-ball clock: t/(m_p+1) > eps^b");
    if (static_cast<double>(m) < p * t / (2.0 * clock))
        fail(ErrorCode::ConstraintViolated,
             "chaos order too small for the window count: m < p t / (2 eps^b)");
    return plan;
}

LowerBoundReport lower_bound_value(const LowerBoundPlan& plan, double a, double b,
                                   double lambda, double gamma) {
    if (!(a > -0.5)) fail(ErrorCode::ConstraintViolated, "scaling requires a > -1/2");
    if (!(b > 0.0)) fail(ErrorCode::ConstraintViolated, "scaling requires b > 0");
    if (!(lambda > 0.0)) fail(ErrorCode::ConstraintViolated, "spatial order must be positive");
    if (!(gamma > 0.0) || gamma > 1.0)
        fail(ErrorCode::ConstraintViolated, "temporal exponent must lie in (0, 1]");
    const double D = b * (2.0 * a + 1.0) - lambda;
    if (!(D > 0.0))
        fail(ErrorCode::ConstraintViolated, "growth denominator b(2a+1) - lambda must be positive");

    const double m = plan.m, t = plan.t, eps = plan.eps, p = plan.p;
    LowerBoundReport rep;
    rep.log_value = std::lgamma(m + 1.0) - m * lambda * std::log(eps) -
                    m * gamma * std::log(t) +
                    2.0 * m * (a + 1.0) * (std::log(t) + std::log(p) - std::log(m));
    rep.m0 = std::pow(std::pow(eps, -lambda) * std::pow(t, 2.0 * (a + 1.0) - gamma) *
                          std::pow(p, 2.0 * (a + 1.0)),
                      1.0 / (2.0 * a + 1.0));
    rep.eps_tp = std::pow(t, -(1.0 - gamma) / D) * std::pow(p, -1.0 / D);
    return rep;
}

RationalPair lower_bound_optimized_exponents(const Rational& a, const Rational& b,
                                             const Rational& lambda, const Rational& gamma) {
    const Rational two_a1 = 2 * a + 1;
    if (b <= 0) fail(ErrorCode::ConstraintViolated, "scaling requires b > 0");
    if (gamma <= 0 || gamma > 1)
        fail(ErrorCode::ConstraintViolated, "temporal exponent must lie in (0, 1]");
    const Rational D = b * two_a1 - lambda;
    if (D <= 0)
        fail(ErrorCode::ConstraintViolated, "growth denominator b(2a+1) - lambda must be positive");
    // log of the optimised bound is proportional to m_0(eps_{t,p}); its t and
    // p exponents come from substituting eps = eps_{t,p} into m_0(eps)
    RationalPair out;
    out.t_exp = (lambda * (1 - gamma) + D * (2 * a + 2 - gamma)) / (D * two_a1);
    out.p_exp = (lambda + 2 * (a + 1) * D) / (D * two_a1);
    return out;
}

double restricted_integral_closed_form(const LowerBoundPlan& plan) {
    return std::pow(plan.L / 2.0, static_cast<double>(plan.m_p * plan.p));
}

MomentEstimate restricted_integral_mc(const LowerBoundPlan& plan, std::int64_t n_samples,
                                      std::uint64_t seed, int threads) {
    const int k = plan.m_p * plan.p;
    if (k > kVertexCap)
        fail(ErrorCode::DimensionCap, "p * m_p exceeds the Monte Carlo cap");
    const double L = plan.L;
    const double hit_value = std::pow(L, static_cast<double>(k));
    const int p = plan.p, mp = plan.m_p;
    const std::vector<double> centers = plan.centers;

    MeanAccumulator acc =
        run_blocks(n_samples, seed, threads, [&](std::mt19937_64& g) {
            // doubled windows of width L around each centre make every
            // indicator a fair coin; disjoint ascending windows imply the
            // simplex ordering automatically
            for (int l = 0; l < p; ++l) {
                double prev = -1.0;
                for (int j = 0; j < mp; ++j) {
                    double u = centers[static_cast<std::size_t>(j)] + (uniform01(g) - 0.5) * L;
                    if (std::abs(u - centers[static_cast<std::size_t>(j)]) > 0.25 * L) return 0.0;
                    if (u <= prev)
                        fail(ErrorCode::ConstraintViolated, "window ordering violated");
                    prev = u;
                }
            }
            return hit_value;
        });
    return to_estimate(acc, seed);
}

}  // namespace chaosmoments
