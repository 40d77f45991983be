#include "chaosmoments/fd_oracle.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/rng.hpp"

namespace chaosmoments {
namespace {

constexpr int kLanes = 8;

// Precomputed cyclic tridiagonal solver for A = I - r * circulant(1,-2,1):
// Thomas factorization of a corner-free tridiagonal B plus a rank-one
// Sherman-Morrison correction, A = B + u v^T.
struct CyclicSolver {
    int n = 0;
    double r = 0.0;
    double v_last = 0.0;   // v = (1, 0, ..., 0, v_last)
    double inv_denom = 0.0;
    std::vector<double> m;      // forward elimination multipliers
    std::vector<double> inv_w;  // inverse pivots
    std::vector<double> q;      // B^{-1} u

    CyclicSolver(int n_cells, double r_) : n(n_cells), r(r_) {
        const double d0 = 1.0 + 2.0 * r;
        const double e = -r;
        const double gamma = -d0;
        std::vector<double> b(static_cast<std::size_t>(n), d0);
        b[0] = d0 - gamma;
        b[static_cast<std::size_t>(n - 1)] = d0 - e * e / gamma;

        m.assign(static_cast<std::size_t>(n), 0.0);
        inv_w.assign(static_cast<std::size_t>(n), 0.0);
        double w = b[0];
        inv_w[0] = 1.0 / w;
        for (int i = 1; i < n; ++i) {
            m[static_cast<std::size_t>(i)] = e * inv_w[static_cast<std::size_t>(i - 1)];
            w = b[static_cast<std::size_t>(i)] - m[static_cast<std::size_t>(i)] * e;
            inv_w[static_cast<std::size_t>(i)] = 1.0 / w;
        }

        q.assign(static_cast<std::size_t>(n), 0.0);
        q[0] = gamma;
        q[static_cast<std::size_t>(n - 1)] = e;
        solve_single(q.data());
        v_last = e / gamma;
        inv_denom = 1.0 / (1.0 + q[0] + v_last * q[static_cast<std::size_t>(n - 1)]);
    }

    void solve_single(double* f) const {
        for (int i = 1; i < n; ++i)
            f[i] -= m[static_cast<std::size_t>(i)] * f[i - 1];
        f[n - 1] *= inv_w[static_cast<std::size_t>(n - 1)];
        for (int i = n - 2; i >= 0; --i)
            f[i] = (f[i] + r * f[i + 1]) * inv_w[static_cast<std::size_t>(i)];
    }
};

// One semi-implicit step for ACT interleaved lanes: multiply by the noise
// factors, then solve the cyclic system in place.
template <int ACT>
void step_lanes(const CyclicSolver& sv, const std::uint64_t* __restrict wbuf,
                const double* __restrict u, double* __restrict f, double fm, double df) {
    const int n = sv.n;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t* w = wbuf + (i >> 6) * kLanes;
        const int s = i & 63;
        const double* ui = u + i * kLanes;
        double* fi = f + i * kLanes;
        for (int l = 0; l < ACT; ++l)
            fi[l] = ui[l] * (fm + df * static_cast<double>((w[l] >> s) & 1u));
    }
    const double* __restrict mm = sv.m.data();
    const double* __restrict iw = sv.inv_w.data();
    const double* __restrict q = sv.q.data();
    const double r = sv.r;
    for (int i = 1; i < n; ++i) {
        const double mi = mm[i];
        double* row = f + i * kLanes;
        const double* prev = row - kLanes;
        for (int l = 0; l < ACT; ++l) row[l] -= mi * prev[l];
    }
    {
        const double wlast = iw[n - 1];
        double* row = f + (n - 1) * kLanes;
        for (int l = 0; l < ACT; ++l) row[l] *= wlast;
    }
    for (int i = n - 2; i >= 0; --i) {
        const double wi = iw[i];
        double* row = f + i * kLanes;
        const double* next = row + kLanes;
        for (int l = 0; l < ACT; ++l) row[l] = (row[l] + r * next[l]) * wi;
    }
    double s[ACT];
    const double* last = f + (n - 1) * kLanes;
    for (int l = 0; l < ACT; ++l) s[l] = (f[l] + sv.v_last * last[l]) * sv.inv_denom;
    for (int i = 0; i < n; ++i) {
        const double qi = q[i];
        double* row = f + i * kLanes;
        for (int l = 0; l < ACT; ++l) row[l] -= s[l] * qi;
    }
}

struct PathStats {
    MeanAccumulator m1, m2, m4;
};

}  // namespace

FdOracleResult fd_oracle_she(double t, double dx, double dt, std::int64_t n_paths,
                             std::uint64_t seed, double noise_amp, double domain_half,
                             int threads) {
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "simulation horizon must be positive");
    if (!(dx > 0.0) || !(dt > 0.0)) fail(ErrorCode::BadUsage, "grid steps must be positive");
    if (n_paths < 1) fail(ErrorCode::BadUsage, "path count must be positive");
    if (threads < 1 || threads > 64) fail(ErrorCode::BadUsage, "thread count out of range");
    if (!(noise_amp >= 0.0)) fail(ErrorCode::BadUsage, "noise amplitude must be nonnegative");
    if (dt > 0.5 * dx * dx * (1.0 + 1e-12))
        fail(ErrorCode::UnstableDiscretization, "need dt <= dx^2 / 2");
    if (domain_half < 4.0 * std::sqrt(t) * (1.0 - 1e-12))
        fail(ErrorCode::UnstableDiscretization,
             "periodic domain too small: need domain_half >= 4 sqrt(t)");
    const double cells = 2.0 * domain_half / dx;
    const int n = static_cast<int>(std::llround(cells));
    if (n < 8 || std::abs(n * dx - 2.0 * domain_half) > 1e-9 * domain_half)
        fail(ErrorCode::UnstableDiscretization,
             "domain must hold a whole number of cells of width dx");

    const auto n_steps = static_cast<std::int64_t>(std::ceil(t / dt - 1e-12));
    const double dt_eff = t / static_cast<double>(n_steps);
    const double r = 0.5 * dt_eff / (dx * dx);
    const double amp_step = noise_amp * std::sqrt(dt_eff / dx);
    const double fm = 1.0 - amp_step;
    const double df = 2.0 * amp_step;
    const CyclicSolver solver(n, r);
    const int words = (n + 63) / 64;

    const std::int64_t blocks = (n_paths + kLanes - 1) / kLanes;
    std::vector<PathStats> stats(static_cast<std::size_t>(blocks));

    auto run_block = [&](std::int64_t blk) {
        const int act =
            static_cast<int>(std::min<std::int64_t>(kLanes, n_paths - blk * kLanes));
        std::mt19937_64 eng[kLanes];
        for (int l = 0; l < act; ++l)
            eng[l] = make_engine(seed, static_cast<std::uint64_t>(blk * kLanes + l));

        std::vector<double> u(static_cast<std::size_t>(n) * kLanes, 1.0);
        std::vector<double> rhs(static_cast<std::size_t>(n) * kLanes, 0.0);
        std::vector<std::uint64_t> wbuf(static_cast<std::size_t>(words) * kLanes, 0);

        for (std::int64_t step = 0; step < n_steps; ++step) {
            for (int l = 0; l < act; ++l)
                for (int w = 0; w < words; ++w)
                    wbuf[static_cast<std::size_t>(w) * kLanes + static_cast<std::size_t>(l)] =
                        eng[l]();
            switch (act) {
                case 8: step_lanes<8>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                case 7: step_lanes<7>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                case 6: step_lanes<6>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                case 5: step_lanes<5>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                case 4: step_lanes<4>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                case 3: step_lanes<3>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                case 2: step_lanes<2>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
                default: step_lanes<1>(solver, wbuf.data(), u.data(), rhs.data(), fm, df); break;
            }
            std::swap(u, rhs);
        }

        PathStats ps;
        for (int l = 0; l < act; ++l) {
            double s1 = 0.0, s2 = 0.0, s4 = 0.0;
            for (int i = 0; i < n; ++i) {
                const double v = u[static_cast<std::size_t>(i) * kLanes + static_cast<std::size_t>(l)];
                const double v2 = v * v;
                s1 += v;
                s2 += v2;
                s4 += v2 * v2;
            }
            ps.m1.add(s1 / n);
            ps.m2.add(s2 / n);
            ps.m4.add(s4 / n);
        }
        stats[static_cast<std::size_t>(blk)] = ps;
    };

    if (threads == 1 || blocks == 1) {
        for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        const int nt = static_cast<int>(std::min<std::int64_t>(threads, blocks));
        pool.reserve(static_cast<std::size_t>(nt));
        for (int k = 0; k < nt; ++k)
            pool.emplace_back([&] {
                for (std::int64_t b = next++; b < blocks; b = next++) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    PathStats total;
    for (const auto& ps : stats) {
        total.m1.merge(ps.m1);
        total.m2.merge(ps.m2);
        total.m4.merge(ps.m4);
    }

    FdOracleResult out;
    out.mean = total.m1.mean();
    out.mean_se = total.m1.std_error();
    out.second = total.m2.mean();
    out.second_se = total.m2.std_error();
    out.fourth = total.m4.mean();
    out.fourth_se = total.m4.std_error();
    out.n_paths = n_paths;
    out.seed = seed;
    return out;
}

}  // namespace chaosmoments
