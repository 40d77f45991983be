#include "chaosmoments/diagrams.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

namespace {

constexpr int kCountCap = 24;
constexpr int kEnumCap = 16;

void check_sizes(const std::vector<int>& sizes, int cap) {
    int total = 0;
    for (int s : sizes) {
        if (s < 0) fail(ErrorCode::UnsupportedParameter, "row sizes must be nonnegative");
        total += s;
    }
    if (total > cap) fail(ErrorCode::CapExceeded, "total vertex count exceeds the cap");
}

// falling factorial n (n-1) ... (n-k+1): ordered endpoint choices within a row
std::int64_t falling(int n, int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= n - i;
    return p;
}

std::int64_t binom(int n, int k) {
    std::int64_t p = 1;
    for (int i = 1; i <= k; ++i) p = p * (n - k + i) / i;
    return p;
}

using Memo = std::map<std::vector<int>, std::int64_t>;

std::int64_t count_rec(std::vector<int> sizes, Memo& memo);

// distribute the n1 vertices of the first row over the remaining rows:
// choose k_j targets per row (multinomial over the row-1 vertices, ordered
// endpoint choices within each target row), then match what is left
std::int64_t distribute(const std::vector<int>& rest, std::vector<int>& take, std::size_t j,
                        int remaining, Memo& memo) {
    if (j == rest.size()) {
        if (remaining != 0) return 0;
        std::vector<int> next(rest);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] -= take[i];
        return count_rec(next, memo);
    }
    std::int64_t total = 0;
    int cap = std::min(rest[j], remaining);
    for (int k = 0; k <= cap; ++k) {
        take[j] = k;
        std::int64_t sub = distribute(rest, take, j + 1, remaining - k, memo);
        if (sub != 0)
            total += binom(remaining, k) * falling(rest[j], k) * sub;
    }
    take[j] = 0;
    return total;
}

std::int64_t count_rec(std::vector<int> sizes, Memo& memo) {
    sizes.erase(std::remove(sizes.begin(), sizes.end(), 0), sizes.end());
    if (sizes.empty()) return 1;
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    auto it = memo.find(sizes);
    if (it != memo.end()) return it->second;
    std::vector<int> rest(sizes.begin() + 1, sizes.end());
    int n1 = sizes[0];
    int avail = std::accumulate(rest.begin(), rest.end(), 0);
    std::int64_t result = 0;
    if (avail >= n1) {
        std::vector<int> take(rest.size(), 0);
        result = distribute(rest, take, 0, n1, memo);
    }
    memo[sizes] = result;
    return result;
}

void enumerate_rec(const RowLayout& layout, std::vector<int>& partner,
                   std::vector<std::pair<int, int>>& edges, std::vector<Diagram>& out) {
    int v = -1;
    for (int i = 0; i < layout.total; ++i)
        if (partner[i] < 0) {
            v = i;
            break;
        }
    if (v < 0) {
        out.push_back(Diagram{edges});
        return;
    }
    int row_v = layout.row_of(v);
    for (int u = v + 1; u < layout.total; ++u) {
        if (partner[u] >= 0 || layout.row_of(u) == row_v) continue;
        partner[v] = u;
        partner[u] = v;
        edges.emplace_back(v, u);
        enumerate_rec(layout, partner, edges, out);
        edges.pop_back();
        partner[v] = -1;
        partner[u] = -1;
    }
}

}  // namespace

RowLayout::RowLayout(const std::vector<int>& s) : sizes(s) {
    offsets.reserve(s.size());
    for (int n : s) {
        offsets.push_back(total);
        total += n;
    }
}

int RowLayout::row_of(int v) const {
    int r = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (v < offsets[i] + sizes[i]) return int(i);
        r = int(i);
    }
    return r;
}

std::int64_t count_admissible(const std::vector<int>& sizes) {
    check_sizes(sizes, kCountCap);
    int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    if (total % 2 != 0) return 0;
    Memo memo;
    return count_rec(sizes, memo);
}

std::vector<Diagram> enumerate_admissible(const std::vector<int>& sizes) {
    check_sizes(sizes, kEnumCap);
    int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    if (total % 2 != 0)
        fail(ErrorCode::OddVertexCount, "cannot match an odd number of vertices");
    RowLayout layout(sizes);
    std::vector<int> partner(layout.total, -1);
    std::vector<std::pair<int, int>> edges;
    std::vector<Diagram> out;
    enumerate_rec(layout, partner, edges, out);
    return out;
}

std::vector<Diagram> enumerate_constrained(int p, int m_p) {
    if (p <= 0 || p % 2 != 0)
        fail(ErrorCode::UnsupportedParameter, "p must be a positive even integer");
    if (m_p <= 0) fail(ErrorCode::UnsupportedParameter, "m_p must be positive");
    if (p * m_p > kEnumCap) fail(ErrorCode::CapExceeded, "total vertex count exceeds the cap");
    int m = p / 2 * m_p;  // upper vertices are ids 0..m-1, lower are m..2m-1
    std::vector<int> target(m);
    std::iota(target.begin(), target.end(), m);
    std::vector<Diagram> out;
    do {
        Diagram d;
        d.edges.reserve(m);
        for (int i = 0; i < m; ++i) d.edges.emplace_back(i, target[i]);
        out.push_back(std::move(d));
    } while (std::next_permutation(target.begin(), target.end()));
    return out;
}

std::vector<std::pair<VertexRef, VertexRef>> edge_factors(const RowLayout& layout,
                                                          const Diagram& d) {
    auto label = [&](int v) {
        if (v < 0 || v >= layout.total) fail(ErrorCode::BadUsage, "vertex id out of range");
        int r = layout.row_of(v);
        return VertexRef{r + 1, v - layout.offsets[r] + 1};
    };
    std::vector<std::pair<VertexRef, VertexRef>> out;
    out.reserve(d.edges.size());
    for (const auto& [a, b] : d.edges) {
        int lo = std::min(a, b), hi = std::max(a, b);
        if (lo == hi || layout.row_of(lo) == layout.row_of(hi))
            fail(ErrorCode::BadUsage, "edge does not join two distinct rows");
        out.emplace_back(label(lo), label(hi));
    }
    return out;
}

}  // namespace chaosmoments
