#include "raonet/centrality.hpp"

#include "raonet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace raonet::centrality {

namespace {

constexpr double kLengthTolerance = 1e-9;

// Loop-free CSR in both directions with mapped lengths; the accumulation
// phase scans in-neighbors to recognize predecessors, so no predecessor
// lists are stored.
struct LengthGraph {
    std::size_t n;
    std::vector<std::size_t> out_off, in_off;
    std::vector<std::uint32_t> out_node, in_node;
    std::vector<double> out_len, in_len;
};

double map_length(LengthMode mode, double weight, double max_weight) {
    switch (mode) {
    case LengthMode::inverse:
        return 1.0 / weight;
    case LengthMode::unit:
        return 1.0;
    case LengthMode::max_plus_one_minus:
        return max_weight + 1.0 - weight;
    }
    return 1.0;
}

LengthGraph make_length_graph(const graph::CitationNetwork& net, LengthMode mode) {
    const std::size_t n = net.size();
    double max_weight = 0;
    for (std::uint32_t u = 0; u < n; ++u)
        for (const graph::Neighbor& nb : net.out(u))
            if (nb.node != u) max_weight = std::max(max_weight, nb.weight);

    LengthGraph g;
    g.n = n;
    g.out_off.assign(n + 1, 0);
    g.in_off.assign(n + 1, 0);
    for (std::uint32_t u = 0; u < n; ++u) {
        for (const graph::Neighbor& nb : net.out(u)) {
            if (nb.node == u) continue;
            ++g.out_off[u + 1];
            ++g.in_off[nb.node + 1];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.out_off[i + 1] += g.out_off[i];
        g.in_off[i + 1] += g.in_off[i];
    }
    g.out_node.resize(g.out_off[n]);
    g.out_len.resize(g.out_off[n]);
    g.in_node.resize(g.in_off[n]);
    g.in_len.resize(g.in_off[n]);
    std::vector<std::size_t> opos(g.out_off.begin(), g.out_off.end() - 1);
    std::vector<std::size_t> ipos(g.in_off.begin(), g.in_off.end() - 1);
    for (std::uint32_t u = 0; u < n; ++u) {
        for (const graph::Neighbor& nb : net.out(u)) {
            if (nb.node == u) continue;
            double len = map_length(mode, nb.weight, max_weight);
            if (!(len > 0) || !std::isfinite(len))
                throw std::invalid_argument("non-positive mapped arc length");
            g.out_node[opos[u]] = nb.node;
            g.out_len[opos[u]++] = len;
            g.in_node[ipos[nb.node]] = u;
            g.in_len[ipos[nb.node]++] = len;
        }
    }
    return g;
}

struct BfsScratch {
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<std::uint32_t> order;

    explicit BfsScratch(std::size_t n) : dist(n), sigma(n), delta(n), order(n) {}
};

// One Brandes pass on unit lengths; dependencies are added into acc.
void brandes_source_binary(const LengthGraph& g, std::uint32_t src, BfsScratch& s,
                           std::vector<double>& acc) {
    std::fill(s.dist.begin(), s.dist.end(), -1);
    std::fill(s.sigma.begin(), s.sigma.end(), 0.0);
    std::fill(s.delta.begin(), s.delta.end(), 0.0);

    std::size_t head = 0, tail = 0;
    s.dist[src] = 0;
    s.sigma[src] = 1.0;
    s.order[tail++] = src;
    while (head < tail) {
        std::uint32_t u = s.order[head++];
        std::int32_t du = s.dist[u];
        for (std::size_t k = g.out_off[u]; k < g.out_off[u + 1]; ++k) {
            std::uint32_t v = g.out_node[k];
            if (s.dist[v] < 0) {
                s.dist[v] = du + 1;
                s.order[tail++] = v;
            }
            if (s.dist[v] == du + 1) s.sigma[v] += s.sigma[u];
        }
    }

    for (std::size_t i = tail; i-- > 1;) {
        std::uint32_t w = s.order[i];
        double coeff = (1.0 + s.delta[w]) / s.sigma[w];
        std::int32_t dw = s.dist[w];
        for (std::size_t k = g.in_off[w]; k < g.in_off[w + 1]; ++k) {
            std::uint32_t v = g.in_node[k];
            if (s.dist[v] == dw - 1) s.delta[v] += s.sigma[v] * coeff;
        }
        acc[w] += s.delta[w];
    }
}

struct DijkstraScratch {
    std::vector<double> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<bool> settled;
    std::vector<std::uint32_t> order;

    explicit DijkstraScratch(std::size_t n) : dist(n), sigma(n), delta(n), settled(n), order(n) {}
};

void brandes_source_valued(const LengthGraph& g, std::uint32_t src, DijkstraScratch& s,
                           std::vector<double>& acc) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::fill(s.dist.begin(), s.dist.end(), inf);
    std::fill(s.sigma.begin(), s.sigma.end(), 0.0);
    std::fill(s.delta.begin(), s.delta.end(), 0.0);
    std::fill(s.settled.begin(), s.settled.end(), false);

    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    s.dist[src] = 0;
    s.sigma[src] = 1.0;
    pq.push({0.0, src});
    std::size_t count = 0;

    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (s.settled[u]) continue;
        s.settled[u] = true;
        s.order[count++] = u;
        for (std::size_t k = g.out_off[u]; k < g.out_off[u + 1]; ++k) {
            std::uint32_t v = g.out_node[k];
            double nd = s.dist[u] + g.out_len[k];
            if (nearly_equal_length(nd, s.dist[v])) {
                s.sigma[v] += s.sigma[u];
            } else if (nd < s.dist[v]) {
                s.dist[v] = nd;
                s.sigma[v] = s.sigma[u];
                pq.push({nd, v});
            }
        }
    }

    for (std::size_t i = count; i-- > 1;) {
        std::uint32_t w = s.order[i];
        double coeff = (1.0 + s.delta[w]) / s.sigma[w];
        for (std::size_t k = g.in_off[w]; k < g.in_off[w + 1]; ++k) {
            std::uint32_t v = g.in_node[k];
            if (s.settled[v] && v != w && nearly_equal_length(s.dist[v] + g.in_len[k], s.dist[w]))
                s.delta[v] += s.sigma[v] * coeff;
        }
        acc[w] += s.delta[w];
    }
}

// Fixed source blocks: a block is processed serially in ascending source
// order and blocks are reduced in index order, which keeps the result
// independent of the schedule and the worker count.
constexpr std::size_t kMaxBlocks = 512;
constexpr std::size_t kMinBlockSize = 64;

std::size_t block_size_for(std::size_t n) {
    std::size_t bs = (n + kMaxBlocks - 1) / kMaxBlocks;
    return std::max(bs, kMinBlockSize);
}

template <typename Scratch, typename SourceFn>
std::vector<double> blocked_accumulate(std::size_t n, int threads, SourceFn run_source) {
    const std::size_t bs = block_size_for(n);
    const std::size_t nblocks = n == 0 ? 0 : (n + bs - 1) / bs;
    std::vector<std::vector<double>> partial(nblocks);
    const int workers = parallel::resolve(threads);

#pragma omp parallel num_threads(workers)
    {
        Scratch scratch(n);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
            auto& acc = partial[b];
            acc.assign(n, 0.0);
            std::size_t lo = static_cast<std::size_t>(b) * bs;
            std::size_t hi = std::min(lo + bs, n);
            for (std::size_t src = lo; src < hi; ++src)
                run_source(static_cast<std::uint32_t>(src), scratch, acc);
        }
    }

    std::vector<double> bc(n, 0.0);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
        for (std::size_t b = 0; b < nblocks; ++b) bc[k] += partial[b][k];
    return bc;
}

} // namespace

bool nearly_equal_length(double a, double b) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::fabs(a - b) <= kLengthTolerance * std::max(std::fabs(a), std::fabs(b));
}

LengthMode length_mode_from_string(const std::string& name) {
    if (name == "inverse") return LengthMode::inverse;
    if (name == "unit") return LengthMode::unit;
    if (name == "max-plus-one-minus" || name == "max_plus_one_minus")
        return LengthMode::max_plus_one_minus;
    throw std::invalid_argument("unknown length mode '" + name + "'");
}

std::string to_string(LengthMode mode) {
    switch (mode) {
    case LengthMode::inverse:
        return "inverse";
    case LengthMode::unit:
        return "unit";
    case LengthMode::max_plus_one_minus:
        return "max-plus-one-minus";
    }
    return "?";
}

std::vector<double> bc_binary_scores(const graph::CitationNetwork& net, int threads) {
    LengthGraph g = make_length_graph(net, LengthMode::unit);
    return blocked_accumulate<BfsScratch>(
        g.n, threads,
        [&g](std::uint32_t src, BfsScratch& s, std::vector<double>& acc) {
            brandes_source_binary(g, src, s, acc);
        });
}

std::vector<double> bc_binary_scores_serial(const graph::CitationNetwork& net) {
    LengthGraph g = make_length_graph(net, LengthMode::unit);
    std::vector<double> bc(g.n, 0.0);
    BfsScratch scratch(g.n);
    for (std::uint32_t src = 0; src < g.n; ++src) brandes_source_binary(g, src, scratch, bc);
    return bc;
}

std::vector<double> bc_valued_scores(const graph::CitationNetwork& net, LengthMode mode,
                                     int threads) {
    LengthGraph g = make_length_graph(net, mode);
    return blocked_accumulate<DijkstraScratch>(
        g.n, threads,
        [&g](std::uint32_t src, DijkstraScratch& s, std::vector<double>& acc) {
            brandes_source_valued(g, src, s, acc);
        });
}

std::vector<double> bc_valued_scores_serial(const graph::CitationNetwork& net, LengthMode mode) {
    LengthGraph g = make_length_graph(net, mode);
    std::vector<double> bc(g.n, 0.0);
    DijkstraScratch scratch(g.n);
    for (std::uint32_t src = 0; src < g.n; ++src) brandes_source_valued(g, src, scratch, bc);
    return bc;
}

double bc_normalization(std::size_t n) {
    if (n < 3) return 0;
    return static_cast<double>(n - 1) * static_cast<double>(n - 2);
}

std::vector<double> normalize_scores(std::span<const double> raw, std::size_t n) {
    std::vector<double> out(raw.size(), 0.0);
    double denom = bc_normalization(n);
    if (denom > 0)
        for (std::size_t i = 0; i < raw.size(); ++i) out[i] = 100.0 * raw[i] / denom;
    return out;
}

std::vector<CentralityRecord> bc_binary(const graph::CitationNetwork& net, int threads) {
    std::vector<double> raw = bc_binary_scores(net, threads);
    std::vector<double> norm = normalize_scores(raw, net.size());
    std::vector<CentralityRecord> records(net.size());
    for (std::uint32_t i = 0; i < net.size(); ++i) {
        records[i].node = i;
        records[i].bc_raw = raw[i];
        records[i].bc_normalized = norm[i];
    }
    return records;
}

std::vector<CentralityRecord> bc_valued(const graph::CitationNetwork& net, LengthMode mode,
                                        int threads) {
    std::vector<double> raw = bc_valued_scores(net, mode, threads);
    std::vector<double> norm = normalize_scores(raw, net.size());
    std::vector<CentralityRecord> records(net.size());
    for (std::uint32_t i = 0; i < net.size(); ++i) {
        records[i].node = i;
        records[i].bc_valued_raw = raw[i];
        records[i].bc_valued_normalized = norm[i];
    }
    return records;
}

std::vector<RankedRow> rank_table(std::span<const double> values,
                                  std::span<const std::string> labels) {
    if (values.size() != labels.size())
        throw std::invalid_argument("rank_table: value/label count mismatch");
    std::vector<std::uint32_t> order(values.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return labels[a] < labels[b];
    });

    std::vector<RankedRow> rows(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t rank = i + 1;
        if (i > 0 && values[order[i]] == values[order[i - 1]]) rank = rows[i - 1].rank;
        rows[i] = {rank, order[i], values[order[i]]};
    }
    return rows;
}

} // namespace raonet::centrality
