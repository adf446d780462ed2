#include "raonet/graph.hpp"

#include "raonet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace raonet::graph {

CitationNetwork CitationNetwork::from_arcs(std::size_t n, std::vector<std::string> labels,
                                           std::vector<ArcTriple> arcs) {
    if (labels.size() != n) throw std::invalid_argument("label count != node count");

    std::sort(arcs.begin(), arcs.end(), [](const ArcTriple& a, const ArcTriple& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const ArcTriple& a = arcs[i];
        if (a.source >= n || a.target >= n) throw std::invalid_argument("arc endpoint out of range");
        if (!std::isfinite(a.weight) || a.weight < 0)
            throw std::invalid_argument("arc weight must be finite and non-negative");
        if (out > 0 && arcs[out - 1].source == a.source && arcs[out - 1].target == a.target)
            arcs[out - 1].weight += a.weight;
        else
            arcs[out++] = a;
    }
    arcs.resize(out);
    std::erase_if(arcs, [](const ArcTriple& a) { return a.weight == 0; });

    CitationNetwork net;
    net.n_ = n;
    net.labels_ = std::move(labels);
    net.loop_weight_.assign(n, 0.0);
    net.out_off_.assign(n + 1, 0);
    net.in_off_.assign(n + 1, 0);

    for (const ArcTriple& a : arcs) {
        ++net.out_off_[a.source + 1];
        ++net.in_off_[a.target + 1];
        net.total_weight_ += a.weight;
        if (a.source == a.target) {
            net.loop_weight_[a.source] = a.weight;
            ++net.loop_count_;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        net.out_off_[i + 1] += net.out_off_[i];
        net.in_off_[i + 1] += net.in_off_[i];
    }

    net.out_.resize(arcs.size());
    net.in_.resize(arcs.size());
    std::vector<std::size_t> out_pos(net.out_off_.begin(), net.out_off_.end() - 1);
    std::vector<std::size_t> in_pos(net.in_off_.begin(), net.in_off_.end() - 1);
    for (const ArcTriple& a : arcs) {
        net.out_[out_pos[a.source]++] = {a.target, a.weight};
        net.in_[in_pos[a.target]++] = {a.source, a.weight};
    }
    // Arcs arrive sorted by (source,target), so out lists are sorted; in lists
    // are filled in source order per target and end up sorted as well.
    return net;
}

std::vector<ArcTriple> CitationNetwork::arcs() const {
    std::vector<ArcTriple> result;
    result.reserve(out_.size());
    for (std::uint32_t u = 0; u < n_; ++u)
        for (const Neighbor& nb : out(u)) result.push_back({u, nb.node, nb.weight});
    return result;
}

CitationNetwork build(const netio::RawNetworkFile& raw) {
    std::vector<ArcTriple> arcs;
    arcs.reserve(raw.arcs.size());
    for (const netio::Arc& a : raw.arcs)
        arcs.push_back({a.source - 1, a.target - 1, a.weight});
    return CitationNetwork::from_arcs(raw.vertex_count, raw.labels, std::move(arcs));
}

netio::RawNetworkFile to_raw(const CitationNetwork& net) {
    netio::RawNetworkFile raw;
    raw.vertex_count = net.size();
    raw.labels = net.labels();
    for (const ArcTriple& a : net.arcs())
        raw.arcs.push_back({a.source + 1, a.target + 1, a.weight});
    return raw;
}

ComponentResult weak_components(const CitationNetwork& net) {
    const std::size_t n = net.size();
    constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> raw_id(n, unseen);
    std::vector<std::size_t> raw_size;
    std::vector<std::uint32_t> stack;

    for (std::uint32_t start = 0; start < n; ++start) {
        if (raw_id[start] != unseen) continue;
        std::uint32_t id = static_cast<std::uint32_t>(raw_size.size());
        raw_size.push_back(0);
        raw_id[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            ++raw_size[id];
            for (const Neighbor& nb : net.out(u))
                if (raw_id[nb.node] == unseen) {
                    raw_id[nb.node] = id;
                    stack.push_back(nb.node);
                }
            for (const Neighbor& nb : net.in(u))
                if (raw_id[nb.node] == unseen) {
                    raw_id[nb.node] = id;
                    stack.push_back(nb.node);
                }
        }
    }

    // Reorder ids: decreasing size, ties by smallest member index. Raw ids
    // are already in smallest-member order by construction.
    std::vector<std::uint32_t> order(raw_size.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return raw_size[a] > raw_size[b];
    });

    ComponentResult result;
    result.sizes.resize(raw_size.size());
    std::vector<std::uint32_t> remap(raw_size.size());
    for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
        remap[order[rank]] = rank;
        result.sizes[rank] = raw_size[order[rank]];
    }
    result.component_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.component_of[i] = remap[raw_id[i]];
    return result;
}

CitationNetwork restrict_to(const CitationNetwork& net, std::span<const std::uint32_t> nodes) {
    if (nodes.empty()) throw std::invalid_argument("restrict: empty node set");
    std::vector<std::uint32_t> keep(nodes.begin(), nodes.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.back() >= net.size()) throw std::invalid_argument("restrict: node out of range");

    constexpr std::uint32_t absent = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> remap(net.size(), absent);
    std::vector<std::string> labels(keep.size());
    for (std::uint32_t i = 0; i < keep.size(); ++i) {
        remap[keep[i]] = i;
        labels[i] = net.label(keep[i]);
    }

    std::vector<ArcTriple> arcs;
    for (std::uint32_t u : keep)
        for (const Neighbor& nb : net.out(u))
            if (remap[nb.node] != absent) arcs.push_back({remap[u], remap[nb.node], nb.weight});
    return CitationNetwork::from_arcs(keep.size(), std::move(labels), std::move(arcs));
}

double density_formula(std::size_t nodes, std::size_t links) {
    if (nodes == 0) return 0;
    return static_cast<double>(links) / (static_cast<double>(nodes) * static_cast<double>(nodes));
}

double average_total_degree_formula(std::size_t nodes, std::size_t links) {
    if (nodes == 0) return 0;
    return 2.0 * static_cast<double>(links) / static_cast<double>(nodes);
}

namespace {

// Undirected binarized loopless adjacency, CSR.
struct UndirectedView {
    std::vector<std::size_t> off;
    std::vector<std::uint32_t> adj;
};

UndirectedView undirected_view(const CitationNetwork& net) {
    const std::size_t n = net.size();
    UndirectedView view;
    view.off.assign(n + 1, 0);
    std::vector<std::uint32_t> merged;
    std::vector<std::vector<std::uint32_t>> per_node(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        merged.clear();
        for (const Neighbor& nb : net.out(u))
            if (nb.node != u) merged.push_back(nb.node);
        for (const Neighbor& nb : net.in(u))
            if (nb.node != u) merged.push_back(nb.node);
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        per_node[u] = merged;
        view.off[u + 1] = view.off[u] + merged.size();
    }
    view.adj.reserve(view.off[n]);
    for (std::uint32_t u = 0; u < n; ++u)
        view.adj.insert(view.adj.end(), per_node[u].begin(), per_node[u].end());
    return view;
}

} // namespace

NetworkSummary summarize(const CitationNetwork& net, int threads) {
    NetworkSummary s;
    const std::size_t n = net.size();
    s.nodes = n;
    s.links = net.arc_count();
    s.loops = net.loop_count();
    s.total_citations = net.total_weight();
    s.density = density_formula(n, s.links);
    s.average_total_degree = average_total_degree_formula(n, s.links);
    if (n == 0) {
        s.distances_defined = false;
        return s;
    }

    UndirectedView view = undirected_view(net);
    const int workers = parallel::resolve(threads);

    // Geodesics over reachable ordered pairs: unit-length sums are integers,
    // so per-source totals reduce deterministically.
    std::vector<std::uint64_t> dist_sum(n, 0), pair_count(n, 0);
    std::vector<std::uint32_t> ecc(n, 0);
    std::vector<double> local_cc(n, 0.0);

#pragma omp parallel num_threads(workers)
    {
        std::vector<std::uint32_t> dist(n);
        std::vector<std::uint32_t> queue(n);
        std::vector<bool> mark(n, false);

#pragma omp for schedule(dynamic, 16)
        for (std::int64_t src = 0; src < static_cast<std::int64_t>(n); ++src) {
            // BFS
            std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
            std::size_t head = 0, tail = 0;
            dist[src] = 0;
            queue[tail++] = static_cast<std::uint32_t>(src);
            std::uint64_t sum = 0, cnt = 0;
            std::uint32_t e = 0;
            while (head < tail) {
                std::uint32_t u = queue[head++];
                std::uint32_t du = dist[u];
                if (du > 0) {
                    sum += du;
                    ++cnt;
                    e = std::max(e, du);
                }
                for (std::size_t k = view.off[u]; k < view.off[u + 1]; ++k) {
                    std::uint32_t v = view.adj[k];
                    if (dist[v] == std::numeric_limits<std::uint32_t>::max()) {
                        dist[v] = du + 1;
                        queue[tail++] = v;
                    }
                }
            }
            dist_sum[src] = sum;
            pair_count[src] = cnt;
            ecc[src] = e;

            // Local clustering: fraction of neighbor pairs connected.
            std::size_t deg = view.off[src + 1] - view.off[src];
            if (deg >= 2) {
                for (std::size_t k = view.off[src]; k < view.off[src + 1]; ++k)
                    mark[view.adj[k]] = true;
                std::uint64_t tri2 = 0; // counts each triangle edge twice
                for (std::size_t k = view.off[src]; k < view.off[src + 1]; ++k) {
                    std::uint32_t u = view.adj[k];
                    for (std::size_t k2 = view.off[u]; k2 < view.off[u + 1]; ++k2)
                        if (mark[view.adj[k2]]) ++tri2;
                }
                for (std::size_t k = view.off[src]; k < view.off[src + 1]; ++k)
                    mark[view.adj[k]] = false;
                local_cc[src] = static_cast<double>(tri2) /
                                (static_cast<double>(deg) * static_cast<double>(deg - 1));
            }
        }
    }

    std::uint64_t total_sum = 0, total_pairs = 0;
    std::uint32_t max_dist = 0;
    double cc_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total_sum += dist_sum[i];
        total_pairs += pair_count[i];
        max_dist = std::max(max_dist, ecc[i]);
        cc_sum += local_cc[i];
    }
    s.distances_defined = total_pairs > 0;
    s.average_distance =
        total_pairs > 0 ? static_cast<double>(total_sum) / static_cast<double>(total_pairs) : 0;
    s.maximum_distance = max_dist;
    s.clustering_coefficient = cc_sum / static_cast<double>(n);
    return s;
}

namespace {

CitationNetwork transform_arcs(const CitationNetwork& net,
                               std::vector<ArcTriple> (*make)(const CitationNetwork&)) {
    return CitationNetwork::from_arcs(net.size(), net.labels(), make(net));
}

} // namespace

CitationNetwork binarize(const CitationNetwork& net) {
    return transform_arcs(net, [](const CitationNetwork& g) {
        std::vector<ArcTriple> arcs = g.arcs();
        for (ArcTriple& a : arcs) a.weight = 1.0;
        return arcs;
    });
}

CitationNetwork symmetrize(const CitationNetwork& net) {
    return transform_arcs(net, [](const CitationNetwork& g) {
        std::vector<ArcTriple> arcs;
        for (const ArcTriple& a : g.arcs()) {
            if (a.source == a.target) {
                arcs.push_back(a);
            } else {
                arcs.push_back(a);
                arcs.push_back({a.target, a.source, a.weight});
            }
        }
        return arcs; // from_arcs sums the duplicates
    });
}

CitationNetwork drop_loops(const CitationNetwork& net) {
    return transform_arcs(net, [](const CitationNetwork& g) {
        std::vector<ArcTriple> arcs = g.arcs();
        std::erase_if(arcs, [](const ArcTriple& a) { return a.source == a.target; });
        return arcs;
    });
}

NeighborhoodResult neighborhood(const CitationNetwork& net, std::uint32_t focal,
                                NeighborhoodMode mode, bool include_focal) {
    if (focal >= net.size()) throw std::invalid_argument("neighborhood: focal out of range");
    NeighborhoodResult result;
    result.focal = focal;
    result.mode = mode;

    auto span = mode == NeighborhoodMode::integration ? net.out(focal) : net.in(focal);
    for (const Neighbor& nb : span)
        if (nb.node != focal) result.members.push_back(nb.node);
    if (include_focal) {
        result.members.push_back(focal);
        std::sort(result.members.begin(), result.members.end());
    }
    if (!result.members.empty()) result.subnetwork = restrict_to(net, result.members);
    return result;
}

namespace {

// xorshift-style generator, stable across platforms
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { // in (0,1)
        return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    std::uint64_t bounded(std::uint64_t n) { return next() % n; }
};

} // namespace

CitationNetwork synthetic_citation_network(std::size_t nodes, std::size_t target_arcs,
                                           std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<ArcTriple> arcs;
    arcs.reserve(target_arcs + nodes);

    // Base ring keeps the network connected.
    for (std::uint32_t u = 0; u < nodes; ++u)
        arcs.push_back({u, static_cast<std::uint32_t>((u + 1) % nodes), 1.0});

    auto skewed_node = [&]() {
        double u = rng.uniform();
        return static_cast<std::uint32_t>(static_cast<double>(nodes) * u * u * u);
    };

    // Duplicate pairs merge later, so oversample.
    std::size_t draws = target_arcs + target_arcs / 5;
    for (std::size_t i = 0; i < draws; ++i) {
        std::uint32_t src = rng.bounded(2) ? skewed_node() : static_cast<std::uint32_t>(rng.bounded(nodes));
        std::uint32_t dst = skewed_node();
        double w = std::floor(1.0 / std::pow(rng.uniform(), 0.6));
        w = std::min(w, 5000.0);
        arcs.push_back({src, dst, w});
    }

    std::vector<std::string> labels(nodes);
    for (std::size_t i = 0; i < nodes; ++i) labels[i] = "J" + std::to_string(i + 1);
    return CitationNetwork::from_arcs(nodes, std::move(labels), std::move(arcs));
}

} // namespace raonet::graph
