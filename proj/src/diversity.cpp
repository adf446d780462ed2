#include "raonet/diversity.hpp"

#include "raonet/netio.hpp"
#include "raonet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace raonet::diversity {

Direction direction_from_string(const std::string& name) {
    if (name == "cited") return Direction::cited;
    if (name == "citing") return Direction::citing;
    throw std::invalid_argument("unknown direction '" + name + "'");
}

Convention convention_from_string(const std::string& name) {
    if (name == "same" || name == "same_direction") return Convention::same_direction;
    if (name == "orthogonal") return Convention::orthogonal;
    throw std::invalid_argument("unknown convention '" + name + "'");
}

std::string to_string(Direction d) { return d == Direction::cited ? "cited" : "citing"; }

std::string to_string(Convention c) {
    return c == Convention::same_direction ? "same_direction" : "orthogonal";
}

bool profile_uses_out(Direction direction, Convention convention) {
    bool same = convention == Convention::same_direction;
    return direction == Direction::citing ? same : !same;
}

ProbabilityVector probability_vector(const graph::CitationNetwork& net, std::uint32_t focal,
                                     Direction direction) {
    if (focal >= net.size()) throw std::invalid_argument("probability_vector: node out of range");
    ProbabilityVector p;
    p.focal = focal;
    p.direction = direction;
    auto span = direction == Direction::citing ? net.out(focal) : net.in(focal);
    for (const graph::Neighbor& nb : span) p.total += nb.weight;
    if (p.total > 0) {
        p.entries.reserve(span.size());
        for (const graph::Neighbor& nb : span) p.entries.push_back({nb.node, nb.weight / p.total});
    }
    return p;
}

namespace {

std::vector<double> profile_norms(const graph::CitationNetwork& net, bool use_out) {
    std::vector<double> norms(net.size(), 0.0);
    for (std::uint32_t u = 0; u < net.size(); ++u) {
        double s = 0;
        auto span = use_out ? net.out(u) : net.in(u);
        for (const graph::Neighbor& nb : span) s += nb.weight * nb.weight;
        norms[u] = std::sqrt(s);
    }
    return norms;
}

} // namespace

DistanceProvider::DistanceProvider(const graph::CitationNetwork& net, Direction direction,
                                   Convention convention, std::size_t max_cached_rows)
    : net_(net), direction_(direction), convention_(convention),
      use_out_(profile_uses_out(direction, convention)),
      max_rows_(std::max<std::size_t>(1, max_cached_rows)),
      norms_(profile_norms(net, use_out_)) {}

std::span<const double> DistanceProvider::cosine_row(std::uint32_t i) {
    auto hit = index_.find(i);
    if (hit != index_.end()) {
        cache_.splice(cache_.begin(), cache_, hit->second);
        return hit->second->second;
    }

    std::vector<double> row(net_.size(), 0.0);
    if (norms_[i] > 0) {
        auto profile = use_out_ ? net_.out(i) : net_.in(i);
        for (const graph::Neighbor& entry : profile) {
            double coef = entry.weight / norms_[i];
            auto reverse = use_out_ ? net_.in(entry.node) : net_.out(entry.node);
            for (const graph::Neighbor& other : reverse)
                row[other.node] += coef * (other.weight / norms_[other.node]);
        }
        row[i] = 1.0;
    }

    cache_.emplace_front(i, std::move(row));
    index_[i] = cache_.begin();
    if (cache_.size() > max_rows_) {
        index_.erase(cache_.back().first);
        cache_.pop_back();
    }
    return cache_.front().second;
}

double DistanceProvider::distance(std::uint32_t i, std::uint32_t j) {
    if (i == j) return 0.0;
    std::uint32_t lo = std::min(i, j), hi = std::max(i, j);
    double cosine = cosine_row(lo)[hi];
    double d = 1.0 - cosine;
    if (d < 0) d = 0;
    if (d > 1) d = 1;
    return d;
}

double true_diversity(double delta, bool& saturated) {
    if (delta >= kSaturationThreshold) {
        saturated = true;
        return kSaturatedTrueDiversity;
    }
    return 1.0 / (1.0 - delta);
}

RaoResult rao_stirling(const ProbabilityVector& p, DistanceProvider& provider) {
    if (provider.direction() != p.direction)
        throw std::invalid_argument("rao_stirling: direction mismatch");
    RaoResult r;
    if (p.zero()) {
        r.zero = true;
        return r;
    }
    if (p.entries.size() >= 2) {
        double delta = 0;
        for (const auto& [a, pa] : p.entries)
            for (const auto& [b, pb] : p.entries) {
                if (a == b) continue;
                delta += pa * pb * provider.distance(a, b);
            }
        if (delta < 0) delta = 0;
        if (delta > 1) delta = 1;
        r.delta = delta;
    }
    r.d2 = true_diversity(r.delta, r.saturated);
    return r;
}

namespace {

struct FocalScratch {
    std::vector<double> dense;
    std::vector<std::uint32_t> touched;

    explicit FocalScratch(std::size_t n) : dense(n, 0.0) {}
};

struct FocalAggregates {
    double sum_p = 0;      // sum of p over the partner subset
    double sum_p2 = 0;     // sum of p^2
    double self_cos = 0;   // sum of p^2 over nonzero-profile partners
    double norm2 = 0;      // |sum_a p_a u_a|^2
    std::size_t count = 0;
};

// Accumulates the partner subset's probability-weighted unit profiles into
// the dense register and folds the squared norm; equivalent to the explicit
// pair sum because sum_{a!=b} pa pb cos(a,b) = |v|^2 - sum_a pa^2 [norm>0].
FocalAggregates aggregate_partners(const graph::CitationNetwork& net, bool use_out,
                                   const std::vector<double>& norms,
                                   std::span<const graph::Neighbor> partners, double total,
                                   FocalScratch& scratch) {
    FocalAggregates agg;
    for (const graph::Neighbor& partner : partners) {
        std::uint32_t a = partner.node;
        double p = partner.weight / total;
        agg.sum_p += p;
        agg.sum_p2 += p * p;
        ++agg.count;
        if (norms[a] == 0) continue;
        agg.self_cos += p * p;
        double coef = p / norms[a];
        auto profile = use_out ? net.out(a) : net.in(a);
        for (const graph::Neighbor& entry : profile) {
            if (scratch.dense[entry.node] == 0.0) scratch.touched.push_back(entry.node);
            scratch.dense[entry.node] += coef * entry.weight;
        }
    }
    for (std::uint32_t t : scratch.touched) {
        agg.norm2 += scratch.dense[t] * scratch.dense[t];
        scratch.dense[t] = 0.0;
    }
    scratch.touched.clear();
    return agg;
}

double delta_from_aggregates(const FocalAggregates& agg) {
    double variety = agg.sum_p * agg.sum_p - agg.sum_p2;
    double cos_pairs = agg.norm2 - agg.self_cos;
    double delta = variety - cos_pairs;
    if (delta < 0) delta = 0;
    if (delta > 1) delta = 1;
    return delta;
}

struct DirectionSlot {
    double DiversityRecord::* delta;
    double DiversityRecord::* d2;
    double DiversityRecord::* sum;
    unsigned zero_flag;
    unsigned saturated_flag;
};

constexpr DirectionSlot slot_for(Direction d) {
    if (d == Direction::cited)
        return {&DiversityRecord::delta_cited, &DiversityRecord::d2_cited,
                &DiversityRecord::sum_cited, flag_zero_cited, flag_saturated_cited};
    return {&DiversityRecord::delta_citing, &DiversityRecord::d2_citing,
            &DiversityRecord::sum_citing, flag_zero_citing, flag_saturated_citing};
}

void run_direction_kernel(const graph::CitationNetwork& net, Direction direction,
                          Convention convention, int workers,
                          std::vector<DiversityRecord>& records) {
    const std::size_t n = net.size();
    const bool p_out = direction == Direction::citing;
    const bool prof_out = profile_uses_out(direction, convention);
    const std::vector<double> norms = profile_norms(net, prof_out);
    const DirectionSlot slot = slot_for(direction);

#pragma omp parallel num_threads(workers)
    {
        FocalScratch scratch(n);
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t f = 0; f < static_cast<std::int64_t>(n); ++f) {
            DiversityRecord& rec = records[f];
            auto partners = p_out ? net.out(f) : net.in(f);
            double total = 0;
            for (const graph::Neighbor& nb : partners) total += nb.weight;
            rec.*slot.sum = total;

            double delta = 0;
            if (total == 0) {
                rec.flags |= slot.zero_flag;
            } else if (partners.size() >= 2) {
                FocalAggregates agg =
                    aggregate_partners(net, prof_out, norms, partners, total, scratch);
                delta = delta_from_aggregates(agg);
            }
            rec.*slot.delta = delta;
            bool saturated = false;
            rec.*slot.d2 = true_diversity(delta, saturated);
            if (saturated) rec.flags |= slot.saturated_flag;
        }
    }
}

} // namespace

std::vector<DiversityRecord> diversity_all(const graph::CitationNetwork& net,
                                           Convention convention, int threads) {
    const std::size_t n = net.size();
    std::vector<DiversityRecord> records(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        records[i].node = i;
        records[i].label = net.label(i);
    }
    const int workers = parallel::resolve(threads);
    run_direction_kernel(net, Direction::cited, convention, workers, records);
    run_direction_kernel(net, Direction::citing, convention, workers, records);
    return records;
}

std::vector<DiversityRecord> diversity_all_serial(const graph::CitationNetwork& net,
                                                  Convention convention,
                                                  std::size_t max_cached_rows) {
    const std::size_t n = net.size();
    std::vector<DiversityRecord> records(n);
    for (Direction direction : {Direction::cited, Direction::citing}) {
        DistanceProvider provider(net, direction, convention, max_cached_rows);
        const DirectionSlot slot = slot_for(direction);
        for (std::uint32_t f = 0; f < n; ++f) {
            DiversityRecord& rec = records[f];
            rec.node = f;
            rec.label = net.label(f);
            ProbabilityVector p = probability_vector(net, f, direction);
            RaoResult r = rao_stirling(p, provider);
            rec.*slot.sum = p.total;
            rec.*slot.delta = r.delta;
            rec.*slot.d2 = r.d2;
            if (r.zero) rec.flags |= slot.zero_flag;
            if (r.saturated) rec.flags |= slot.saturated_flag;
        }
    }
    return records;
}

DecompositionMode decomposition_mode_from_string(const std::string& name) {
    if (name == "local") return DecompositionMode::local;
    if (name == "grand" || name == "grand_matrix") return DecompositionMode::grand_matrix;
    throw std::invalid_argument("unknown decomposition mode '" + name + "'");
}

std::string to_string(DecompositionMode m) {
    return m == DecompositionMode::local ? "local" : "grand_matrix";
}

DecompositionReport decompose(const graph::CitationNetwork& net, std::span<const int> group_of,
                              Direction direction, Convention convention, DecompositionMode mode,
                              int threads) {
    const std::size_t n = net.size();
    if (group_of.size() != n)
        throw std::invalid_argument("decompose: partition size " +
                                    std::to_string(group_of.size()) + " != network size " +
                                    std::to_string(n));

    DecompositionReport report;
    report.direction = direction;
    report.mode = mode;
    report.total_cell_count = n * (n - 1);

    std::map<int, std::vector<std::uint32_t>> members;
    for (std::uint32_t i = 0; i < n; ++i) members[group_of[i]].push_back(i);

    std::vector<DiversityRecord> records = diversity_all(net, convention, threads);
    const DirectionSlot slot = slot_for(direction);
    for (const DiversityRecord& rec : records) report.total_delta += rec.*slot.delta;

    for (const auto& [gid, nodes] : members) {
        GroupDecomposition g;
        g.group = gid;
        g.node_count = nodes.size();
        g.pair_cell_count = nodes.size() * (nodes.size() - 1);
        report.within_cell_count += g.pair_cell_count;
        report.per_group.push_back(g);
    }

    if (mode == DecompositionMode::local) {
        for (GroupDecomposition& g : report.per_group) {
            const auto& nodes = members[g.group];
            graph::CitationNetwork sub = restrict_to(net, nodes);
            std::vector<DiversityRecord> sub_records = diversity_all(sub, convention, threads);
            for (const DiversityRecord& rec : sub_records) {
                g.within_delta += rec.*slot.delta;
                g.within_d2 += rec.*slot.d2;
            }
        }
        return report;
    }

    // grand_matrix: attribute each full-matrix cell to the partner pair's
    // shared group, or to between. The between sum uses its own cross-group
    // formula rather than total minus within.
    const bool p_out = direction == Direction::citing;
    const bool prof_out = profile_uses_out(direction, convention);
    const std::vector<double> norms = profile_norms(net, prof_out);

    std::map<int, std::size_t> group_index;
    for (std::size_t i = 0; i < report.per_group.size(); ++i)
        group_index[report.per_group[i].group] = i;

    FocalScratch scratch(n);
    std::vector<std::vector<graph::Neighbor>> bucket(report.per_group.size());
    std::vector<std::size_t> seen_groups;

    for (std::uint32_t f = 0; f < n; ++f) {
        auto partners = p_out ? net.out(f) : net.in(f);
        double total = 0;
        for (const graph::Neighbor& nb : partners) total += nb.weight;
        if (total == 0 || partners.size() < 2) continue;

        for (const graph::Neighbor& nb : partners) {
            std::size_t gi = group_index[group_of[nb.node]];
            if (bucket[gi].empty()) seen_groups.push_back(gi);
            bucket[gi].push_back(nb);
        }
        std::sort(seen_groups.begin(), seen_groups.end());

        FocalAggregates full = aggregate_partners(net, prof_out, norms, partners, total, scratch);

        double sum_sg2 = 0, sum_norm2g = 0;
        for (std::size_t gi : seen_groups) {
            FocalAggregates part =
                aggregate_partners(net, prof_out, norms, bucket[gi], total, scratch);
            report.per_group[gi].within_delta += delta_from_aggregates(part);
            sum_sg2 += part.sum_p * part.sum_p;
            sum_norm2g += part.norm2;
            bucket[gi].clear();
        }
        seen_groups.clear();

        double cross_variety = full.sum_p * full.sum_p - sum_sg2;
        double cross_cos = full.norm2 - sum_norm2g;
        double between = cross_variety - cross_cos;
        if (between < 0) between = 0;
        report.between_delta += between;
    }

    for (GroupDecomposition& g : report.per_group)
        for (std::uint32_t node : members[g.group]) g.within_d2 += records[node].*slot.d2;

    if (report.total_delta > 0) report.between_share = report.between_delta / report.total_delta;
    return report;
}

std::size_t emit_cell_values(const graph::CitationNetwork& net, Direction direction,
                             Convention convention, std::ostream& sink,
                             const CellEmitOptions& options) {
    const std::size_t n = net.size();
    std::vector<std::uint32_t> focals;
    if (options.focal_filter) {
        focals = *options.focal_filter;
        for (std::uint32_t f : focals)
            if (f >= n) throw std::invalid_argument("cell emission: focal out of range");
    } else {
        focals.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) focals[i] = i;
    }

    std::size_t projected = 0;
    for (std::uint32_t f : focals) {
        std::size_t k =
            direction == Direction::citing ? net.out(f).size() : net.in(f).size();
        if (k >= 2) projected += k * (k - 1);
    }
    if (options.warn_stream && projected > options.warn_row_threshold)
        *options.warn_stream << "warning: cell file will hold " << projected
                             << " rows (threshold " << options.warn_row_threshold << ")\n";

    auto fmt = [&](double v) {
        return options.precision > 0 ? netio::format_real(v, options.precision)
                                     : netio::format_number(v);
    };

    DistanceProvider provider(net, direction, convention);
    sink << "focal,i,j,p_i,p_j,d_ij,cell\n";
    std::size_t rows = 0;
    for (std::uint32_t f : focals) {
        ProbabilityVector p = probability_vector(net, f, direction);
        for (const auto& [a, pa] : p.entries)
            for (const auto& [b, pb] : p.entries) {
                if (a == b) continue;
                double d = provider.distance(a, b);
                sink << (f + 1) << ',' << (a + 1) << ',' << (b + 1) << ',' << fmt(pa) << ','
                     << fmt(pb) << ',' << fmt(d) << ',' << fmt(pa * pb * d) << '\n';
                ++rows;
            }
    }
    if (!sink) throw std::runtime_error("cell value write failed");
    return rows;
}

std::vector<GroupAggregate> group_aggregate(std::span<const double> values,
                                            std::span<const int> group_of,
                                            const std::vector<int>* groups) {
    if (values.size() != group_of.size())
        throw std::invalid_argument("group_aggregate: value/partition size mismatch");

    std::map<int, GroupAggregate> acc;
    if (groups)
        for (int g : *groups) acc[g].group = g;
    for (std::size_t i = 0; i < values.size(); ++i) {
        GroupAggregate& g = acc[group_of[i]];
        g.group = group_of[i];
        ++g.count;
        g.sum += values[i];
    }
    for (auto& [gid, g] : acc) {
        if (g.count == 0) continue;
        g.mean = g.sum / static_cast<double>(g.count);
        g.mean_defined = true;
        if (g.count >= 2) {
            double ss = 0;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (group_of[i] == gid) {
                    double d = values[i] - g.mean;
                    ss += d * d;
                }
            double sd = std::sqrt(ss / static_cast<double>(g.count - 1));
            g.standard_error = sd / std::sqrt(static_cast<double>(g.count));
            g.se_defined = true;
        }
    }

    std::vector<GroupAggregate> out;
    out.reserve(acc.size());
    for (auto& [gid, g] : acc) out.push_back(g);
    return out;
}

} // namespace raonet::diversity
