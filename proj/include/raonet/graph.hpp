#pragma once

#include "raonet/netio.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace raonet::graph {

struct Neighbor {
    std::uint32_t node;
    double weight;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// 0-based arc, used for transforms and generators.
struct ArcTriple {
    std::uint32_t source;
    std::uint32_t target;
    double weight;
};

// Immutable directed weighted network with loops. Out- and in-adjacency are
// stored together (CSR, neighbors sorted ascending); all queries are
// read-only and safe to run concurrently.
class CitationNetwork {
public:
    CitationNetwork() = default;

    // Sorts, merges duplicate (source,target) pairs, drops zero weights.
    static CitationNetwork from_arcs(std::size_t n, std::vector<std::string> labels,
                                     std::vector<ArcTriple> arcs);

    std::size_t size() const { return n_; }
    const std::string& label(std::uint32_t u) const { return labels_[u]; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::span<const Neighbor> out(std::uint32_t u) const {
        return {out_.data() + out_off_[u], out_off_[u + 1] - out_off_[u]};
    }
    std::span<const Neighbor> in(std::uint32_t u) const {
        return {in_.data() + in_off_[u], in_off_[u + 1] - in_off_[u]};
    }
    double loop_weight(std::uint32_t u) const { return loop_weight_[u]; }

    std::size_t arc_count() const { return out_.size(); } // loops included
    std::size_t loop_count() const { return loop_count_; }
    double total_weight() const { return total_weight_; }

    std::vector<ArcTriple> arcs() const; // sorted by (source, target)

private:
    std::size_t n_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::size_t> out_off_, in_off_;
    std::vector<Neighbor> out_, in_;
    std::vector<double> loop_weight_;
    std::size_t loop_count_ = 0;
    double total_weight_ = 0;
};

CitationNetwork build(const netio::RawNetworkFile& raw);
netio::RawNetworkFile to_raw(const CitationNetwork& net);

struct ComponentResult {
    std::vector<std::uint32_t> component_of; // ids in decreasing size order
    std::vector<std::size_t> sizes;
};
ComponentResult weak_components(const CitationNetwork& net);

// Induced subnetwork; node order and labels follow the original network.
CitationNetwork restrict_to(const CitationNetwork& net, std::span<const std::uint32_t> nodes);

struct NetworkSummary {
    std::size_t nodes = 0;
    std::size_t links = 0; // arcs, loops included
    std::size_t loops = 0;
    double total_citations = 0;
    double density = 0;
    double average_total_degree = 0;
    double average_distance = 0;
    std::size_t maximum_distance = 0;
    double clustering_coefficient = 0;
    bool distances_defined = true; // false when no reachable ordered pair exists
};

double density_formula(std::size_t nodes, std::size_t links);
double average_total_degree_formula(std::size_t nodes, std::size_t links);

// Distances and clustering use the undirected binarized view; distances
// average over reachable ordered pairs only.
NetworkSummary summarize(const CitationNetwork& net, int threads = 0);

CitationNetwork binarize(const CitationNetwork& net);
// Off-diagonal weights are replaced by w(i,j)+w(j,i) on both sides; loops kept.
CitationNetwork symmetrize(const CitationNetwork& net);
CitationNetwork drop_loops(const CitationNetwork& net);

enum class NeighborhoodMode { integration, diffusion };

struct NeighborhoodResult {
    std::uint32_t focal = 0;
    NeighborhoodMode mode = NeighborhoodMode::integration;
    std::vector<std::uint32_t> members; // original indices, sorted
    CitationNetwork subnetwork;

    bool empty() const { return members.empty(); }
};

// integration: induced subnetwork on the focal's cited set (out-neighbors);
// diffusion: on its citing set (in-neighbors).
NeighborhoodResult neighborhood(const CitationNetwork& net, std::uint32_t focal,
                                NeighborhoodMode mode, bool include_focal);

// Scale-model generator: skewed degree and weight distributions, loops
// included, deterministic for a given seed.
CitationNetwork synthetic_citation_network(std::size_t nodes, std::size_t target_arcs,
                                           std::uint64_t seed);

} // namespace raonet::graph
