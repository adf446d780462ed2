#pragma once

#include "raonet/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <list>
#include <span>
#include <unordered_map>
#include <vector>

namespace raonet::diversity {

// cited: partners and totals come from received citations (in-columns);
// citing: from references given (out-rows).
enum class Direction { cited, citing };

// same_direction compares partner profiles taken in the analyzed direction;
// orthogonal swaps the profile side.
enum class Convention { same_direction, orthogonal };

Direction direction_from_string(const std::string& name);
Convention convention_from_string(const std::string& name);
std::string to_string(Direction d);
std::string to_string(Convention c);

bool profile_uses_out(Direction direction, Convention convention);

struct ProbabilityVector {
    std::uint32_t focal = 0;
    Direction direction = Direction::cited;
    std::vector<std::pair<std::uint32_t, double>> entries; // (partner, p), p sums to 1
    double total = 0;

    bool zero() const { return entries.empty(); }
};

// Totals are recounted inside the current network, so restricted subsets use
// subset-internal marginals.
ProbabilityVector probability_vector(const graph::CitationNetwork& net, std::uint32_t focal,
                                     Direction direction);

// 1 - cosine between partner profiles, with an LRU row cache. Zero profiles
// get cosine 0 (distance 1); the diagonal is 0. Pairs are evaluated in a
// canonical orientation so d(i,j) == d(j,i) exactly. Not internally
// synchronized; use one provider per thread.
class DistanceProvider {
public:
    DistanceProvider(const graph::CitationNetwork& net, Direction direction,
                     Convention convention, std::size_t max_cached_rows = 12288);

    double distance(std::uint32_t i, std::uint32_t j);
    std::span<const double> cosine_row(std::uint32_t i);

    Direction direction() const { return direction_; }
    Convention convention() const { return convention_; }
    bool zero_profile(std::uint32_t u) const { return norms_[u] == 0; }
    std::size_t cached_rows() const { return cache_.size(); }

private:
    const graph::CitationNetwork& net_;
    Direction direction_;
    Convention convention_;
    bool use_out_;
    std::size_t max_rows_;
    std::vector<double> norms_;
    std::list<std::pair<std::uint32_t, std::vector<double>>> cache_; // front = most recent
    std::unordered_map<std::uint32_t, decltype(cache_)::iterator> index_;
};

enum RecordFlag : unsigned {
    flag_zero_cited = 1u,
    flag_zero_citing = 2u,
    flag_saturated_cited = 4u,
    flag_saturated_citing = 8u,
};

struct DiversityRecord {
    std::uint32_t node = 0;
    std::string label;
    double delta_cited = 0, d2_cited = 1;
    double delta_citing = 0, d2_citing = 1;
    double sum_cited = 0, sum_citing = 0;
    unsigned flags = 0;
};

// Delta values this close to 1 are reported with the sentinel below instead
// of an unbounded 1/(1-delta), keeping CSV output finite.
constexpr double kSaturationThreshold = 1.0 - 1e-12;
constexpr double kSaturatedTrueDiversity = 1e12;

double true_diversity(double delta, bool& saturated);

struct RaoResult {
    double delta = 0;
    double d2 = 1;
    bool zero = false;
    bool saturated = false;
};

// Reference evaluation of the quadratic entropy over ordered partner
// pairs; the provider must share the vector's direction.
RaoResult rao_stirling(const ProbabilityVector& p, DistanceProvider& provider);

// Per-node diversity in both directions. The parallel kernel accumulates
// partner profiles into a dense register instead of enumerating partner
// pairs, which is algebraically identical and scales as the sum of partner
// profile sizes. Output slots are per-node, so results are bitwise identical
// at any worker count.
std::vector<DiversityRecord> diversity_all(const graph::CitationNetwork& net,
                                           Convention convention, int threads = 0);

// Serial reference: explicit pair loop over cached cosine rows.
std::vector<DiversityRecord> diversity_all_serial(const graph::CitationNetwork& net,
                                                  Convention convention,
                                                  std::size_t max_cached_rows = 12288);

enum class DecompositionMode { local, grand_matrix };

DecompositionMode decomposition_mode_from_string(const std::string& name);
std::string to_string(DecompositionMode m);

struct GroupDecomposition {
    int group = 0;
    double within_delta = 0;
    double within_d2 = 0; // sum of member true diversities
    std::size_t node_count = 0;
    std::size_t pair_cell_count = 0; // s*(s-1)
};

struct DecompositionReport {
    Direction direction = Direction::cited;
    DecompositionMode mode = DecompositionMode::grand_matrix;
    double total_delta = 0;
    double between_delta = 0; // grand_matrix only
    double between_share = 0;
    std::vector<GroupDecomposition> per_group; // ascending group id
    std::size_t within_cell_count = 0;
    std::size_t total_cell_count = 0;
};

// local: each group is restricted to its sub-matrix and re-normalized;
// grand_matrix: cell values from the full matrix are attributed to the pair's
// shared group or to "between", so total = sum(within) + between.
DecompositionReport decompose(const graph::CitationNetwork& net, std::span<const int> group_of,
                              Direction direction, Convention convention, DecompositionMode mode,
                              int threads = 0);

struct CellEmitOptions {
    std::size_t warn_row_threshold = 10'000'000;
    int precision = 0; // 0 = shortest round-trip form
    const std::vector<std::uint32_t>* focal_filter = nullptr;
    std::ostream* warn_stream = nullptr;
};

// Streams focal,i,j,p_i,p_j,d_ij,cell rows (1-based ids) for all ordered
// partner pairs with p_i*p_j > 0. Returns the number of rows written.
std::size_t emit_cell_values(const graph::CitationNetwork& net, Direction direction,
                             Convention convention, std::ostream& sink,
                             const CellEmitOptions& options = {});

struct GroupAggregate {
    int group = 0;
    std::size_t count = 0;
    double sum = 0;
    double mean = 0;
    double standard_error = 0; // n-1 standard deviation over sqrt(n)
    bool mean_defined = false;
    bool se_defined = false;
};

std::vector<GroupAggregate> group_aggregate(std::span<const double> values,
                                            std::span<const int> group_of,
                                            const std::vector<int>* groups = nullptr);

} // namespace raonet::diversity
