#pragma once

#include "raonet/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace raonet::centrality {

// Arc weight -> path length. inverse treats heavier citation traffic as
// shorter distance; the mode is recorded in run manifests.
enum class LengthMode { inverse, unit, max_plus_one_minus };

LengthMode length_mode_from_string(const std::string& name);
std::string to_string(LengthMode mode);

struct CentralityRecord {
    std::uint32_t node = 0;
    double bc_raw = 0;
    double bc_normalized = 0;
    double bc_valued_raw = 0;
    double bc_valued_normalized = 0;
};

// Raw betweenness: sum over ordered pairs (i,j), i!=j!=k, of the geodesic
// share through k. Loops are ignored; geodesics are directed.
//
// The parallel kernels accumulate per-source dependencies into fixed source
// blocks and reduce blocks in index order, so results are bitwise identical
// for any worker count. The _serial variants are the reference
// implementations kept for testing and benchmarking.
std::vector<double> bc_binary_scores(const graph::CitationNetwork& net, int threads = 0);
std::vector<double> bc_binary_scores_serial(const graph::CitationNetwork& net);
std::vector<double> bc_valued_scores(const graph::CitationNetwork& net, LengthMode mode,
                                     int threads = 0);
std::vector<double> bc_valued_scores_serial(const graph::CitationNetwork& net, LengthMode mode);

// (n-1)(n-2) for n >= 3, else 0; normalized scores are percentages.
double bc_normalization(std::size_t n);
std::vector<double> normalize_scores(std::span<const double> raw, std::size_t n);

// Equal-length comparison for real-valued path lengths.
bool nearly_equal_length(double a, double b);

std::vector<CentralityRecord> bc_binary(const graph::CitationNetwork& net, int threads = 0);
std::vector<CentralityRecord> bc_valued(const graph::CitationNetwork& net, LengthMode mode,
                                        int threads = 0);

struct RankedRow {
    std::size_t rank;
    std::uint32_t node;
    double value;
};

// Descending by value, ties broken by label and sharing the smaller rank.
std::vector<RankedRow> rank_table(std::span<const double> values,
                                  std::span<const std::string> labels);

} // namespace raonet::centrality
