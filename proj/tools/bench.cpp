// Benchmark of the OpenMP kernels against the serial reference
// implementations on synthetic citation networks.
//
//   raonet_bench [nodes] [arcs] [threads]

#include "raonet/centrality.hpp"
#include "raonet/diversity.hpp"
#include "raonet/graph.hpp"
#include "raonet/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t nodes = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
    std::size_t arcs = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 80000;
    int threads = argc > 3 ? std::atoi(argv[3]) : raonet::parallel::default_workers();

    std::printf("synthetic network: %zu nodes, target %zu arcs, %d threads\n", nodes, arcs,
                threads);
    auto net = raonet::graph::synthetic_citation_network(nodes, arcs, 42);
    std::printf("built: %zu arcs (%zu loops)\n\n", net.arc_count(), net.loop_count());

    {
        auto t0 = Clock::now();
        auto serial = raonet::centrality::bc_binary_scores_serial(net);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = raonet::centrality::bc_binary_scores(net, threads);
        double tp = seconds_since(t0);
        std::printf("binary BC   serial %8.3fs  parallel %8.3fs  speedup %.2fx  maxdiff %.2e\n",
                    ts, tp, ts / tp, max_abs_diff(serial, parallel));
    }
    {
        auto t0 = Clock::now();
        auto serial =
            raonet::centrality::bc_valued_scores_serial(net, raonet::centrality::LengthMode::inverse);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = raonet::centrality::bc_valued_scores(
            net, raonet::centrality::LengthMode::inverse, threads);
        double tp = seconds_since(t0);
        std::printf("valued BC   serial %8.3fs  parallel %8.3fs  speedup %.2fx  maxdiff %.2e\n",
                    ts, tp, ts / tp, max_abs_diff(serial, parallel));
    }
    {
        auto convention = raonet::diversity::Convention::same_direction;
        auto t0 = Clock::now();
        auto serial = raonet::diversity::diversity_all_serial(net, convention, nodes);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        auto parallel = raonet::diversity::diversity_all(net, convention, threads);
        double tp = seconds_since(t0);
        double md = 0;
        for (std::size_t i = 0; i < serial.size(); ++i) {
            md = std::max(md, std::fabs(serial[i].delta_cited - parallel[i].delta_cited));
            md = std::max(md, std::fabs(serial[i].delta_citing - parallel[i].delta_citing));
        }
        std::printf("diversity   serial %8.3fs  parallel %8.3fs  speedup %.2fx  maxdiff %.2e\n",
                    ts, tp, ts / tp, md);
    }
    return 0;
}
