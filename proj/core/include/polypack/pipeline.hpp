#pragma once

#include <cstdint>
#include <string>

#include "polypack/clusters.hpp"
#include "polypack/greedy.hpp"
#include "polypack/ip.hpp"
#include "polypack/local_search.hpp"

namespace polypack {

// Full solve pipeline: an initial solution (greedy, cluster-augmented greedy,
// IP, or a loaded file) optionally improved by local search; `replicas`
// independent seeded runs race and the best verified solution wins.
struct PipelineSpec {
    enum class Init { Greedy, Ip, Load };
    Init init = Init::Greedy;
    std::string load_path;

    bool use_clusters = false;
    ClusterConfig clusters;
    std::string clusters_file; // optional precomputed pool

    GreedyConfig greedy;

    int ip_samples_per_item = 64;
    RefinementSchedule ip_refine;
    int ip_partition_x = 1; // > 1 enables the partitioned IP path
    int ip_partition_y = 1;

    LsConfig ls; // runs when a time limit or iteration budget is set

    int replicas = 1;
    std::uint64_t seed = 1;
};

struct PipelineResult {
    Solution best;
    std::int64_t value = 0;
    int winner_replica = 0;
    std::vector<TraceEntry> trace; // filled when replicas == 1 and tracing is on
};

PipelineResult run_pipeline(const Instance& instance, const PipelineSpec& spec,
                            bool collect_trace = false);

// Rebuilds a PackingState from a feasible solution.
PackingState state_from_solution(const Instance& instance, const Solution& solution);

} // namespace polypack
