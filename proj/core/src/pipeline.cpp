#include "polypack/pipeline.hpp"

#include <stdexcept>
#include <thread>

#include "polypack/io.hpp"

namespace polypack {

PackingState state_from_solution(const Instance& instance, const Solution& solution) {
    PackingState state(instance);
    for (const Placement& p : solution.placements) {
        if (!state.can_place(p.item_index, p.translation)) {
            throw std::runtime_error("solution is not feasible; cannot rebuild packing state");
        }
        state.place(p.item_index, p.translation);
    }
    return state;
}

namespace {

Solution run_one(const Instance& instance, PipelineSpec spec, std::uint64_t seed,
                 std::vector<TraceEntry>* trace) {
    spec.greedy.seed = seed;
    spec.clusters.seed = seed;
    spec.ls.seed = seed + 0x9e37;

    Solution initial;
    switch (spec.init) {
    case PipelineSpec::Init::Greedy:
        if (spec.use_clusters) {
            ClusterPool pool;
            if (!spec.clusters_file.empty()) {
                pool = load_cluster_pool(spec.clusters_file, instance);
            } else {
                Rng rng(seed);
                std::vector<CompatGraph> graphs;
                if (instance.items.size() <= 200) {
                    // small instances: a single clique is affordable
                    ClusterConfig all = spec.clusters;
                    all.rand_group_size = static_cast<int>(instance.items.size());
                    graphs.push_back(build_rand_graph(instance, all, rng));
                } else {
                    graphs.push_back(build_rand_graph(instance, spec.clusters, rng));
                    graphs.push_back(build_skinny_graph(instance, spec.clusters));
                    graphs.push_back(build_concav_graph(instance));
                    graphs.push_back(build_shear_graph(instance));
                    graphs.push_back(build_atris_graph(instance));
                }
                pool = generate_clusters(instance, graphs, spec.clusters, rng);
            }
            initial = greedy_pack_with_clusters(instance, pool, spec.greedy, spec.clusters);
        } else {
            initial = greedy_pack(instance, spec.greedy);
        }
        break;
    case PipelineSpec::Init::Ip: {
        Rng rng(seed);
        if (spec.ip_partition_x > 1 || spec.ip_partition_y > 1) {
            PartitionConfig cfg;
            cfg.cells_x = spec.ip_partition_x;
            cfg.cells_y = spec.ip_partition_y;
            cfg.samples_per_item = spec.ip_samples_per_item;
            cfg.per_cell = spec.ip_refine;
            initial = partition_and_solve(instance, cfg, rng);
        } else {
            CandidateSet cands = sample_uniform(instance, spec.ip_samples_per_item, rng);
            const ConflictGraph graph = build_conflict_graph(cands, instance);
            const ExactSolution res = solve_exact(graph, spec.ip_refine.limits);
            initial = selection_to_solution(cands, res.selected, instance);
            initial = refine(instance, initial, spec.ip_refine, rng);
        }
        break;
    }
    case PipelineSpec::Init::Load:
        initial = load_solution(spec.load_path);
        if (!initial.instance_name.empty() && initial.instance_name != instance.name) {
            throw std::runtime_error("loaded solution names instance '" + initial.instance_name +
                                     "', expected '" + instance.name + "'");
        }
        break;
    }
    initial.instance_name = instance.name;

    if (spec.ls.time_limit_seconds > 0.0 || spec.ls.iteration_budget > 0) {
        PackingState state = state_from_solution(instance, initial);
        Rng rng(seed);
        PositionList positions =
            build_position_list(instance.container, spec.greedy.n_grid_points, rng);
        return optimize(state, spec.ls, positions, spec.greedy, trace);
    }
    return initial;
}

} // namespace

PipelineResult run_pipeline(const Instance& instance, const PipelineSpec& spec,
                            bool collect_trace) {
    const int replicas = std::max(1, spec.replicas);
    std::vector<Solution> results(replicas);
    std::vector<std::string> errors(replicas);
    std::vector<TraceEntry> trace;

    auto worker = [&](int r) {
        try {
            results[r] = run_one(instance, spec, spec.seed + static_cast<std::uint64_t>(r),
                                 (collect_trace && replicas == 1 && r == 0) ? &trace : nullptr);
        } catch (const std::exception& e) {
            errors[r] = e.what();
        }
    };

    if (replicas == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(replicas);
        for (int r = 0; r < replicas; ++r) threads.emplace_back(worker, r);
        for (std::thread& t : threads) t.join();
    }
    for (int r = 0; r < replicas; ++r) {
        if (!errors[r].empty()) throw std::runtime_error("replica " + std::to_string(r) + ": " +
                                                         errors[r]);
    }

    PipelineResult out;
    out.trace = std::move(trace);
    std::int64_t best = -1;
    for (int r = 0; r < replicas; ++r) {
        const std::int64_t v = solution_value(instance, results[r]);
        if (v > best) {
            best = v;
            out.best = results[r];
            out.value = v;
            out.winner_replica = r;
        }
    }
    return out;
}

} // namespace polypack
