#include "cli_app.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polypack/generators.hpp"
#include "polypack/io.hpp"
#include "polypack/pipeline.hpp"

namespace polypack::cli {

namespace {

UtilityKind parse_utility(const std::string& s) {
    if (s == "value") return UtilityKind::Value;
    if (s == "value_per_area") return UtilityKind::ValuePerArea;
    if (s == "value15_per_area") return UtilityKind::Value15PerArea;
    if (s == "elongation") return UtilityKind::ElongationWeighted;
    throw CLI::ValidationError("--utility",
                               "want value|value_per_area|value15_per_area|elongation");
}

struct SolveOptions {
    std::string instance_path;
    std::string out_path;
    std::string init = "greedy";
    std::string load_solution_path;
    bool clusters = false;
    std::string clusters_file;
    std::string utility = "value15_per_area";
    int push_strategy = 3;
    int grid_points = 1000;
    int tries = 5;
    std::int64_t jitter = 0;
    double ls_seconds = 0.0;
    std::int64_t ls_iterations = 0;
    double p_fill = 0.5;
    std::int64_t dig_radius = 0;
    int dig_max_items = 0;
    std::uint64_t seed = 1;
    int replicas = 1;
    int ip_samples = 64;
    int ip_rounds = 4;
    std::int64_t ip_nodes = 200000;
    std::string ip_partition;
    int cluster_m = 4;
    int cluster_max_generation = 4;
    double cluster_alpha = 1.5;
    std::string trace_path;
};

int cmd_solve(const SolveOptions& opt) {
    const auto started = std::chrono::steady_clock::now();
    const Instance instance = load_instance(opt.instance_path);

    PipelineSpec spec;
    if (opt.init == "greedy") {
        spec.init = PipelineSpec::Init::Greedy;
    } else if (opt.init == "ip") {
        spec.init = PipelineSpec::Init::Ip;
    } else if (opt.init == "load") {
        spec.init = PipelineSpec::Init::Load;
        if (opt.load_solution_path.empty()) {
            throw std::runtime_error("--init load requires --load-solution");
        }
        spec.load_path = opt.load_solution_path;
    } else {
        throw std::runtime_error("--init must be greedy, ip or load");
    }
    spec.use_clusters = opt.clusters;
    spec.clusters_file = opt.clusters_file;
    spec.clusters.m_per_item = opt.cluster_m;
    spec.clusters.max_generation = opt.cluster_max_generation;
    spec.clusters.alpha = opt.cluster_alpha;
    spec.greedy.n_grid_points = opt.grid_points;
    spec.greedy.random_tries_per_point = opt.tries;
    spec.greedy.jitter_radius = opt.jitter;
    spec.greedy.utility = parse_utility(opt.utility);
    if (opt.push_strategy < 1 || opt.push_strategy > 4) {
        throw std::runtime_error("--push-strategy must be 1..4");
    }
    spec.greedy.push_strategy = static_cast<PushStrategy>(opt.push_strategy);
    spec.ip_samples_per_item = opt.ip_samples;
    spec.ip_refine.rounds = opt.ip_rounds;
    spec.ip_refine.limits.max_nodes = opt.ip_nodes;
    if (!opt.ip_partition.empty()) {
        int cx = 0, cy = 0;
        if (std::sscanf(opt.ip_partition.c_str(), "%dx%d", &cx, &cy) != 2 || cx < 1 || cy < 1) {
            throw std::runtime_error("--ip-partition wants CxR, e.g. 2x2");
        }
        spec.ip_partition_x = cx;
        spec.ip_partition_y = cy;
    }
    spec.ls.time_limit_seconds = opt.ls_seconds;
    spec.ls.iteration_budget = opt.ls_iterations;
    spec.ls.p_fill = opt.p_fill;
    if (opt.dig_radius > 0) spec.ls.dig_radius = opt.dig_radius;
    if (opt.dig_max_items > 0) spec.ls.dig_max_items = opt.dig_max_items;
    spec.ls.seed = opt.seed;
    spec.seed = opt.seed;
    spec.replicas = opt.replicas;

    const PipelineResult result = run_pipeline(instance, spec, !opt.trace_path.empty());

    const VerifyReport report = verify(instance, result.best);
    if (!report.feasible) {
        std::cerr << "internal error: pipeline produced an infeasible solution\n";
        for (const Violation& v : report.violations) std::cerr << "  " << v.message << "\n";
        return 3;
    }
    if (!opt.out_path.empty()) save_solution(result.best, opt.out_path);
    if (!opt.trace_path.empty()) {
        std::ofstream trace(opt.trace_path);
        if (!trace) throw std::runtime_error("cannot open trace file: " + opt.trace_path);
        trace << "elapsed,iteration,best_value\n";
        for (const TraceEntry& t : result.trace) {
            trace << t.elapsed_seconds << ',' << t.iteration << ',' << t.best_value << "\n";
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cout << "instance=" << instance.name << " value=" << result.value
              << " placements=" << result.best.placements.size() << " replica="
              << result.winner_replica << " elapsed=" << elapsed << "s\n";
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path,
               std::int64_t best_value) {
    const Instance instance = load_instance(instance_path);
    const Solution solution = load_solution(solution_path);
    const VerifyReport report = verify(instance, solution);
    std::cout << (report.feasible ? "feasible" : "infeasible") << " value=" << report.total_value
              << " placements=" << solution.placements.size() << "\n";
    if (best_value > 0) {
        const ValueRatio r = value_ratio(report.total_value, best_value);
        std::cout << "value_ratio=" << r.ratio << " score=" << r.score << "\n";
    }
    for (const Violation& v : report.violations) std::cout << "violation: " << v.message << "\n";
    return report.feasible ? 0 : 1;
}

int cmd_render(const std::string& instance_path, const std::string& solution_path,
               const std::string& out_path) {
    const Instance instance = load_instance(instance_path);
    const Solution solution = load_solution(solution_path);
    write_file(out_path, render_svg(instance, solution));
    return 0;
}

struct GenOptions {
    std::string kind;
    std::string out_path;
    int items = 50;
    int k = 5;
    std::int64_t cell = 20;
    int max_cells = 8;
    std::string values = "unit";
    std::uint64_t seed = 1;
};

int cmd_gen(const GenOptions& opt) {
    const ValuesMode mode = values_mode_from_string(opt.values);
    Instance instance;
    if (opt.kind == "tiling") {
        instance = gen_tiling(opt.k, opt.cell, mode, opt.seed);
    } else if (opt.kind == "convex") {
        instance = gen_convex(opt.items, mode, opt.seed);
    } else if (opt.kind == "polyomino") {
        instance = gen_polyomino(opt.items, opt.max_cells, mode, opt.seed);
    } else {
        throw std::invalid_argument("gen kind must be tiling, convex or polyomino");
    }
    save_instance(instance, opt.out_path);
    std::cout << "instance=" << instance.name << " items=" << instance.items.size() << " out="
              << opt.out_path << "\n";
    return 0;
}

int cmd_export_lp(const std::string& instance_path, const std::string& out_path, int samples,
                  std::uint64_t seed) {
    const Instance instance = load_instance(instance_path);
    Rng rng(seed);
    const CandidateSet cands = sample_uniform(instance, samples, rng);
    const ConflictGraph graph = build_conflict_graph(cands, instance);
    export_lp_file(graph, out_path);
    std::cout << "vertices=" << graph.size() << " edges=" << graph.edges.size() << " out="
              << out_path << "\n";
    return 0;
}

struct ClustersOptions {
    std::string instance_path;
    std::string out_path;
    double alpha = 1.5;
    int m = 4;
    int max_generation = 4;
    double gauss_sigma = 0.0;
    int grid_points = 300;
    std::uint64_t seed = 1;
};

int cmd_clusters(const ClustersOptions& opt) {
    const Instance instance = load_instance(opt.instance_path);
    ClusterConfig cfg;
    cfg.alpha = opt.alpha;
    cfg.m_per_item = opt.m;
    cfg.max_generation = opt.max_generation;
    cfg.gauss_sigma = opt.gauss_sigma;
    cfg.grid_points_assembly = opt.grid_points;
    cfg.seed = opt.seed;
    Rng rng(opt.seed);
    std::vector<CompatGraph> graphs;
    if (instance.items.size() <= 200) {
        ClusterConfig all = cfg;
        all.rand_group_size = static_cast<int>(instance.items.size());
        graphs.push_back(build_rand_graph(instance, all, rng));
    } else {
        graphs.push_back(build_rand_graph(instance, cfg, rng));
        graphs.push_back(build_skinny_graph(instance, cfg));
        graphs.push_back(build_concav_graph(instance));
        graphs.push_back(build_shear_graph(instance));
        graphs.push_back(build_atris_graph(instance));
    }
    const ClusterPool pool = generate_clusters(instance, graphs, cfg, rng);
    save_cluster_pool(pool, instance.name, opt.out_path);
    std::cout << "clusters=" << pool.clusters.size() << " out=" << opt.out_path << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"polypack: solvers for the knapsack polygonal packing problem"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve", "Pack an instance and write the solution");
    solve->add_option("instance", solve_opt.instance_path, "Instance JSON")->required();
    solve->add_option("--out,-o", solve_opt.out_path, "Output solution JSON");
    solve->add_option("--init", solve_opt.init, "Initial solution: greedy|ip|load");
    solve->add_option("--load-solution", solve_opt.load_solution_path,
                      "Solution file for --init load");
    solve->add_flag("--clusters", solve_opt.clusters, "Enable cluster preprocessing");
    solve->add_option("--clusters-file", solve_opt.clusters_file, "Precomputed cluster pool");
    solve->add_option("--utility", solve_opt.utility,
                      "value|value_per_area|value15_per_area|elongation");
    solve->add_option("--push-strategy", solve_opt.push_strategy, "Push direction strategy 1..4");
    solve->add_option("--grid-points", solve_opt.grid_points, "Grid positions in the list L");
    solve->add_option("--tries", solve_opt.tries, "Random probes per grid position");
    solve->add_option("--jitter", solve_opt.jitter, "Probe jitter radius (0 = 2x pitch)");
    solve->add_option("--ls-seconds", solve_opt.ls_seconds, "Local search wall-clock budget");
    solve->add_option("--ls-iterations", solve_opt.ls_iterations,
                      "Local search iteration budget (reproducible)");
    solve->add_option("--p-fill", solve_opt.p_fill, "Probability of fill over dig");
    solve->add_option("--dig-radius", solve_opt.dig_radius, "Restrict dig pushes to this radius");
    solve->add_option("--dig-max-items", solve_opt.dig_max_items,
                      "Restrict dig pushes to the nearest k items");
    solve->add_option("--seed", solve_opt.seed, "Random seed");
    solve->add_option("--replicas", solve_opt.replicas, "Independent seeded runs; best wins");
    solve->add_option("--ip-samples", solve_opt.ip_samples, "Uniform candidates per item");
    solve->add_option("--ip-rounds", solve_opt.ip_rounds, "Gaussian refinement rounds");
    solve->add_option("--ip-nodes", solve_opt.ip_nodes, "Branch-and-bound node budget");
    solve->add_option("--ip-partition", solve_opt.ip_partition,
                      "Partitioned IP grid, e.g. 2x2 (large instances)");
    solve->add_option("--cluster-m", solve_opt.cluster_m, "Clusters retained per item");
    solve->add_option("--cluster-max-generation", solve_opt.cluster_max_generation,
                      "Largest cluster size");
    solve->add_option("--cluster-alpha", solve_opt.cluster_alpha, "Cluster utility exponent");
    solve->add_option("--trace", solve_opt.trace_path, "Write a best-value CSV trace");

    std::string verify_instance, verify_solution;
    std::int64_t verify_best = 0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Check feasibility of a solution");
    verify_cmd->add_option("instance", verify_instance, "Instance JSON")->required();
    verify_cmd->add_option("solution", verify_solution, "Solution JSON")->required();
    verify_cmd->add_option("--best-value", verify_best,
                           "Known best value; prints the value ratio and score");

    std::string render_instance, render_solution, render_out;
    CLI::App* render_cmd = app.add_subcommand("render", "Write an SVG of a solution");
    render_cmd->add_option("instance", render_instance, "Instance JSON")->required();
    render_cmd->add_option("solution", render_solution, "Solution JSON")->required();
    render_cmd->add_option("out", render_out, "Output SVG path")->required();

    GenOptions gen_opt;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic instance");
    gen_cmd->add_option("kind", gen_opt.kind, "tiling|convex|polyomino")->required();
    gen_cmd->add_option("--out,-o", gen_opt.out_path, "Output instance JSON")->required();
    gen_cmd->add_option("--items", gen_opt.items, "Number of items (convex/polyomino)");
    gen_cmd->add_option("--k", gen_opt.k, "Tiling: k x k squares");
    gen_cmd->add_option("--cell", gen_opt.cell, "Tiling: square side");
    gen_cmd->add_option("--max-cells", gen_opt.max_cells, "Polyomino: cells per item");
    gen_cmd->add_option("--values", gen_opt.values, "unit|random|area");
    gen_cmd->add_option("--seed", gen_opt.seed, "Random seed");

    std::string lp_instance, lp_out;
    int lp_samples = 16;
    std::uint64_t lp_seed = 1;
    CLI::App* lp_cmd = app.add_subcommand("export-lp", "Write the conflict graph as an LP model");
    lp_cmd->add_option("instance", lp_instance, "Instance JSON")->required();
    lp_cmd->add_option("out", lp_out, "Output LP path")->required();
    lp_cmd->add_option("--samples", lp_samples, "Uniform candidates per item");
    lp_cmd->add_option("--seed", lp_seed, "Random seed");

    ClustersOptions cl_opt;
    CLI::App* cl_cmd = app.add_subcommand("clusters", "Precompute a cluster pool");
    cl_cmd->add_option("instance", cl_opt.instance_path, "Instance JSON")->required();
    cl_cmd->add_option("out", cl_opt.out_path, "Output cluster pool JSON")->required();
    cl_cmd->add_option("--alpha", cl_opt.alpha, "Utility exponent in [1,2]");
    cl_cmd->add_option("--m", cl_opt.m, "Clusters retained per item");
    cl_cmd->add_option("--max-generation", cl_opt.max_generation, "Largest cluster size");
    cl_cmd->add_option("--gauss-sigma", cl_opt.gauss_sigma, "Utility diversification sigma");
    cl_cmd->add_option("--grid-points", cl_opt.grid_points, "Assembly grid points (100..1000)");
    cl_cmd->add_option("--seed", cl_opt.seed, "Random seed");

    // every subcommand accepts a key = value config file; flags take precedence
    for (CLI::App* sub : {solve, verify_cmd, render_cmd, gen_cmd, lp_cmd, cl_cmd}) {
        sub->set_config("--config", "", "Read options from a key = value file");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_opt);
        if (verify_cmd->parsed()) return cmd_verify(verify_instance, verify_solution, verify_best);
        if (render_cmd->parsed()) return cmd_render(render_instance, render_solution, render_out);
        if (gen_cmd->parsed()) return cmd_gen(gen_opt);
        if (lp_cmd->parsed()) return cmd_export_lp(lp_instance, lp_out, lp_samples, lp_seed);
        if (cl_cmd->parsed()) return cmd_clusters(cl_opt);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

} // namespace polypack::cli
