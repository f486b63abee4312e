#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polypack/packing.hpp"
#include "polypack/rng.hpp"

namespace polypack {

struct Candidate {
    int item = -1;
    Point translation;
    std::int64_t weight = 0;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
};

// Up to per_item uniformly random feasible translations for each item,
// deduplicated. Items that fit nowhere contribute nothing.
CandidateSet sample_uniform(const Instance& instance, int per_item, Rng& rng);

// For every placement of the solution: the zero offset plus k Gaussian
// offsets (mean 0, stddev sigma, rounded), filtered by containment. The zero
// offsets keep the incumbent solution representable.
CandidateSet neighborhood_candidates(const Instance& instance, const Solution& solution,
                                     double sigma, int k, Rng& rng);

// Sorts by (item, translation) and removes exact duplicates.
void dedup_candidates(CandidateSet& set);

// Candidate placements as weighted vertices; type-1 edges join overlapping
// pairs; one clique per item with capacity q_i bounds the copy count.
struct ConflictGraph {
    std::vector<std::int64_t> weights;
    std::vector<int> vertex_item;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> cliques; // per instance item index
    std::vector<int> clique_caps;

    int size() const { return static_cast<int>(weights.size()); }
};

ConflictGraph build_conflict_graph(const CandidateSet& set, const Instance& instance);

struct SolverLimits {
    std::int64_t max_nodes = 0; // 0 = unlimited
    double max_seconds = 0.0;   // 0 = unlimited; breaks determinism when hit
};

struct ExactSolution {
    std::vector<int> selected; // vertex ids, ascending
    std::int64_t value = 0;
    bool proven_optimal = false;
    std::int64_t nodes = 0;
};

// Deterministic branch-and-bound for the maximum-weight selection subject to
// type-1 edges and clique capacities.
ExactSolution solve_exact(const ConflictGraph& graph, const SolverLimits& limits = {});

// LP-format model: one binary variable x_<vertex id> per vertex, x_u+x_v <= 1
// per type-1 edge, sum over clique <= q_i per clique.
void export_lp(const ConflictGraph& graph, std::ostream& out);
void export_lp_file(const ConflictGraph& graph, const std::string& path);

// Assignment file: one "x_<id> <0-or-1>" line per variable (values within
// 1e-6 of an integer). Returns the selected ids. Throws std::runtime_error
// naming the offending line on malformed input, unknown or duplicate ids.
std::vector<int> import_assignment(std::istream& in, int n_vertices);
std::vector<int> import_assignment_file(const std::string& path, int n_vertices);

Solution selection_to_solution(const CandidateSet& set, const std::vector<int>& selected,
                               const Instance& instance);

std::int64_t solution_value(const Instance& instance, const Solution& solution);

struct RefinementSchedule {
    double sigma0 = 0.0; // 0 = auto: a tenth of the container's larger span
    double decay = 0.5;
    int rounds = 4;
    int neighbors_per_placement = 8;
    int uniform_extra_per_item = 5;
    SolverLimits limits{200000, 0.0};
};

// Repeated re-solve around the incumbent with shrinking Gaussian noise. The
// new solution is adopted only if its value does not drop.
Solution refine(const Instance& instance, const Solution& initial, const RefinementSchedule& sched,
                Rng& rng);

struct PartitionConfig {
    int cells_x = 2;
    int cells_y = 2;
    int samples_per_item = 32;
    RefinementSchedule per_cell;
};

// Splits the container along a square grid into interior-disjoint convex
// sub-containers, deals the item copies to cells by longest-edge slope (ties:
// diameter slope), solves each cell independently and concatenates.
Solution partition_and_solve(const Instance& instance, const PartitionConfig& cfg, Rng& rng);

// The inward-rounded convex sub-containers themselves (exposed for tests).
std::vector<Polygon> partition_cells(const Instance& instance, int cells_x, int cells_y);

} // namespace polypack
