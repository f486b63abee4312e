#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polypack/greedy.hpp"
#include "polypack/packing.hpp"
#include "polypack/rng.hpp"

namespace polypack {

// A rigid multiset of items with fixed relative offsets, packable as one
// unit. Scored by cluster utility = gauss * value^alpha * penalty / area.
struct ClusterMember {
    int item_index = -1;
    Point offset;
};

struct Cluster {
    std::vector<ClusterMember> members; // pairwise interior-disjoint
    Polygon hull;                       // convex hull of all member vertices
    ChainSet hull_chains;
    ShapeMetrics hull_metrics;
    std::int64_t union_value = 0;
    Wide hull_doubled_area = 0;
    Wide sum_item_doubled_area = 0;
    double utility = 0.0;
};

enum class AreaMode { HullArea, WeightedMix };

struct ClusterConfig {
    double alpha = 1.5;             // utility exponent, in [1, 2]
    int m_per_item = 4;             // retained clusters per item per generation
    int max_generation = 4;         // largest cluster size
    double gauss_sigma = 0.0;       // stddev of the mean-1 Gaussian factor
    AreaMode area_mode = AreaMode::HullArea;
    double lambda = 0.5;            // WeightedMix: weight on the hull area
    double penalty_floor = 0.05;
    int rand_group_size = 100;
    double skinny_ratio = 3.0;
    int grid_points_assembly = 300; // within [100, 1000]
    bool use_grid_assembly = true;
    bool use_vertex_assembly = true;
    int grid_assembly_item_limit = 2000; // vertex-only above this many items
    std::uint64_t seed = 1;
};

enum class CompatKind { Rand, Skinny, Concav, Shear, Atris };

struct CompatGraph {
    CompatKind kind;
    std::vector<std::vector<int>> adj; // sorted neighbor lists, no self-loops
};

// Shape classes recognized on near-polyomino items via their contour words.
enum class ShapeClass { Bar, Cross, Ell, Wye, Wave, Other };

struct ContourWord {
    std::string letters; // over R/U/L/D unit steps
    ShapeClass shape_class = ShapeClass::Other;
    bool closed = false; // snapping produced a closed rectilinear loop
};

Cluster make_cluster(std::vector<ClusterMember> members, const Instance& instance,
                     const ClusterConfig& cfg, Rng& rng);

Cluster single_item_cluster(int item_index, const Instance& instance, const ClusterConfig& cfg,
                            Rng& rng);

// penalty = max(floor, min(1, thickness(hull) / max member thickness)).
double compute_penalty(const Cluster& c, const Instance& instance, double penalty_floor);

double cluster_utility(const Cluster& c, const Instance& instance, const ClusterConfig& cfg,
                       Rng& rng);

CompatGraph build_rand_graph(const Instance& instance, const ClusterConfig& cfg, Rng& rng);
CompatGraph build_skinny_graph(const Instance& instance, const ClusterConfig& cfg);
CompatGraph build_concav_graph(const Instance& instance);
CompatGraph build_shear_graph(const Instance& instance);
CompatGraph build_atris_graph(const Instance& instance);

// Snaps the item to the unit lattice inferred from its median edge length and
// classifies the traced contour.
ContourWord contour_word(const ItemShape& item);

// Best augmentation of the cluster with one copy of the item over a centered
// grid / over all vertex-on-vertex translations. Empty when every position
// overlaps.
std::optional<Cluster> assemble_grid(const Cluster& c, int item_index, const Instance& instance,
                                     const ClusterConfig& cfg, Rng& rng);
std::optional<Cluster> assemble_vertex(const Cluster& c, int item_index, const Instance& instance,
                                       const ClusterConfig& cfg, Rng& rng);

struct ClusterPool {
    std::vector<Cluster> clusters; // every entry has >= 2 members
};

ClusterPool generate_clusters(const Instance& instance, const std::vector<CompatGraph>& graphs,
                              const ClusterConfig& cfg, Rng& rng);

// Clusters and single items merged into one list, sorted by cluster utility
// descending; the cluster-aware greedy walks it in order.
struct PackUnit {
    Cluster cluster;
    double sort_utility = 0.0;
};

std::vector<PackUnit> clusters_as_items(const ClusterPool& pool, const Instance& instance,
                                        const ClusterConfig& cfg, Rng& rng);

// Greedy construction over pack units; clusters place all members atomically
// and are pushed as rigid groups.
Solution greedy_pack_with_clusters(const Instance& instance, const ClusterPool& pool,
                                   const GreedyConfig& greedy, const ClusterConfig& cfg);

// Versioned JSON cluster files so preprocessing can run once and be reused.
std::string cluster_pool_to_json(const ClusterPool& pool, const std::string& instance_name);
ClusterPool parse_cluster_pool_json(const std::string& text, const Instance& instance);
void save_cluster_pool(const ClusterPool& pool, const std::string& instance_name,
                       const std::string& path);
ClusterPool load_cluster_pool(const std::string& path, const Instance& instance);

} // namespace polypack
