#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "gtgossip/rng.hpp"

namespace gtgossip {

enum class GraphKind { Complete, KRegular, RandomGeometric };

struct Topology {
    GraphKind kind = GraphKind::Complete;
    int sensor_count = 0;
    std::vector<std::vector<int>> adj; // sorted neighbor lists, symmetric, irreflexive
    int degree = 0;                    // KRegular parameter
    double radius = 0.0;               // RandomGeometric parameter
    std::vector<std::pair<double, double>> coords; // RandomGeometric placements

    bool has_edge(int i, int j) const;
    int degree_of(int i) const { return static_cast<int>(adj[i].size()); }
    int min_degree() const;
};

bool is_connected(const Topology& t);

Topology build_complete(int sensors);
Topology build_k_regular(int sensors, int degree, Rng& rng, int retry_budget = 1000);
Topology build_random_geometric(int sensors, double radius, int min_degree, Rng& rng,
                                int retry_budget = 1000);

// Edge-list text format: first line "S k|radius", then one "i j" per edge.
void write_edge_list(const Topology& t, std::ostream& os);

enum class MasterMode { Random, Deterministic };

struct ClusterAssignment {
    int cluster_count = 0;
    std::vector<int> masters;              // masters[l] = sensor index of master l
    std::vector<int> membership;           // sensor index -> cluster index
    std::vector<std::vector<int>> members; // members[l], sorted, includes the master

    bool valid_partition(int sensors) const;
};

// Chooses L masters and assigns every other sensor to an adjacent master.
// Random mode: masters uniform without replacement, members to a uniformly
// random adjacent master. Deterministic mode: the lexicographically first
// feasible master set, members to the nearest adjacent master (Euclidean,
// geometric graphs) with lowest-index tie break, or the lowest-index
// adjacent master when there are no coordinates.
ClusterAssignment assign_clusters(const Topology& t, int cluster_count, MasterMode mode, Rng& rng,
                                  int retry_budget = 1000);

} // namespace gtgossip
