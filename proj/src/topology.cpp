#include "gtgossip/topology.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gtgossip {

bool Topology::has_edge(int i, int j) const {
    const auto& n = adj[i];
    return std::binary_search(n.begin(), n.end(), j);
}

int Topology::min_degree() const {
    int d = sensor_count; // upper bound
    for (const auto& n : adj) d = std::min(d, static_cast<int>(n.size()));
    return d;
}

bool is_connected(const Topology& t) {
    if (t.sensor_count == 0) return false;
    std::vector<char> seen(t.sensor_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : t.adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == t.sensor_count;
}

Topology build_complete(int sensors) {
    if (sensors < 2) throw std::invalid_argument("complete graph needs at least 2 sensors");
    Topology t;
    t.kind = GraphKind::Complete;
    t.sensor_count = sensors;
    t.adj.resize(sensors);
    for (int i = 0; i < sensors; ++i) {
        t.adj[i].reserve(sensors - 1);
        for (int j = 0; j < sensors; ++j)
            if (j != i) t.adj[i].push_back(j);
    }
    return t;
}

namespace {

// One attempt of the configuration model: pair up degree stubs, reject
// self-loops and parallel edges.
bool try_pairing(int sensors, int degree, Rng& rng, std::vector<std::vector<int>>& adj) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(sensors) * degree);
    for (int v = 0; v < sensors; ++v)
        for (int d = 0; d < degree; ++d) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(stubs[i - 1], stubs[j]);
    }
    adj.assign(sensors, {});
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int a = stubs[i], b = stubs[i + 1];
        if (a == b) return false;
        if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return true;
}

void sort_adjacency(std::vector<std::vector<int>>& adj) {
    for (auto& n : adj) std::sort(n.begin(), n.end());
}

Topology complement_of(const Topology& g) {
    Topology t;
    t.sensor_count = g.sensor_count;
    t.adj.resize(g.sensor_count);
    for (int i = 0; i < g.sensor_count; ++i)
        for (int j = 0; j < g.sensor_count; ++j)
            if (j != i && !g.has_edge(i, j)) t.adj[i].push_back(j);
    return t;
}

} // namespace

Topology build_k_regular(int sensors, int degree, Rng& rng, int retry_budget) {
    if (degree >= sensors) throw std::invalid_argument("regular degree must be below sensor count");
    if (degree < 1) throw std::invalid_argument("regular degree must be positive");
    if ((static_cast<long long>(sensors) * degree) % 2 != 0)
        throw std::invalid_argument("no k-regular graph exists: S*k is odd");

    // Dense graphs are generated as the complement of a sparse regular graph;
    // the pairing model rejects far too often above degree (S-1)/2.
    if (degree > (sensors - 1) / 2 && degree < sensors - 1) {
        Topology sparse = build_k_regular(sensors, sensors - 1 - degree, rng, retry_budget);
        for (int attempt = 0; attempt < retry_budget; ++attempt) {
            Topology t = complement_of(sparse);
            t.kind = GraphKind::KRegular;
            t.degree = degree;
            sort_adjacency(t.adj);
            if (is_connected(t)) return t;
            sparse = build_k_regular(sensors, sensors - 1 - degree, rng, retry_budget);
        }
        throw std::runtime_error("k-regular generation: retry budget exhausted");
    }
    if (degree == sensors - 1) {
        Topology t = build_complete(sensors);
        t.kind = GraphKind::KRegular;
        t.degree = degree;
        return t;
    }

    Topology t;
    t.kind = GraphKind::KRegular;
    t.sensor_count = sensors;
    t.degree = degree;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        if (!try_pairing(sensors, degree, rng, t.adj)) continue;
        sort_adjacency(t.adj);
        if (is_connected(t)) return t;
    }
    throw std::runtime_error("k-regular generation: retry budget exhausted");
}

Topology build_random_geometric(int sensors, double radius, int min_degree, Rng& rng,
                                int retry_budget) {
    if (sensors < 2) throw std::invalid_argument("geometric graph needs at least 2 sensors");
    if (!(radius > 0.0) || radius > std::sqrt(2.0) + 1e-12)
        throw std::invalid_argument("radius must lie in (0, sqrt(2)]");

    const double r2 = radius * radius;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Topology t;
        t.kind = GraphKind::RandomGeometric;
        t.sensor_count = sensors;
        t.radius = radius;
        t.coords.resize(sensors);
        for (auto& c : t.coords) c = {rng.uniform01(), rng.uniform01()};
        t.adj.assign(sensors, {});
        for (int i = 0; i < sensors; ++i) {
            for (int j = i + 1; j < sensors; ++j) {
                double dx = t.coords[i].first - t.coords[j].first;
                double dy = t.coords[i].second - t.coords[j].second;
                if (dx * dx + dy * dy <= r2) {
                    t.adj[i].push_back(j);
                    t.adj[j].push_back(i);
                }
            }
        }
        if (t.min_degree() >= min_degree && is_connected(t)) return t;
    }
    throw std::runtime_error("geometric generation: retry budget exhausted");
}

void write_edge_list(const Topology& t, std::ostream& os) {
    os << t.sensor_count << ' ';
    if (t.kind == GraphKind::RandomGeometric)
        os << t.radius;
    else if (t.kind == GraphKind::KRegular)
        os << t.degree;
    else
        os << t.sensor_count - 1;
    os << '\n';
    for (int i = 0; i < t.sensor_count; ++i)
        for (int j : t.adj[i])
            if (i < j) os << i << ' ' << j << '\n';
}

bool ClusterAssignment::valid_partition(int sensors) const {
    if (static_cast<int>(membership.size()) != sensors) return false;
    std::vector<int> sizes(cluster_count, 0);
    for (int c : membership) {
        if (c < 0 || c >= cluster_count) return false;
        ++sizes[c];
    }
    int total = 0;
    for (int s : sizes) total += s;
    if (total != sensors) return false;
    for (int l = 0; l < cluster_count; ++l)
        if (membership[masters[l]] != l) return false;
    return true;
}

namespace {

ClusterAssignment finalize(int sensors, std::vector<int> masters, std::vector<int> membership) {
    ClusterAssignment a;
    a.cluster_count = static_cast<int>(masters.size());
    a.masters = std::move(masters);
    a.membership = std::move(membership);
    a.members.assign(a.cluster_count, {});
    for (int s = 0; s < sensors; ++s) a.members[a.membership[s]].push_back(s);
    return a;
}

bool masters_feasible(const Topology& t, const std::vector<int>& masters,
                      const std::vector<int>& master_index) {
    for (int s = 0; s < t.sensor_count; ++s) {
        if (master_index[s] >= 0) continue;
        bool covered = false;
        for (int m : masters)
            if (t.has_edge(s, m)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

// Advances combo to the next L-subset of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& combo, int n) {
    int l = static_cast<int>(combo.size());
    for (int i = l - 1; i >= 0; --i) {
        if (combo[i] < n - l + i) {
            ++combo[i];
            for (int j = i + 1; j < l; ++j) combo[j] = combo[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

ClusterAssignment assign_clusters(const Topology& t, int cluster_count, MasterMode mode, Rng& rng,
                                  int retry_budget) {
    const int sensors = t.sensor_count;
    if (cluster_count < 1 || cluster_count > sensors)
        throw std::invalid_argument("cluster count must lie in [1, sensor count]");

    std::vector<int> master_index(sensors);

    if (mode == MasterMode::Random) {
        for (int attempt = 0; attempt < retry_budget; ++attempt) {
            std::vector<int> masters = rng.sample_without_replacement(sensors, cluster_count);
            std::fill(master_index.begin(), master_index.end(), -1);
            for (int l = 0; l < cluster_count; ++l) master_index[masters[l]] = l;
            if (!masters_feasible(t, masters, master_index)) continue;
            std::vector<int> membership(sensors);
            for (int s = 0; s < sensors; ++s) {
                if (master_index[s] >= 0) {
                    membership[s] = master_index[s];
                    continue;
                }
                std::vector<int> candidates;
                for (int l = 0; l < cluster_count; ++l)
                    if (t.has_edge(s, masters[l])) candidates.push_back(l);
                membership[s] = candidates[rng.below(candidates.size())];
            }
            return finalize(sensors, std::move(masters), std::move(membership));
        }
        throw std::runtime_error("cluster assignment: retry budget exhausted");
    }

    // Deterministic mode: lexicographically first feasible master set.
    std::vector<int> masters(cluster_count);
    for (int i = 0; i < cluster_count; ++i) masters[i] = i;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        std::fill(master_index.begin(), master_index.end(), -1);
        for (int l = 0; l < cluster_count; ++l) master_index[masters[l]] = l;
        if (masters_feasible(t, masters, master_index)) {
            std::vector<int> membership(sensors);
            for (int s = 0; s < sensors; ++s) {
                if (master_index[s] >= 0) {
                    membership[s] = master_index[s];
                    continue;
                }
                int best = -1;
                double best_dist = 0.0;
                for (int l = 0; l < cluster_count; ++l) {
                    if (!t.has_edge(s, masters[l])) continue;
                    if (t.kind == GraphKind::RandomGeometric) {
                        double dx = t.coords[s].first - t.coords[masters[l]].first;
                        double dy = t.coords[s].second - t.coords[masters[l]].second;
                        double d = dx * dx + dy * dy;
                        if (best < 0 || d < best_dist) {
                            best = l;
                            best_dist = d;
                        }
                    } else if (best < 0) {
                        best = l; // lowest master index wins (masters are ordered)
                    }
                }
                membership[s] = best;
            }
            return finalize(sensors, std::move(masters), std::move(membership));
        }
        if (!next_combination(masters, sensors))
            throw std::runtime_error("cluster assignment: no feasible master set");
    }
    throw std::runtime_error("cluster assignment: retry budget exhausted");
}

} // namespace gtgossip
