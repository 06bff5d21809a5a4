#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gtgossip/gtcore.hpp"
#include "gtgossip/topology.hpp"

namespace gtgossip {

struct ProtocolConfig {
    int cluster_count = 1;
    double alpha = 1.0;    // participation constant, q = alpha / K
    double noise_p = 1.0;  // probability a non-zero test entry survives
    MasterMode master_mode = MasterMode::Random;
    bool multi_mod = false; // buffering rule for K >= 2
    int rounds = 0;
    int defect_count = 1;

    double q() const { return alpha / defect_count; }
};

struct SensorState {
    TestMessage current;  // the t- message being worked on this round
    TestMessage previous; // committed message of the last round, served on pulls
    std::optional<TestMessage> buffer;
    std::vector<TestMessage> log;   // one committed message per completed round
    std::vector<TestMessage> heard; // every message received: master tests + commits
};

// Called after each commit: (round, sensor, committed message, pull partner).
using TraceFn = std::function<void(int, int, const TestMessage&, int)>;

// Synchronous round-based gossip simulation. Each round runs the test
// formation phase at the masters and then one uniform pull per sensor with
// XOR combination.
class GossipSim {
public:
    GossipSim(const Topology& topology, const DefectVector& defects, const ProtocolConfig& config,
              Rng& rng, bool track_provenance = false);

    void phase_t1();
    void phase_t2();
    void run_round();
    void reassign_clusters(); // fresh draw, only meaningful in Random mode

    int round() const { return round_; }
    const SensorState& state(int sensor) const { return states_[sensor]; }
    const std::vector<SensorState>& states() const { return states_; }
    const ClusterAssignment& clusters() const { return clusters_; }
    const Topology& topology() const { return topology_; }

    DecodeResult attempt_decode(int sensor, const DecoderParams& params) const;
    // Threshold bookkeeping for the sensor's current log length.
    DecoderParams decoder_params(int sensor, double delta, double p_error) const;

    uint64_t pulls_last_round() const { return pulls_last_round_; }
    void set_trace(TraceFn fn) { trace_ = std::move(fn); }

    // Omniscient-observer view: intended rows, realized rows and outcomes of
    // every master test generated so far, with the emitting cluster index.
    const BitMatrix& oracle_rows() const { return oracle_rows_; }
    const BitMatrix& oracle_effective() const { return oracle_effective_; }
    const std::vector<uint8_t>& oracle_outcomes() const { return oracle_outcomes_; }
    const std::vector<int>& oracle_cluster_of_row() const { return oracle_cluster_of_row_; }

    // Debug provenance (track_provenance = true): which oracle rows XOR into
    // the sensor's current message.
    std::vector<int> provenance_of(int sensor) const;

private:
    TestMessage combine(const TestMessage& own, const TestMessage& pulled, int sensor,
                        const std::vector<uint64_t>& pulled_prov);

    const Topology& topology_;
    DefectVector defects_;
    ProtocolConfig config_;
    Rng& rng_;
    ClusterAssignment clusters_;
    std::vector<SensorState> states_;
    int round_ = 0;
    uint64_t pulls_last_round_ = 0;
    TraceFn trace_;

    BitMatrix oracle_rows_;
    BitMatrix oracle_effective_;
    std::vector<uint8_t> oracle_outcomes_;
    std::vector<int> oracle_cluster_of_row_;

    bool track_provenance_ = false;
    std::vector<std::vector<uint64_t>> prov_current_; // bitset over oracle row ids
    std::vector<std::vector<uint64_t>> prov_previous_;
    std::vector<std::vector<uint64_t>> prov_buffer_;
};

} // namespace gtgossip
