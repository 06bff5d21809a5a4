#pragma once

#include <vector>

#include "gtgossip/gtcore.hpp"
#include "gtgossip/topology.hpp"

namespace gtgossip {

// Random-walk message collection followed by the same pull-gossip XOR
// dissemination and distance decoding as the main protocol. Each round, L
// walks gather measurement sets; the visited set becomes the test indicator
// and the OR of defect flags the outcome.
class RwgpSim {
public:
    RwgpSim(const Topology& topology, const DefectVector& defects, int walkers, int walk_len,
            Rng& rng);

    void run_round();
    int round() const { return round_; }
    const std::vector<TestMessage>& log(int sensor) const { return states_[sensor].log; }
    const std::vector<TestMessage>& heard(int sensor) const { return states_[sensor].heard; }
    DecodeResult attempt_decode(int sensor, double eps) const;

private:
    struct State {
        TestMessage current;
        TestMessage previous;
        std::vector<TestMessage> log;
        std::vector<TestMessage> heard;
    };

    const Topology& topology_;
    DefectVector defects_;
    int walkers_;
    int walk_len_;
    Rng& rng_;
    std::vector<State> states_;
    int round_ = 0;
};

// Raw-measurement stores shared by the coverage-based baselines. A sensor
// "detects" once it holds every measurement; the defective set is then read
// off directly, so detection is exact.
class CoverageSim {
public:
    enum class Kind { RandomWalk, StoreForward, GreedyStoreForward };

    CoverageSim(Kind kind, const Topology& topology, const DefectVector& defects, int walkers,
                Rng& rng);

    void run_round();
    int round() const { return round_; }
    // number of distinct measurements held (the rank of the held unit rows)
    int store_size(int sensor) const { return static_cast<int>(stores_[sensor].popcount()); }
    bool covered(int sensor) const {
        return stores_[sensor].popcount() == static_cast<std::size_t>(topology_.sensor_count);
    }

private:
    void step_random_walks();
    void step_store_forward(bool greedy);

    Kind kind_;
    const Topology& topology_;
    DefectVector defects_;
    Rng& rng_;
    std::vector<BitVector> stores_;          // per sensor: which measurements it holds
    std::vector<int> walk_position_;         // RandomWalk tokens
    std::vector<BitVector> walk_payload_;    // values accumulated along each walk path
    int round_ = 0;
};

} // namespace gtgossip
