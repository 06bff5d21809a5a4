#include "gtgossip/baselines.hpp"

#include <stdexcept>

namespace gtgossip {

RwgpSim::RwgpSim(const Topology& topology, const DefectVector& defects, int walkers, int walk_len,
                 Rng& rng)
    : topology_(topology), defects_(defects), walkers_(walkers), walk_len_(walk_len), rng_(rng) {
    if (walk_len_ < 1) throw std::invalid_argument("walk length must be at least 1");
    if (walkers_ < 1 || walkers_ > topology_.sensor_count)
        throw std::invalid_argument("walker count must lie in [1, sensor count]");
    states_.assign(topology_.sensor_count, State{});
    for (auto& s : states_) {
        s.current = TestMessage::zero(topology_.sensor_count);
        s.previous = TestMessage::zero(topology_.sensor_count);
    }
}

void RwgpSim::run_round() {
    ++round_;
    const int sensors = topology_.sensor_count;

    for (auto& s : states_) s.current = s.previous;

    // message formation: one walk per master-equivalent start sensor
    std::vector<int> starts = rng_.sample_without_replacement(sensors, walkers_);
    for (int start : starts) {
        BitVector visited(sensors);
        visited.set(start);
        int pos = start;
        for (int step = 0; step < walk_len_; ++step) {
            const auto& nbrs = topology_.adj[pos];
            pos = nbrs[rng_.below(nbrs.size())];
            visited.set(pos);
        }
        int out = 0;
        for (std::size_t i = 0; i < visited.words().size(); ++i)
            if (visited.words()[i] & defects_.f.words()[i]) {
                out = 1;
                break;
            }
        TestMessage msg{static_cast<uint8_t>(out), visited, round_, start};
        for (int s = 0; s < sensors; ++s)
            if (visited.get(s)) {
                states_[s].current = msg;
                states_[s].heard.push_back(msg);
            }
    }

    // same pull-gossip XOR dissemination as the main protocol
    std::vector<int> partner(sensors);
    for (int i = 0; i < sensors; ++i) {
        const auto& nbrs = topology_.adj[i];
        partner[i] = nbrs[rng_.below(nbrs.size())];
    }
    std::vector<TestMessage> committed(sensors);
    for (int i = 0; i < sensors; ++i) {
        const TestMessage& pulled = states_[partner[i]].previous;
        committed[i].outcome = states_[i].current.outcome ^ pulled.outcome;
        committed[i].indicator = states_[i].current.indicator ^ pulled.indicator;
        committed[i].round = round_;
        committed[i].origin = i;
    }
    for (int i = 0; i < sensors; ++i) {
        states_[i].current = committed[i];
        states_[i].previous = committed[i];
        states_[i].log.push_back(committed[i]);
        states_[i].heard.push_back(committed[i]);
    }
}

DecodeResult RwgpSim::attempt_decode(int sensor, double eps) const {
    return distance_decode_single(states_[sensor].heard, topology_.sensor_count, eps);
}

CoverageSim::CoverageSim(Kind kind, const Topology& topology, const DefectVector& defects,
                         int walkers, Rng& rng)
    : kind_(kind), topology_(topology), defects_(defects), rng_(rng) {
    const int sensors = topology_.sensor_count;
    stores_.assign(sensors, BitVector(sensors));
    for (int s = 0; s < sensors; ++s) stores_[s].set(s);
    if (kind_ == Kind::RandomWalk) {
        if (walkers < 1 || walkers > sensors)
            throw std::invalid_argument("walker count must lie in [1, sensor count]");
        std::vector<int> starts = rng_.sample_without_replacement(sensors, walkers);
        for (int start : starts) {
            walk_position_.push_back(start);
            BitVector payload(sensors);
            payload.set(start);
            walk_payload_.push_back(std::move(payload));
        }
    }
}

void CoverageSim::run_round() {
    ++round_;
    switch (kind_) {
        case Kind::RandomWalk: step_random_walks(); break;
        case Kind::StoreForward: step_store_forward(false); break;
        case Kind::GreedyStoreForward: step_store_forward(true); break;
    }
}

void CoverageSim::step_random_walks() {
    for (std::size_t w = 0; w < walk_position_.size(); ++w) {
        const auto& nbrs = topology_.adj[walk_position_[w]];
        int next = nbrs[rng_.below(nbrs.size())];
        // the walk hands its accumulated path values to the visited sensor
        stores_[next] |= walk_payload_[w];
        walk_payload_[w].set(next);
        stores_[next].set(next);
        walk_position_[w] = next;
    }
}

void CoverageSim::step_store_forward(bool greedy) {
    const int sensors = topology_.sensor_count;
    // simultaneous semantics: requests see last round's stores
    std::vector<BitVector> snapshot = stores_;
    for (int i = 0; i < sensors; ++i) {
        const auto& nbrs = topology_.adj[i];
        int j = nbrs[rng_.below(nbrs.size())];
        const BitVector& theirs = snapshot[j];
        if (greedy) {
            BitVector innovative = theirs.and_not(snapshot[i]);
            std::size_t n = innovative.popcount();
            if (n == 0) continue; // requester already holds everything the neighbor has
            std::size_t pick = rng_.below(n);
            for (std::size_t b = 0; b < innovative.size(); ++b) {
                if (!innovative.get(b)) continue;
                if (pick-- == 0) {
                    stores_[i].set(b);
                    break;
                }
            }
        } else {
            std::size_t n = theirs.popcount();
            std::size_t pick = rng_.below(n);
            for (std::size_t b = 0; b < theirs.size(); ++b) {
                if (!theirs.get(b)) continue;
                if (pick-- == 0) {
                    stores_[i].set(b);
                    break;
                }
            }
        }
    }
}

} // namespace gtgossip
