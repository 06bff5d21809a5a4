#include "gtgossip/protocol.hpp"

#include <bit>
#include <stdexcept>

namespace gtgossip {

namespace {

void prov_xor(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
}

void prov_set(std::vector<uint64_t>& a, int id) {
    std::size_t w = static_cast<std::size_t>(id) >> 6;
    if (w >= a.size()) a.resize(w + 1, 0);
    a[w] |= 1ULL << (id & 63);
}

} // namespace

GossipSim::GossipSim(const Topology& topology, const DefectVector& defects,
                     const ProtocolConfig& config, Rng& rng, bool track_provenance)
    : topology_(topology),
      defects_(defects),
      config_(config),
      rng_(rng),
      track_provenance_(track_provenance) {
    if (config_.defect_count >= 2 && !config_.multi_mod)
        throw std::invalid_argument("multi_mod must be enabled when K >= 2");
    if (!(config_.alpha > 0.0) || config_.alpha > 1.0)
        throw std::invalid_argument("alpha must lie in (0,1]");
    clusters_ = assign_clusters(topology_, config_.cluster_count, config_.master_mode, rng_);
    const int sensors = topology_.sensor_count;
    states_.assign(sensors, SensorState{});
    for (auto& s : states_) {
        s.current = TestMessage::zero(sensors);
        s.previous = TestMessage::zero(sensors);
    }
    oracle_rows_ = BitMatrix(0, sensors);
    oracle_effective_ = BitMatrix(0, sensors);
    if (track_provenance_) {
        prov_current_.assign(sensors, {});
        prov_previous_.assign(sensors, {});
        prov_buffer_.assign(sensors, {});
    }
}

void GossipSim::phase_t1() {
    ++round_;
    const double q = config_.q();

    // sensors outside every master's reach carry last round's message forward
    for (int s = 0; s < topology_.sensor_count; ++s) states_[s].current = states_[s].previous;
    if (track_provenance_) prov_current_ = prov_previous_;

    for (int l = 0; l < clusters_.cluster_count; ++l) {
        const int master = clusters_.masters[l];
        BitVector row = draw_test_row(clusters_.members[l], topology_.sensor_count, q, rng_);
        BitVector effective = apply_noise(row, NoiseModel{config_.noise_p}, rng_);
        TestMessage msg{static_cast<uint8_t>(outcome_bit(effective, defects_)), row, round_, master};

        const int row_id = static_cast<int>(oracle_rows_.rows());
        oracle_rows_.append_row(row);
        oracle_effective_.append_row(effective);
        oracle_outcomes_.push_back(msg.outcome);
        oracle_cluster_of_row_.push_back(l);

        for (int member : clusters_.members[l]) {
            states_[member].current = msg;
            states_[member].heard.push_back(msg);
            if (track_provenance_) {
                prov_current_[member].clear();
                prov_set(prov_current_[member], row_id);
            }
        }
    }
}

TestMessage GossipSim::combine(const TestMessage& own, const TestMessage& pulled, int sensor,
                               const std::vector<uint64_t>& pulled_prov) {
    TestMessage committed;
    auto& st = states_[sensor];
    if (config_.multi_mod && own.outcome == 1 && pulled.outcome == 1) {
        if (!st.buffer.has_value()) {
            // park the own message, adopt the pulled one wholesale
            st.buffer = own;
            committed = pulled;
            if (track_provenance_) {
                prov_buffer_[sensor] = prov_current_[sensor];
                prov_current_[sensor] = pulled_prov;
            }
        } else {
            // collision recurs: the parked message re-enters, own gets parked
            committed = *st.buffer;
            st.buffer = own;
            if (track_provenance_) std::swap(prov_buffer_[sensor], prov_current_[sensor]);
        }
    } else {
        committed.outcome = own.outcome ^ pulled.outcome;
        committed.indicator = own.indicator ^ pulled.indicator;
        if (track_provenance_) prov_xor(prov_current_[sensor], pulled_prov);
    }
    committed.round = round_;
    committed.origin = sensor;
    return committed;
}

void GossipSim::phase_t2() {
    const int sensors = topology_.sensor_count;
    static const std::vector<uint64_t> no_prov;

    // all pulls observe last round's committed messages, then commits land
    std::vector<int> partner(sensors);
    for (int i = 0; i < sensors; ++i) {
        const auto& nbrs = topology_.adj[i];
        if (nbrs.empty()) throw std::runtime_error("isolated sensor cannot pull");
        partner[i] = nbrs[rng_.below(nbrs.size())];
    }
    pulls_last_round_ = static_cast<uint64_t>(sensors);

    std::vector<TestMessage> committed(sensors);
    for (int i = 0; i < sensors; ++i) {
        const TestMessage& pulled = states_[partner[i]].previous;
        const auto& pulled_prov = track_provenance_ ? prov_previous_[partner[i]] : no_prov;
        committed[i] = combine(states_[i].current, pulled, i, pulled_prov);
    }
    for (int i = 0; i < sensors; ++i) {
        states_[i].current = committed[i];
        states_[i].previous = committed[i];
        states_[i].log.push_back(committed[i]);
        states_[i].heard.push_back(committed[i]);
        if (track_provenance_) prov_previous_[i] = prov_current_[i];
        if (trace_) trace_(round_, i, committed[i], partner[i]);
    }
}

void GossipSim::reassign_clusters() {
    clusters_ = assign_clusters(topology_, config_.cluster_count, config_.master_mode, rng_);
}

void GossipSim::run_round() {
    if (config_.master_mode == MasterMode::Random && round_ > 0) reassign_clusters();
    phase_t1();
    phase_t2();
}

DecoderParams GossipSim::decoder_params(int sensor, double delta, double p_error) const {
    DecoderParams params;
    params.delta = delta;
    const int b = static_cast<int>(states_[sensor].heard.size());
    params.epsilon = b > 0 ? decoder_epsilon(delta, config_.noise_p, config_.q(), b) : 0.0;
    int positives = 0;
    for (const auto& m : states_[sensor].heard) positives += m.outcome;
    params.epsilon_prime = epsilon_prime(params.epsilon, p_error, positives);
    return params;
}

DecodeResult GossipSim::attempt_decode(int sensor, const DecoderParams& params) const {
    const auto& heard = states_[sensor].heard;
    if (config_.defect_count <= 1)
        return distance_decode_single(heard, topology_.sensor_count, params.epsilon);
    return multi_decode(heard, clusters_, config_.defect_count, params.epsilon_prime);
}

std::vector<int> GossipSim::provenance_of(int sensor) const {
    std::vector<int> ids;
    if (!track_provenance_) return ids;
    const auto& words = prov_current_[sensor];
    for (std::size_t w = 0; w < words.size(); ++w) {
        uint64_t bits = words[w];
        while (bits) {
            int b = std::countr_zero(bits);
            bits &= bits - 1;
            ids.push_back(static_cast<int>(64 * w) + b);
        }
    }
    return ids;
}

} // namespace gtgossip
