#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gtgossip/analysis.hpp"
#include "gtgossip/protocol.hpp"

using namespace gtgossip;

namespace {

ProtocolConfig base_config(int clusters, double alpha = 1.0, double p = 1.0,
                           MasterMode mode = MasterMode::Random) {
    ProtocolConfig c;
    c.cluster_count = clusters;
    c.alpha = alpha;
    c.noise_p = p;
    c.master_mode = mode;
    c.defect_count = 1;
    return c;
}

struct TraceRecord {
    int round, sensor, pulled_from;
    TestMessage committed;
};

} // namespace

TEST_CASE("no defects means every outcome stays zero") {
    Rng rng(1);
    Topology fg = build_complete(10);
    DefectVector f = DefectVector::from_indices(10, {});
    GossipSim sim(fg, f, base_config(3), rng);
    for (int r = 0; r < 5; ++r) sim.run_round();
    for (int s = 0; s < 10; ++s)
        for (const auto& m : sim.state(s).heard) CHECK(m.outcome == 0);
}

TEST_CASE("q=1, p=1 and a defective inside the cluster force a positive test") {
    Rng rng(2);
    Topology fg = build_complete(8);
    DefectVector f = DefectVector::from_indices(8, {3});
    GossipSim sim(fg, f, base_config(2), rng);
    sim.phase_t1();
    // the defective's cluster master saw it with certainty
    int cluster = sim.clusters().membership[3];
    CHECK(sim.state(sim.clusters().masters[cluster]).current.outcome == 1);
    // and the indicator row covers the full cluster
    const auto& row = sim.state(sim.clusters().masters[cluster]).current.indicator;
    for (int member : sim.clusters().members[cluster]) CHECK(row.get(member));
}

TEST_CASE("test-row popcount tracks q times the cluster size") {
    Rng rng(3);
    Topology fg = build_complete(30);
    DefectVector f = DefectVector::from_indices(30, {0});
    ProtocolConfig cfg = base_config(1, 0.5, 1.0, MasterMode::Deterministic);
    double total = 0;
    const int rounds = 2000;
    GossipSim sim(fg, f, cfg, rng);
    for (int r = 0; r < rounds; ++r) {
        sim.phase_t1();
        total += static_cast<double>(sim.oracle_rows().row(sim.oracle_rows().rows() - 1).popcount());
        sim.phase_t2();
    }
    double mean = total / rounds;
    double sigma = std::sqrt(30 * 0.25 / rounds);
    CHECK(std::abs(mean - 15.0) <= 3 * sigma);
}

TEST_CASE("committed message is the xor of the own t- message and the pulled one") {
    Rng rng(4);
    Topology fg = build_complete(12);
    DefectVector f = DefectVector::from_indices(12, {2});
    GossipSim sim(fg, f, base_config(3), rng);

    for (int round = 1; round <= 6; ++round) {
        sim.run_round();
        // reconstruct: every committed message equals own t- xor pulled previous
        // (verified through the trace hook on a twin run below)
    }

    // twin run with a trace: capture pulls and verify the xor relation
    Rng rng2(4);
    GossipSim twin(fg, f, base_config(3), rng2);
    std::vector<TraceRecord> records;
    twin.set_trace([&records](int round, int sensor, const TestMessage& m, int from) {
        records.push_back({round, sensor, from, m});
    });
    std::vector<TestMessage> prev_committed(12, TestMessage::zero(12));
    for (int round = 1; round <= 6; ++round) {
        std::vector<TestMessage> t_minus(12);
        records.clear();
        // replicate run_round in phases so the t- snapshot is observable
        if (round > 1) twin.reassign_clusters();
        twin.phase_t1();
        for (int s = 0; s < 12; ++s) t_minus[s] = twin.state(s).current;
        twin.phase_t2();
        for (const auto& rec : records) {
            const TestMessage& own = t_minus[rec.sensor];
            const TestMessage& pulled = prev_committed[rec.pulled_from];
            CHECK(rec.committed.outcome == (own.outcome ^ pulled.outcome));
            CHECK(rec.committed.indicator == (own.indicator ^ pulled.indicator));
        }
        for (int s = 0; s < 12; ++s) prev_committed[s] = twin.state(s).log.back();
    }
}

TEST_CASE("pulling an all-zero message leaves the t- message unchanged") {
    Rng rng(5);
    Topology fg = build_complete(6);
    DefectVector f = DefectVector::from_indices(6, {1});
    GossipSim sim(fg, f, base_config(1, 1.0, 1.0, MasterMode::Deterministic), rng);
    sim.phase_t1();
    TestMessage fresh = sim.state(3).current;
    sim.phase_t2(); // round 1: every previous message is the zero message
    CHECK(sim.state(3).log.back().outcome == fresh.outcome);
    CHECK(sim.state(3).log.back().indicator == fresh.indicator);
}

TEST_CASE("one pull per sensor per round") {
    Rng rng(6);
    Topology geo = build_random_geometric(25, 0.5, 3, rng);
    DefectVector f = DefectVector::from_indices(25, {7});
    GossipSim sim(geo, f, base_config(4), rng);
    for (int r = 0; r < 8; ++r) {
        sim.run_round();
        CHECK(sim.pulls_last_round() == 25);
    }
}

TEST_CASE("round counter and log growth") {
    Rng rng(7);
    Topology fg = build_complete(9);
    DefectVector f = DefectVector::from_indices(9, {0});
    GossipSim sim(fg, f, base_config(3), rng);
    for (int r = 1; r <= 5; ++r) {
        sim.run_round();
        CHECK(sim.round() == r);
        for (int s = 0; s < 9; ++s) {
            CHECK(sim.state(s).log.size() == static_cast<std::size_t>(r));
            // every sensor hears its master's test and one pulled combination
            CHECK(sim.state(s).heard.size() == static_cast<std::size_t>(2 * r));
        }
    }
}

TEST_CASE("identical seeds give identical trajectories") {
    Topology fg = build_complete(15);
    DefectVector f = DefectVector::from_indices(15, {11});
    Rng a(42), b(42);
    GossipSim sa(fg, f, base_config(4), a);
    GossipSim sb(fg, f, base_config(4), b);
    for (int r = 0; r < 10; ++r) {
        sa.run_round();
        sb.run_round();
    }
    for (int s = 0; s < 15; ++s) {
        REQUIRE(sa.state(s).log.size() == sb.state(s).log.size());
        for (std::size_t i = 0; i < sa.state(s).log.size(); ++i) {
            CHECK(sa.state(s).log[i].outcome == sb.state(s).log[i].outcome);
            CHECK(sa.state(s).log[i].indicator == sb.state(s).log[i].indicator);
        }
    }
}

TEST_CASE("xor provenance: every message is the gf2 sum of recorded master rows") {
    Rng rng(8);
    Topology fg = build_complete(14);
    DefectVector f = DefectVector::from_indices(14, {5});
    GossipSim sim(fg, f, base_config(4, 0.6), rng, /*track_provenance=*/true);
    for (int r = 0; r < 12; ++r) {
        sim.run_round();
        for (int s = 0; s < 14; ++s) {
            BitVector expect_row(14);
            int expect_outcome = 0;
            for (int id : sim.provenance_of(s)) {
                expect_row ^= sim.oracle_rows().row(id);
                expect_outcome ^= sim.oracle_outcomes()[id];
            }
            CHECK(sim.state(s).current.indicator == expect_row);
            CHECK(sim.state(s).current.outcome == expect_outcome);
        }
    }
}

TEST_CASE("distance preservation: the defective column never exceeds the threshold") {
    Rng rng(9);
    Topology fg = build_complete(20);
    DefectVector f = DefectVector::from_indices(20, {13});
    GossipSim sim(fg, f, base_config(5, 0.8), rng);
    for (int r = 0; r < 15; ++r) {
        sim.run_round();
        for (int s = 0; s < 20; ++s) {
            int d = 0;
            for (const auto& m : sim.state(s).heard)
                if (m.indicator.get(13) && !m.outcome) ++d;
            CHECK(d == 0); // noiseless: support difference of the true column is zero
        }
    }
}

TEST_CASE("noisy distance preservation stays within the flip-tail bound") {
    Rng rng(10);
    Topology fg = build_complete(20);
    const double p = 0.9, alpha = 0.7, delta = 0.45;
    const int rounds = 15, trials = 400;
    int within = 0;
    for (int t = 0; t < trials; ++t) {
        int defective = static_cast<int>(rng.below(20));
        DefectVector f = DefectVector::from_indices(20, {defective});
        Rng trial_rng(rng.next_u64());
        GossipSim sim(fg, f, base_config(5, alpha, p), trial_rng);
        for (int r = 0; r < rounds; ++r) sim.run_round();
        int sensor = static_cast<int>(rng.below(20));
        int d = 0;
        for (const auto& m : sim.state(sensor).heard)
            if (m.indicator.get(defective) && !m.outcome) ++d;
        const int b = static_cast<int>(sim.state(sensor).heard.size());
        double eps = decoder_epsilon(delta, p, alpha, b);
        if (d <= eps) ++within;
    }
    const double mu = expected_flips(p, alpha, 2 * rounds);
    const double lower = 1.0 - analysis::flip_tail(mu, delta);
    double freq = static_cast<double>(within) / trials;
    CHECK(freq >= lower - 3.0 * std::sqrt(0.25 / trials));
}

TEST_CASE("multi-defective buffering adopts, then restores on the next collision") {
    // two clusters on a 4-sensor complete graph, both clusters defective,
    // q = 1 and p = 1: every master test is positive every round
    Topology fg = build_complete(4);
    ClusterAssignment fixed;
    Rng probe(1);
    fixed = assign_clusters(fg, 2, MasterMode::Deterministic, probe);
    std::vector<int> defect = {fixed.members[0].back(), fixed.members[1].back()};
    DefectVector f = DefectVector::from_indices(4, defect);

    ProtocolConfig cfg = base_config(2, 1.0, 1.0, MasterMode::Deterministic);
    cfg.multi_mod = true;
    cfg.defect_count = 2;

    Rng rng(3);
    GossipSim sim(fg, f, cfg, rng);

    // round 1: previous messages are zero, no collision possible
    sim.run_round();
    for (int s = 0; s < 4; ++s) CHECK_FALSE(sim.state(s).buffer.has_value());

    // round 2 on: own t- outcome = 1 and every pulled previous outcome = 1,
    // so each sensor parks its message and adopts the pulled one verbatim
    std::vector<TestMessage> before(4), t_minus(4);
    for (int s = 0; s < 4; ++s) before[s] = sim.state(s).previous;
    sim.phase_t1();
    for (int s = 0; s < 4; ++s) t_minus[s] = sim.state(s).current;
    sim.phase_t2();
    for (int s = 0; s < 4; ++s) {
        REQUIRE(sim.state(s).buffer.has_value());
        CHECK(sim.state(s).buffer->indicator == t_minus[s].indicator);
        // an xor of two positive outcomes would read 0; adoption keeps the 1
        CHECK(sim.state(s).log.back().outcome == 1);
        bool adopted_verbatim = false;
        for (int j = 0; j < 4; ++j)
            if (sim.state(s).log.back().indicator == before[j].indicator) adopted_verbatim = true;
        CHECK(adopted_verbatim);
    }

    // round 3: collision recurs, the buffered message re-enters circulation
    std::vector<TestMessage> parked(4);
    for (int s = 0; s < 4; ++s) parked[s] = *sim.state(s).buffer;
    sim.phase_t1();
    for (int s = 0; s < 4; ++s) t_minus[s] = sim.state(s).current;
    sim.phase_t2();
    for (int s = 0; s < 4; ++s) {
        CHECK(sim.state(s).log.back().indicator == parked[s].indicator);
        CHECK(sim.state(s).log.back().outcome == parked[s].outcome);
        REQUIRE(sim.state(s).buffer.has_value());
        CHECK(sim.state(s).buffer->indicator == t_minus[s].indicator);
    }
}

TEST_CASE("singleton clusters cannot decode after one round") {
    // L = S with q = 1, p = 1: after round 1 a sensor has seen only its own
    // test and a zero pull, so every other column ties at distance zero
    Rng rng(11);
    Topology fg = build_complete(12);
    DefectVector f = DefectVector::from_indices(12, {4});
    ProtocolConfig cfg = base_config(12);
    GossipSim sim(fg, f, cfg, rng);
    sim.run_round();
    int detected_round1 = 0;
    for (int s = 0; s < 12; ++s) {
        auto res = sim.attempt_decode(s, DecoderParams{});
        if (res.status == DecodeStatus::Detected && res.sensors == std::vector<int>{4})
            ++detected_round1;
    }
    CHECK(detected_round1 == 0);

    // over more rounds the mixed logs separate every pair
    for (int r = 0; r < 29; ++r) sim.run_round();
    int detected = 0;
    for (int s = 0; s < 12; ++s) {
        auto res = sim.attempt_decode(s, DecoderParams{});
        if (res.status == DecodeStatus::Detected && res.sensors == std::vector<int>{4}) ++detected;
    }
    CHECK(detected == 12);
}

TEST_CASE("empty log yields none-found") {
    Rng rng(12);
    Topology fg = build_complete(5);
    DefectVector f = DefectVector::from_indices(5, {1});
    GossipSim sim(fg, f, base_config(2), rng);
    CHECK(sim.attempt_decode(0, DecoderParams{}).status == DecodeStatus::NoneFound);
}

TEST_CASE("trace lines carry round, sensor, outcome, row and pull partner") {
    Rng rng(13);
    Topology fg = build_complete(4);
    DefectVector f = DefectVector::from_indices(4, {2});
    GossipSim sim(fg, f, base_config(2, 1.0, 1.0, MasterMode::Deterministic), rng);
    std::ostringstream os;
    sim.set_trace([&os](int round, int sensor, const TestMessage& m, int from) {
        os << round << ' ' << sensor << ' ' << int(m.outcome) << ' ' << m.indicator.to_hex() << ' '
           << from << '\n';
    });
    sim.run_round();
    sim.run_round();
    std::istringstream is(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 8); // one line per sensor per round
}
