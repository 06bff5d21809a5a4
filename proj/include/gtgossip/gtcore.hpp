#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtgossip/bitvec.hpp"
#include "gtgossip/rng.hpp"
#include "gtgossip/topology.hpp"

namespace gtgossip {

// Sparse binary defect indicator: f_i = 1 marks sensor i defective.
struct DefectVector {
    BitVector f;
    int defect_count = 0;

    static DefectVector from_indices(int sensors, const std::vector<int>& defective);
};

// One test message: outcome bit plus the test participation indicator row.
struct TestMessage {
    uint8_t outcome = 0;
    BitVector indicator;
    int round = 0;
    int origin = -1;

    static TestMessage zero(int sensors) { return TestMessage{0, BitVector(sensors), 0, -1}; }
};

// Non-zero indicator entries survive with probability p (flip to 0 otherwise).
struct NoiseModel {
    double p = 1.0;
};

struct DecoderParams {
    double delta = 0.0;
    double epsilon = 0.0;
    double epsilon_prime = 0.0;
};

// Each member participates independently with probability q; non-members stay 0.
BitVector draw_test_row(const std::vector<int>& members, int sensors, double q, Rng& rng);

BitVector apply_noise(const BitVector& row, NoiseModel noise, Rng& rng);

// 1 iff a defective sensor actively participates in the (effective) row.
int outcome_bit(const BitVector& effective_row, const DefectVector& f);

// Distance decoder threshold: (1+delta)(1-p) q B.
double decoder_epsilon(double delta, double p, double q, int message_count);

// Expected noise flips per test-matrix column: (1-p) q B.
double expected_flips(double p, double q, int message_count);

// Inflated multi-defective threshold: eps + p_error * positive_count.
double epsilon_prime(double eps, double p_error, int positive_count);

// Every column keeps more than eps private support positions outside the
// union of any <=K other columns. Exhaustive in subsets, so only intended
// for small matrices; throws above ~25 columns.
bool is_disjunct(const BitMatrix& c, int defectives, double eps);

enum class DecodeStatus { Detected, Ambiguous, NoneFound };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::NoneFound;
    std::vector<int> sensors;       // detected set, or the tied candidates on Ambiguous
    std::vector<double> distances;  // distances matching `sensors`

    bool detected(const std::vector<int>& expected) const;
    std::string to_json() const;
};

// Single-defective distance decoder over a stack of messages.
DecodeResult distance_decode_single(const std::vector<TestMessage>& messages, int sensors,
                                    double eps);

struct OutcomeSplit {
    BitMatrix w0; // rows with outcome 0
    BitMatrix w1; // rows with outcome 1
    BitVector g1; // all-ones of height(w1)
};

OutcomeSplit split_outcomes(const std::vector<TestMessage>& messages, int sensors);

// Columns of w1 that appear in at least one positive test and in at most
// eps negative tests.
std::vector<int> eliminate_nondefective(const BitMatrix& w1, const BitMatrix& w0, double eps);

// Cluster-restricted search decoder for up to K defectives, at most one per
// cluster. Searches unions of m columns (one per distinct cluster), m = K
// down to 1, and accepts the unique minimum-distance candidate within
// eps_prime.
DecodeResult multi_decode(const std::vector<TestMessage>& messages,
                          const ClusterAssignment& clusters, int defectives, double eps_prime);

} // namespace gtgossip
