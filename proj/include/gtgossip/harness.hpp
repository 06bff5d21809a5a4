#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtgossip/protocol.hpp"
#include "gtgossip/topology.hpp"

namespace gtgossip {

enum class Scheme { GP, RWGP, RW, SF, GSF };

std::string scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& name);

struct GraphSpec {
    GraphKind kind = GraphKind::Complete;
    int degree = 0;      // kregular:<k>
    double radius = 0.0; // geometric:<r>

    std::string to_string() const;
    static std::optional<GraphSpec> parse(const std::string& text);
};

struct ExperimentConfig {
    Scheme scheme = Scheme::GP;
    GraphSpec graph;
    int sensors = 20;       // S
    int defectives = 1;     // K
    int clusters = 5;       // L (walk count for the random-walk schemes)
    double alpha = 1.0;     // q = alpha / K
    double p = 1.0;         // noise survival probability
    MasterMode mode = MasterMode::Random;
    int rounds = 30;
    int realizations = 10;
    int trials = 100;
    uint64_t seed = 1;

    int raw_bits = 7; // R_d: bits per raw measurement (overhead accounting)
    int id_bits = 7;  // I_d: bits per sensor identifier
    int geometric_min_degree = 3;

    // empty on success, otherwise the named reason the config is invalid
    std::string validate() const;
    std::string config_hash() const; // stable hex digest of the canonical form
};

// Per-trial, per-round records. Detection latches once achieved.
struct TrialResult {
    std::vector<uint32_t> detected_sensors;   // sensors latched by round t
    std::vector<uint8_t> all_detected;        // every sensor latched by round t
    std::vector<uint64_t> rank_sum;           // sum over sensors of message rank
    std::vector<uint64_t> bits_cumulative;    // transmitted bits through round t
    int first_full_detection_round = -1;      // -1 when never reached
    uint64_t decode_events = 0;
    uint64_t false_detections = 0;            // Detected with a wrong sensor set
    // Optional rank-condition tracking (see TrialOptions::rank_condition_B):
    std::vector<uint32_t> condition_met;          // sensors meeting the per-cluster rank bar
    std::vector<uint32_t> condition_met_detected; // ... of those, already latched
};

struct TrialOptions {
    bool track_rank_condition = false;
    long rank_condition_B = 0; // per-cluster bar is B / L
};

TrialResult run_gp_trial(const Topology& topology, const ExperimentConfig& config, uint64_t seed,
                         const TrialOptions& options = {});
TrialResult run_rwgp_trial(const Topology& topology, const ExperimentConfig& config, uint64_t seed);
TrialResult run_coverage_trial(const Topology& topology, const ExperimentConfig& config,
                               uint64_t seed);

struct CurvePoint {
    int round = 0;
    double detection_prob = 0.0;     // mean over (trial, sensor)
    double detection_prob_all = 0.0; // fraction of trials with every sensor detected
    double avg_rank = 0.0;
    double bits_cumulative = 0.0;    // mean over trials
};

struct ExperimentCurves {
    ExperimentConfig config;
    std::vector<CurvePoint> points;
    uint64_t decode_events = 0;
    uint64_t false_detections = 0;
    double mean_full_detection_round = -1.0; // over trials that reached it
};

Topology build_graph(const GraphSpec& spec, int sensors, int min_degree, Rng& rng);

// Runs realizations x trials and aggregates per-round curves. Trials run in
// an OpenMP worker pool when use_openmp is set; aggregation order is fixed,
// so both paths produce identical bytes.
ExperimentCurves run_experiment(const ExperimentConfig& config, bool use_openmp = true);

// CSV columns: round,detection_prob,avg_rank,bits_cumulative,scheme,S,K,L,
// alpha,p,mode,seed,detection_prob_all
void write_csv(const ExperimentCurves& curves, std::ostream& os);
std::string to_json(const ExperimentCurves& curves);
ExperimentCurves curves_from_json(const std::string& text);

struct SchemeRow {
    Scheme scheme;
    std::optional<int> rounds_to_threshold; // empty: not reached within budget
};

struct SchemeComparison {
    double threshold = 0.9;
    std::vector<SchemeRow> rows;

    std::string to_text() const;
};

SchemeComparison compare_schemes(const std::vector<ExperimentConfig>& configs,
                                 double threshold = 0.9, bool use_openmp = true);

} // namespace gtgossip
