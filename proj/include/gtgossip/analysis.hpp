#pragma once

#include <cstdint>
#include <string>

namespace gtgossip {
namespace analysis {

// Chernoff exponent for the count of rows with a good disjunctness pattern:
// [(1-q)^(K-1) - (1-p)(1+delta)]^2 / (2 (1-q)^(K-1)).
// Throws when (1-q)^(K-1) <= (1-p)(1+delta) (the bound is vacuous there).
double gamma_exponent(double q, int defectives, double p, double delta);

// P(G < eps) <= exp(-q B gamma)
double chernoff_good_rows(int message_count, double q, int defectives, double p, double delta);

// P(F >= (1+delta) mu) <= exp(-mu delta^2 / (2+delta))
double flip_tail(double mu, double delta);

// Messages required for reliable detection: ceil(K ln(S) / (alpha gamma))
// with the parameter choice delta = p/2, alpha = p/8 and q = alpha/K.
// Natural logarithm; the base is reported in run metadata.
long required_messages(int sensors, int defectives, double p);

// Probability that m defective sensors in one test produce a mixed
// participation pattern: 1 - q^m - (1-q)^m.
double p_q_given_m(double q, int m);

// Per-cluster decoding-error model: sum over m in [2,K] of
// P(q|m) * (1/(K-1)) / C(n,m).
double p_cluster_error(int cluster_size, double q, int defectives);

// Closed-form network-wide ceiling: (L/(K-1)) e^(2-n) (e^(K-1)-1)/(e-1),
// with n = floor(S/L).
double p_error_bound(int sensors, int clusters, int defectives);

struct OverheadInputs {
    int sensors = 0;          // S
    int clusters = 0;         // L
    int master_neighbors = 0; // L_n
    int per_cluster = 0;      // n = S/L
    int rounds = 0;           // tau
    int raw_bits = 7;         // R_d
    int id_bits = 7;          // I_d
    double q = 0.0;
};

// L_n {R_d + I_d ceil(q(L+L_n)) + 1}: the per-round test-formation charge,
// shared with the instrumented simulation so the totals agree to the bit.
uint64_t comm_gp_phase1_bits(int master_neighbors, int clusters, double q, int raw_bits,
                             int id_bits);

// tau [ L_n {R_d + I_d ceil(q(L+L_n)) + 1} + S(1+S) ]
uint64_t comm_gp(const OverheadInputs& in);
// tau [ (n+1) R_d / 2 * L + S(1+S) ], halves rounded up
uint64_t comm_rwgp(const OverheadInputs& in);
// tau (n+1) R_d / 2 * L, halves rounded up
uint64_t comm_rw(const OverheadInputs& in);
// ceil(tau R_d log2(S))
uint64_t comm_sf(const OverheadInputs& in);

// JSON object with every evaluator for the given inputs (CLI `bounds`).
std::string bounds_json(int sensors, int defectives, int clusters, double p, double q,
                        double delta);

} // namespace analysis
} // namespace gtgossip
