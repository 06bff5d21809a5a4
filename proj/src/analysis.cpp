#include "gtgossip/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gtgossip {
namespace analysis {

double gamma_exponent(double q, int defectives, double p, double delta) {
    if (!(q >= 0.0) || q > 1.0) throw std::invalid_argument("q must lie in [0,1]");
    if (defectives < 1) throw std::invalid_argument("K must be at least 1");
    double base = std::pow(1.0 - q, defectives - 1);
    double loss = (1.0 - p) * (1.0 + delta);
    if (base <= loss) throw std::invalid_argument("vacuous regime: (1-q)^(K-1) <= (1-p)(1+delta)");
    double diff = base - loss;
    return diff * diff / (2.0 * base);
}

double chernoff_good_rows(int message_count, double q, int defectives, double p, double delta) {
    if (message_count < 0) throw std::invalid_argument("message count must be nonnegative");
    double g = gamma_exponent(q, defectives, p, delta);
    return std::exp(-q * static_cast<double>(message_count) * g);
}

double flip_tail(double mu, double delta) {
    if (mu < 0.0) throw std::invalid_argument("mu must be nonnegative");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    return std::exp(-mu * delta * delta / (2.0 + delta));
}

long required_messages(int sensors, int defectives, double p) {
    if (sensors < 2) throw std::invalid_argument("sensor count must be at least 2");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("p must lie in (0,1]");
    const double delta = p / 2.0;
    const double alpha = p / 8.0;
    const double q = alpha / defectives;
    double g = gamma_exponent(q, defectives, p, delta);
    return static_cast<long>(std::ceil(defectives * std::log(sensors) / (alpha * g)));
}

double p_q_given_m(double q, int m) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must lie in [0,1]");
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    return 1.0 - std::pow(q, m) - std::pow(1.0 - q, m);
}

namespace {
double binomial(int n, int m) {
    double r = 1.0;
    for (int i = 1; i <= m; ++i) r = r * (n - m + i) / i;
    return r;
}
} // namespace

double p_cluster_error(int cluster_size, double q, int defectives) {
    if (defectives < 2) throw std::invalid_argument("K must be at least 2");
    if (cluster_size < defectives) throw std::invalid_argument("cluster must hold at least K sensors");
    double sum = 0.0;
    for (int m = 2; m <= defectives; ++m)
        sum += p_q_given_m(q, m) / binomial(cluster_size, m);
    return sum / static_cast<double>(defectives - 1);
}

double p_error_bound(int sensors, int clusters, int defectives) {
    if (defectives < 2) throw std::invalid_argument("K must be at least 2");
    if (clusters < 1 || clusters > sensors) throw std::invalid_argument("invalid cluster count");
    const int n = sensors / clusters; // floor when L does not divide S
    const double e = std::exp(1.0);
    return static_cast<double>(clusters) / (defectives - 1) * std::exp(2.0 - n) *
           (std::exp(static_cast<double>(defectives - 1)) - 1.0) / (e - 1.0);
}

uint64_t comm_gp_phase1_bits(int master_neighbors, int clusters, double q, int raw_bits,
                             int id_bits) {
    const uint64_t ln = static_cast<uint64_t>(master_neighbors);
    const uint64_t ids = static_cast<uint64_t>(
        std::ceil(q * static_cast<double>(clusters + master_neighbors) - 1e-9));
    return ln * (raw_bits + id_bits * ids + 1);
}

uint64_t comm_gp(const OverheadInputs& in) {
    const uint64_t s = static_cast<uint64_t>(in.sensors);
    const uint64_t per_round =
        comm_gp_phase1_bits(in.master_neighbors, in.clusters, in.q, in.raw_bits, in.id_bits) +
        s * (1 + s);
    return static_cast<uint64_t>(in.rounds) * per_round;
}

uint64_t comm_rwgp(const OverheadInputs& in) {
    const uint64_t s = static_cast<uint64_t>(in.sensors);
    const uint64_t walk_twice = static_cast<uint64_t>(in.rounds) *
                                static_cast<uint64_t>(in.per_cluster + 1) * in.raw_bits * in.clusters;
    return (walk_twice + 1) / 2 + static_cast<uint64_t>(in.rounds) * s * (1 + s);
}

uint64_t comm_rw(const OverheadInputs& in) {
    const uint64_t walk_twice = static_cast<uint64_t>(in.rounds) *
                                static_cast<uint64_t>(in.per_cluster + 1) * in.raw_bits * in.clusters;
    return (walk_twice + 1) / 2;
}

uint64_t comm_sf(const OverheadInputs& in) {
    double total = static_cast<double>(in.rounds) * in.raw_bits * std::log2(in.sensors);
    return static_cast<uint64_t>(std::ceil(total - 1e-9));
}

std::string bounds_json(int sensors, int defectives, int clusters, double p, double q,
                        double delta) {
    nlohmann::ordered_json j;
    j["inputs"] = {{"S", sensors}, {"K", defectives}, {"L", clusters},
                   {"p", p},       {"q", q},          {"delta", delta}};
    auto guard = [&j](const char* key, auto fn) {
        try {
            j[key] = fn();
        } catch (const std::exception& e) {
            j[key] = nullptr;
            j["warnings"].push_back(std::string(key) + ": " + e.what());
        }
    };
    const int n = clusters > 0 ? sensors / clusters : 0;
    guard("epsilon", [&] {
        return (1.0 + delta) * (1.0 - p) * q * required_messages(sensors, defectives, p);
    });
    guard("expected_flips_per_message", [&] { return (1.0 - p) * q; });
    guard("gamma", [&] { return gamma_exponent(q, defectives, p, delta); });
    guard("required_messages", [&] { return required_messages(sensors, defectives, p); });
    guard("chernoff_good_rows_at_required_B", [&] {
        return chernoff_good_rows(static_cast<int>(required_messages(sensors, defectives, p)), q,
                                  defectives, p, delta);
    });
    guard("flip_tail_at_required_B", [&] {
        double mu = (1.0 - p) * q * static_cast<double>(required_messages(sensors, defectives, p));
        return flip_tail(mu, delta);
    });
    guard("p_cluster_error", [&] { return p_cluster_error(n, q, defectives); });
    guard("p_error_bound", [&] { return p_error_bound(sensors, clusters, defectives); });
    j["metadata"] = {{"required_messages_log_base", "e"},
                     {"comm_sf_log_base", 2},
                     {"fractional_bits", "rounded up"}};
    return j.dump(2);
}

} // namespace analysis
} // namespace gtgossip
