#include "gtgossip/gtcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gtgossip {

DefectVector DefectVector::from_indices(int sensors, const std::vector<int>& defective) {
    DefectVector d;
    d.f = BitVector(sensors);
    for (int i : defective) d.f.set(i);
    d.defect_count = static_cast<int>(d.f.popcount());
    return d;
}

BitVector draw_test_row(const std::vector<int>& members, int sensors, double q, Rng& rng) {
    if (members.empty()) throw std::invalid_argument("test needs at least one member");
    if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("participation probability must lie in (0,1]");
    BitVector row(sensors);
    for (int m : members)
        if (rng.bernoulli(q)) row.set(m);
    return row;
}

BitVector apply_noise(const BitVector& row, NoiseModel noise, Rng& rng) {
    if (noise.p >= 1.0) return row;
    BitVector out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row.get(i) && rng.bernoulli(noise.p)) out.set(i);
    return out;
}

int outcome_bit(const BitVector& effective_row, const DefectVector& f) {
    if (effective_row.size() != f.f.size())
        throw std::invalid_argument("row/defect vector dimension mismatch");
    const auto& a = effective_row.words();
    const auto& b = f.f.words();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i]) return 1;
    return 0;
}

double decoder_epsilon(double delta, double p, double q, int message_count) {
    if (delta < 0.0 || (delta == 0.0 && p < 1.0))
        throw std::invalid_argument("delta must be positive (zero allowed only when p = 1)");
    if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("q must lie in (0,1]");
    return (1.0 + delta) * (1.0 - p) * q * message_count;
}

double expected_flips(double p, double q, int message_count) {
    return (1.0 - p) * q * message_count;
}

double epsilon_prime(double eps, double p_error, int positive_count) {
    return eps + p_error * positive_count;
}

bool is_disjunct(const BitMatrix& c, int defectives, double eps) {
    const int cols = static_cast<int>(c.cols());
    if (defectives >= cols) throw std::invalid_argument("K must be below the column count");
    if (cols > 25) throw std::invalid_argument("disjunctness check is exhaustive; too many columns");

    std::vector<BitVector> col(cols, BitVector(c.rows()));
    for (int j = 0; j < cols; ++j) col[j] = c.column(j);

    // The leftover support shrinks as T grows, so checking |T| = min(K, cols-1)
    // covers all smaller subsets too.
    const int k = std::min(defectives, cols - 1);
    std::vector<int> pick(k);

    for (int i = 0; i < cols; ++i) {
        // enumerate k-subsets of the other columns
        std::vector<int> others;
        others.reserve(cols - 1);
        for (int j = 0; j < cols; ++j)
            if (j != i) others.push_back(j);
        for (int t = 0; t < k; ++t) pick[t] = t;
        for (;;) {
            BitVector uni(c.rows());
            for (int t = 0; t < k; ++t) uni |= col[others[pick[t]]];
            if (static_cast<double>(support_difference(col[i], uni)) <= eps) return false;
            // next combination
            int pos = k - 1;
            while (pos >= 0 && pick[pos] == static_cast<int>(others.size()) - k + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int t = pos + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
        }
    }
    return true;
}

bool DecodeResult::detected(const std::vector<int>& expected) const {
    if (status != DecodeStatus::Detected) return false;
    std::vector<int> e = expected;
    std::sort(e.begin(), e.end());
    return sensors == e;
}

std::string DecodeResult::to_json() const {
    std::ostringstream os;
    os << "{\"status\":\"";
    switch (status) {
        case DecodeStatus::Detected: os << "detected"; break;
        case DecodeStatus::Ambiguous: os << "ambiguous"; break;
        case DecodeStatus::NoneFound: os << "none_found"; break;
    }
    os << "\",\"sensors\":[";
    for (std::size_t i = 0; i < sensors.size(); ++i) os << (i ? "," : "") << sensors[i];
    os << "],\"distances\":[";
    for (std::size_t i = 0; i < distances.size(); ++i) os << (i ? "," : "") << distances[i];
    os << "]}";
    return os.str();
}

DecodeResult distance_decode_single(const std::vector<TestMessage>& messages, int sensors,
                                    double eps) {
    DecodeResult res;
    if (messages.empty()) return res;

    // d_j = number of rows where column j is set but the outcome is 0
    std::vector<int> dist(sensors, 0);
    for (const auto& m : messages) {
        if (m.outcome) continue;
        for (std::size_t w = 0; w < m.indicator.words().size(); ++w) {
            uint64_t bits = m.indicator.words()[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                ++dist[64 * w + b];
            }
        }
    }

    int best = std::numeric_limits<int>::max();
    std::vector<int> candidates;
    for (int j = 0; j < sensors; ++j) {
        if (static_cast<double>(dist[j]) > eps) continue;
        if (dist[j] < best) {
            best = dist[j];
            candidates.assign(1, j);
        } else if (dist[j] == best) {
            candidates.push_back(j);
        }
    }

    if (candidates.empty()) return res; // NoneFound
    if (candidates.size() == 1) {
        res.status = DecodeStatus::Detected;
        res.sensors = candidates;
        res.distances = {static_cast<double>(best)};
        return res;
    }
    res.status = DecodeStatus::Ambiguous;
    res.sensors = candidates;
    res.distances.assign(candidates.size(), static_cast<double>(best));
    return res;
}

OutcomeSplit split_outcomes(const std::vector<TestMessage>& messages, int sensors) {
    OutcomeSplit s;
    s.w0 = BitMatrix(0, sensors);
    s.w1 = BitMatrix(0, sensors);
    for (const auto& m : messages) {
        if (m.outcome)
            s.w1.append_row(m.indicator);
        else
            s.w0.append_row(m.indicator);
    }
    s.g1 = BitVector(s.w1.rows());
    for (std::size_t i = 0; i < s.w1.rows(); ++i) s.g1.set(i);
    return s;
}

std::vector<int> eliminate_nondefective(const BitMatrix& w1, const BitMatrix& w0, double eps) {
    if (w1.cols() != w0.cols() && w1.rows() > 0 && w0.rows() > 0)
        throw std::invalid_argument("column count mismatch");
    const std::size_t cols = w1.cols() ? w1.cols() : w0.cols();
    std::vector<int> pos_count(cols, 0), neg_count(cols, 0);
    auto accumulate = [cols](const BitMatrix& m, std::vector<int>& count) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t j = 0; j < cols; ++j)
                if (m.get(r, j)) ++count[j];
    };
    accumulate(w1, pos_count);
    accumulate(w0, neg_count);
    std::vector<int> surviving;
    for (std::size_t j = 0; j < cols; ++j)
        if (pos_count[j] >= 1 && static_cast<double>(neg_count[j]) <= eps)
            surviving.push_back(static_cast<int>(j));
    return surviving;
}

DecodeResult multi_decode(const std::vector<TestMessage>& messages,
                          const ClusterAssignment& clusters, int defectives, double eps_prime) {
    DecodeResult res;
    if (messages.empty()) return res;
    const int sensors = static_cast<int>(messages.front().indicator.size());

    OutcomeSplit split = split_outcomes(messages, sensors);
    std::vector<int> surviving = eliminate_nondefective(split.w1, split.w0, eps_prime);
    if (surviving.empty()) return res;

    // group surviving columns by cluster
    std::vector<std::vector<int>> groups(clusters.cluster_count);
    for (int j : surviving) groups[clusters.membership[j]].push_back(j);
    std::vector<int> nonempty;
    for (int l = 0; l < clusters.cluster_count; ++l)
        if (!groups[l].empty()) nonempty.push_back(l);
    if (nonempty.empty()) return res;

    // per-column masks over the positive rows; d(union) = positives not covered
    const std::size_t b1 = split.w1.rows();
    std::vector<BitVector> mask(sensors);
    for (int j : surviving) {
        BitVector m(b1);
        for (std::size_t r = 0; r < b1; ++r)
            if (split.w1.get(r, j)) m.set(r);
        mask[j] = std::move(m);
    }

    const int max_level = std::min<int>(defectives, static_cast<int>(nonempty.size()));
    for (int level = max_level; level >= 1; --level) {
        double best = std::numeric_limits<double>::infinity();
        std::vector<int> best_set;
        bool tie = false;

        // choose `level` distinct clusters, then one column from each
        std::vector<int> comb(level);
        for (int i = 0; i < level; ++i) comb[i] = i;
        for (;;) {
            std::vector<int> idx(level, 0);
            for (;;) {
                BitVector uni(b1);
                std::vector<int> chosen(level);
                for (int i = 0; i < level; ++i) {
                    chosen[i] = groups[nonempty[comb[i]]][idx[i]];
                    uni |= mask[chosen[i]];
                }
                double d = static_cast<double>(b1 - uni.popcount());
                if (d <= eps_prime) {
                    if (d < best) {
                        best = d;
                        best_set = chosen;
                        tie = false;
                    } else if (d == best) {
                        tie = true;
                    }
                }
                // advance the per-cluster column indices
                int pos = level - 1;
                while (pos >= 0) {
                    if (++idx[pos] < static_cast<int>(groups[nonempty[comb[pos]]].size())) break;
                    idx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
            // next cluster combination
            int pos = level - 1;
            while (pos >= 0 && comb[pos] == static_cast<int>(nonempty.size()) - level + pos) --pos;
            if (pos < 0) break;
            ++comb[pos];
            for (int i = pos + 1; i < level; ++i) comb[i] = comb[i - 1] + 1;
        }

        if (best_set.empty()) continue; // nothing within threshold: descend a level
        if (tie) {
            res.status = DecodeStatus::Ambiguous;
            res.sensors = best_set; // one representative of the tie
            std::sort(res.sensors.begin(), res.sensors.end());
            res.distances.assign(res.sensors.size(), best);
            return res;
        }
        std::sort(best_set.begin(), best_set.end());
        res.status = DecodeStatus::Detected;
        res.sensors = std::move(best_set);
        res.distances.assign(res.sensors.size(), best);
        return res;
    }
    return res; // NoneFound
}

} // namespace gtgossip
