#include "gtgossip/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "gtgossip/analysis.hpp"
#include "gtgossip/baselines.hpp"

namespace gtgossip {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::GP: return "gp";
        case Scheme::RWGP: return "rwgp";
        case Scheme::RW: return "rw";
        case Scheme::SF: return "sf";
        case Scheme::GSF: return "gsf";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
    if (name == "gp") return Scheme::GP;
    if (name == "rwgp") return Scheme::RWGP;
    if (name == "rw") return Scheme::RW;
    if (name == "sf") return Scheme::SF;
    if (name == "gsf") return Scheme::GSF;
    return std::nullopt;
}

std::string GraphSpec::to_string() const {
    char buf[64];
    switch (kind) {
        case GraphKind::Complete: return "complete";
        case GraphKind::KRegular:
            std::snprintf(buf, sizeof buf, "kregular:%d", degree);
            return buf;
        case GraphKind::RandomGeometric:
            std::snprintf(buf, sizeof buf, "geometric:%g", radius);
            return buf;
    }
    return "?";
}

std::optional<GraphSpec> GraphSpec::parse(const std::string& text) {
    GraphSpec spec;
    if (text == "complete") {
        spec.kind = GraphKind::Complete;
        return spec;
    }
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (head == "kregular") {
            spec.kind = GraphKind::KRegular;
            spec.degree = std::stoi(arg);
            return spec;
        }
        if (head == "geometric") {
            spec.kind = GraphKind::RandomGeometric;
            spec.radius = std::stod(arg);
            return spec;
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

std::string ExperimentConfig::validate() const {
    if (sensors < 2) return "S must be at least 2";
    if (defectives < 1) return "K must be at least 1";
    if (defectives >= sensors) return "K must be below S";
    if (clusters < 1 || clusters > sensors) return "L must lie in [1, S]";
    if (!(alpha > 0.0) || alpha > 1.0) return "alpha must lie in (0, 1]";
    if (!(p > 0.0) || p > 1.0) return "p must lie in (0, 1]";
    if (rounds < 0) return "rounds must be nonnegative";
    if (realizations < 1) return "realizations must be at least 1";
    if (trials < 1) return "trials must be at least 1";
    if (graph.kind == GraphKind::KRegular) {
        if (graph.degree < 1 || graph.degree >= sensors) return "kregular degree must lie in [1, S)";
        if ((static_cast<long long>(sensors) * graph.degree) % 2 != 0)
            return "kregular requires S*k even";
    }
    if (graph.kind == GraphKind::RandomGeometric &&
        (!(graph.radius > 0.0) || graph.radius > std::sqrt(2.0) + 1e-12))
        return "geometric radius must lie in (0, sqrt(2)]";
    if (defectives >= 2) {
        if (scheme == Scheme::GP && mode != MasterMode::Deterministic)
            return "K >= 2 requires deterministic master selection (mode=dm)";
        if (scheme == Scheme::GP && defectives > clusters)
            return "K >= 2 requires K <= L (at most one defective per cluster)";
        if (scheme == Scheme::RWGP) return "rwgp supports only K = 1";
    }
    return "";
}

std::string ExperimentConfig::config_hash() const {
    std::ostringstream os;
    os << scheme_name(scheme) << ';' << graph.to_string() << ';' << sensors << ';' << defectives
       << ';' << clusters << ';' << alpha << ';' << p << ';'
       << (mode == MasterMode::Random ? "rm" : "dm") << ';' << rounds << ';' << realizations << ';'
       << trials << ';' << seed << ';' << raw_bits << ';' << id_bits;
    uint64_t h = 1469598103934665603ULL;
    for (char c : os.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Topology build_graph(const GraphSpec& spec, int sensors, int min_degree, Rng& rng) {
    switch (spec.kind) {
        case GraphKind::Complete: return build_complete(sensors);
        case GraphKind::KRegular: return build_k_regular(sensors, spec.degree, rng);
        case GraphKind::RandomGeometric:
            return build_random_geometric(sensors, spec.radius, min_degree, rng);
    }
    throw std::invalid_argument("unknown graph kind");
}

namespace {

constexpr uint64_t kTopologySalt = 0x746f706f;
constexpr uint64_t kTrialSalt = 0x7472;

DefectVector draw_defects(const ExperimentConfig& config, const ClusterAssignment* clusters,
                          Rng& rng) {
    std::vector<int> defective;
    if (config.defectives >= 2 && clusters != nullptr) {
        // model assumption: at most one defective per cluster
        std::vector<int> picked =
            rng.sample_without_replacement(clusters->cluster_count, config.defectives);
        for (int l : picked) {
            const auto& members = clusters->members[l];
            defective.push_back(members[rng.below(members.size())]);
        }
    } else {
        defective = rng.sample_without_replacement(config.sensors, config.defectives);
    }
    return DefectVector::from_indices(config.sensors, defective);
}

// Incremental mirror of the single-defective distance decoder: d_j counts
// positive-participation/zero-outcome rows, updated one message at a time.
struct SingleDecodeTracker {
    std::vector<int> dist;
    int messages = 0;

    explicit SingleDecodeTracker(int sensors) : dist(sensors, 0) {}

    void add(const TestMessage& m) {
        ++messages;
        if (m.outcome) return;
        const auto& words = m.indicator.words();
        for (std::size_t w = 0; w < words.size(); ++w) {
            uint64_t bits = words[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                ++dist[64 * w + b];
            }
        }
    }

    DecodeResult decode(double eps) const {
        DecodeResult res;
        if (messages == 0) return res;
        int best = -1, count = 0;
        for (std::size_t j = 0; j < dist.size(); ++j) {
            if (static_cast<double>(dist[j]) > eps) continue;
            if (count == 0 || dist[j] < dist[best]) {
                best = static_cast<int>(j);
                count = 1;
            } else if (dist[j] == dist[best]) {
                ++count;
            }
        }
        if (count == 0) return res;
        if (count == 1) {
            res.status = DecodeStatus::Detected;
            res.sensors = {best};
            res.distances = {static_cast<double>(dist[best])};
        } else {
            res.status = DecodeStatus::Ambiguous;
        }
        return res;
    }
};

void note_decode(TrialResult& out, const DecodeResult& res, const std::vector<int>& truth,
                 bool& latched) {
    ++out.decode_events;
    if (res.status != DecodeStatus::Detected) return;
    if (res.detected(truth))
        latched = true;
    else
        ++out.false_detections;
}

std::vector<int> truth_of(const DefectVector& f) {
    std::vector<int> t;
    for (std::size_t i = 0; i < f.f.size(); ++i)
        if (f.f.get(i)) t.push_back(static_cast<int>(i));
    return t;
}

} // namespace

TrialResult run_gp_trial(const Topology& topology, const ExperimentConfig& config, uint64_t seed,
                         const TrialOptions& options) {
    Rng rng(seed);
    const int sensors = config.sensors;

    // Deterministic master selection consumes no randomness, so the trial's
    // defect draw can depend on the very assignment the simulator recomputes.
    std::optional<ClusterAssignment> fixed;
    if (config.defectives >= 2) {
        Rng probe(seed);
        fixed = assign_clusters(topology, config.clusters, MasterMode::Deterministic, probe);
    }
    DefectVector defects = draw_defects(config, fixed ? &*fixed : nullptr, rng);
    const std::vector<int> truth = truth_of(defects);

    ProtocolConfig proto;
    proto.cluster_count = config.clusters;
    proto.alpha = config.alpha;
    proto.noise_p = config.p;
    proto.master_mode = config.mode;
    proto.multi_mod = config.defectives >= 2;
    proto.rounds = config.rounds;
    proto.defect_count = config.defectives;

    GossipSim sim(topology, defects, proto, rng);

    const double delta = config.p / 2.0;
    const double p_error =
        config.defectives >= 2 ? analysis::p_error_bound(sensors, config.clusters, config.defectives)
                               : 0.0;

    TrialResult out;
    out.detected_sensors.assign(config.rounds, 0);
    out.all_detected.assign(config.rounds, 0);
    out.rank_sum.assign(config.rounds, 0);
    out.bits_cumulative.assign(config.rounds, 0);
    if (options.track_rank_condition) {
        out.condition_met.assign(config.rounds, 0);
        out.condition_met_detected.assign(config.rounds, 0);
    }

    std::vector<uint8_t> latched(sensors, 0);
    std::vector<Gf2Basis> rank_basis(sensors, Gf2Basis(sensors));
    std::vector<std::size_t> heard_cursor(sensors, 0);
    std::vector<SingleDecodeTracker> trackers;
    if (config.defectives == 1) trackers.assign(sensors, SingleDecodeTracker(sensors));

    std::vector<std::vector<Gf2Basis>> restricted;
    std::vector<BitVector> cluster_mask;
    if (options.track_rank_condition) {
        restricted.assign(sensors, std::vector<Gf2Basis>(config.clusters, Gf2Basis(sensors)));
        cluster_mask.assign(config.clusters, BitVector(sensors));
        const ClusterAssignment& a = fixed ? *fixed : sim.clusters();
        for (int s = 0; s < sensors; ++s) cluster_mask[a.membership[s]].set(s);
    }

    uint64_t bits = 0;
    int latched_count = 0;
    for (int r = 0; r < config.rounds; ++r) {
        sim.run_round();

        const int master0 = sim.clusters().masters[0];
        bits += analysis::comm_gp_phase1_bits(topology.degree_of(master0), config.clusters,
                                              proto.q(), config.raw_bits, config.id_bits);
        bits += sim.pulls_last_round() * static_cast<uint64_t>(sensors + 1);
        out.bits_cumulative[r] = bits;

        for (int s = 0; s < sensors; ++s) {
            rank_basis[s].insert(sim.state(s).log.back().indicator);
            out.rank_sum[r] += rank_basis[s].rank();

            const auto& heard = sim.state(s).heard;
            if (config.defectives == 1)
                for (std::size_t h = heard_cursor[s]; h < heard.size(); ++h)
                    trackers[s].add(heard[h]);
            if (options.track_rank_condition)
                for (std::size_t h = heard_cursor[s]; h < heard.size(); ++h)
                    for (int l = 0; l < config.clusters; ++l)
                        restricted[s][l].insert(heard[h].indicator & cluster_mask[l]);
            heard_cursor[s] = heard.size();

            if (!latched[s]) {
                bool hit = false;
                if (config.defectives == 1) {
                    double eps = decoder_epsilon(delta, config.p, proto.q(),
                                                 static_cast<int>(heard.size()));
                    note_decode(out, trackers[s].decode(eps), truth, hit);
                } else {
                    DecoderParams params = sim.decoder_params(s, delta, p_error);
                    note_decode(out, sim.attempt_decode(s, params), truth, hit);
                }
                if (hit) {
                    latched[s] = 1;
                    ++latched_count;
                }
            }
        }
        out.detected_sensors[r] = latched_count;
        out.all_detected[r] = latched_count == sensors ? 1 : 0;
        if (out.all_detected[r] && out.first_full_detection_round < 0)
            out.first_full_detection_round = r + 1;

        if (options.track_rank_condition) {
            const double bar =
                static_cast<double>(options.rank_condition_B) / static_cast<double>(config.clusters);
            for (int s = 0; s < sensors; ++s) {
                bool met = true;
                for (int l = 0; l < config.clusters && met; ++l)
                    met = static_cast<double>(restricted[s][l].rank()) >= bar;
                if (met) {
                    ++out.condition_met[r];
                    if (latched[s]) ++out.condition_met_detected[r];
                }
            }
        }
    }
    return out;
}

TrialResult run_rwgp_trial(const Topology& topology, const ExperimentConfig& config,
                           uint64_t seed) {
    Rng rng(seed);
    const int sensors = config.sensors;
    DefectVector defects = draw_defects(config, nullptr, rng);
    const std::vector<int> truth = truth_of(defects);

    const int walk_len = std::max(1, sensors / config.clusters);
    RwgpSim sim(topology, defects, config.clusters, walk_len, rng);

    TrialResult out;
    out.detected_sensors.assign(config.rounds, 0);
    out.all_detected.assign(config.rounds, 0);
    out.rank_sum.assign(config.rounds, 0);
    out.bits_cumulative.assign(config.rounds, 0);

    std::vector<uint8_t> latched(sensors, 0);
    std::vector<Gf2Basis> rank_basis(sensors, Gf2Basis(sensors));
    std::vector<std::size_t> heard_cursor(sensors, 0);
    std::vector<SingleDecodeTracker> trackers(sensors, SingleDecodeTracker(sensors));

    uint64_t half_bits = 0; // accumulated in half-bit units
    int latched_count = 0;
    for (int r = 0; r < config.rounds; ++r) {
        sim.run_round();
        half_bits += static_cast<uint64_t>(walk_len + 1) * config.raw_bits * config.clusters;
        half_bits += 2ULL * sensors * (sensors + 1);
        out.bits_cumulative[r] = (half_bits + 1) / 2;

        for (int s = 0; s < sensors; ++s) {
            rank_basis[s].insert(sim.log(s).back().indicator);
            out.rank_sum[r] += rank_basis[s].rank();
            const auto& heard = sim.heard(s);
            for (std::size_t h = heard_cursor[s]; h < heard.size(); ++h)
                trackers[s].add(heard[h]);
            heard_cursor[s] = heard.size();
            if (!latched[s]) {
                bool hit = false;
                note_decode(out, trackers[s].decode(0.0), truth, hit);
                if (hit) {
                    latched[s] = 1;
                    ++latched_count;
                }
            }
        }
        out.detected_sensors[r] = latched_count;
        out.all_detected[r] = latched_count == sensors ? 1 : 0;
        if (out.all_detected[r] && out.first_full_detection_round < 0)
            out.first_full_detection_round = r + 1;
    }
    return out;
}

TrialResult run_coverage_trial(const Topology& topology, const ExperimentConfig& config,
                               uint64_t seed) {
    Rng rng(seed);
    const int sensors = config.sensors;
    DefectVector defects = draw_defects(config, nullptr, rng);

    CoverageSim::Kind kind = CoverageSim::Kind::RandomWalk;
    if (config.scheme == Scheme::SF) kind = CoverageSim::Kind::StoreForward;
    if (config.scheme == Scheme::GSF) kind = CoverageSim::Kind::GreedyStoreForward;
    CoverageSim sim(kind, topology, defects, config.clusters, rng);

    TrialResult out;
    out.detected_sensors.assign(config.rounds, 0);
    out.all_detected.assign(config.rounds, 0);
    out.rank_sum.assign(config.rounds, 0);
    out.bits_cumulative.assign(config.rounds, 0);

    std::vector<uint8_t> latched(sensors, 0);
    const int per_cluster = std::max(1, sensors / config.clusters);
    uint64_t half_bits = 0;
    uint64_t gsf_bits = 0;
    int latched_count = 0;

    for (int r = 0; r < config.rounds; ++r) {
        sim.run_round();
        switch (kind) {
            case CoverageSim::Kind::RandomWalk:
                half_bits += static_cast<uint64_t>(per_cluster + 1) * config.raw_bits * config.clusters;
                out.bits_cumulative[r] = (half_bits + 1) / 2;
                break;
            case CoverageSim::Kind::StoreForward: {
                double total = static_cast<double>(r + 1) * config.raw_bits * std::log2(sensors);
                out.bits_cumulative[r] = static_cast<uint64_t>(std::ceil(total - 1e-9));
                break;
            }
            case CoverageSim::Kind::GreedyStoreForward:
                // request bitmap plus one measurement-and-identifier reply per pull
                gsf_bits += static_cast<uint64_t>(sensors) *
                            (sensors + config.raw_bits + config.id_bits);
                out.bits_cumulative[r] = gsf_bits;
                break;
        }

        for (int s = 0; s < sensors; ++s) {
            out.rank_sum[r] += static_cast<uint64_t>(sim.store_size(s));
            if (!latched[s] && sim.covered(s)) {
                latched[s] = 1; // coverage complete: the defective set is read directly
                ++latched_count;
            }
        }
        out.detected_sensors[r] = latched_count;
        out.all_detected[r] = latched_count == sensors ? 1 : 0;
        if (out.all_detected[r] && out.first_full_detection_round < 0)
            out.first_full_detection_round = r + 1;
    }
    return out;
}

namespace {

TrialResult run_one_trial(const Topology& topology, const ExperimentConfig& config, uint64_t seed,
                          const TrialOptions& options) {
    switch (config.scheme) {
        case Scheme::GP: return run_gp_trial(topology, config, seed, options);
        case Scheme::RWGP: return run_rwgp_trial(topology, config, seed);
        default: return run_coverage_trial(topology, config, seed);
    }
}

} // namespace

ExperimentCurves run_experiment(const ExperimentConfig& config, bool use_openmp) {
    std::string reason = config.validate();
    if (!reason.empty()) throw std::invalid_argument("invalid config: " + reason);

    ExperimentCurves curves;
    curves.config = config;
    curves.points.assign(config.rounds, CurvePoint{});

    std::vector<uint64_t> detected(config.rounds, 0), all(config.rounds, 0), rank(config.rounds, 0),
        bits(config.rounds, 0);
    uint64_t full_round_sum = 0, full_round_count = 0;

    for (int realization = 0; realization < config.realizations; ++realization) {
        Rng topo_rng(derive_seed(config.seed, kTopologySalt, realization));
        Topology topology =
            build_graph(config.graph, config.sensors, config.geometric_min_degree, topo_rng);

        std::vector<TrialResult> results(config.trials);
#pragma omp parallel for schedule(dynamic) if (use_openmp)
        for (int trial = 0; trial < config.trials; ++trial) {
            uint64_t seed = derive_seed(config.seed, kTrialSalt, realization, trial);
            results[trial] = run_one_trial(topology, config, seed, TrialOptions{});
        }

        for (const TrialResult& r : results) {
            for (int t = 0; t < config.rounds; ++t) {
                detected[t] += r.detected_sensors[t];
                all[t] += r.all_detected[t];
                rank[t] += r.rank_sum[t];
                bits[t] += r.bits_cumulative[t];
            }
            curves.decode_events += r.decode_events;
            curves.false_detections += r.false_detections;
            if (r.first_full_detection_round > 0) {
                full_round_sum += r.first_full_detection_round;
                ++full_round_count;
            }
        }
    }

    const double pair_count =
        static_cast<double>(config.sensors) * config.trials * config.realizations;
    const double trial_count = static_cast<double>(config.trials) * config.realizations;
    for (int t = 0; t < config.rounds; ++t) {
        curves.points[t].round = t + 1;
        curves.points[t].detection_prob = detected[t] / pair_count;
        curves.points[t].detection_prob_all = all[t] / trial_count;
        curves.points[t].avg_rank = rank[t] / pair_count;
        curves.points[t].bits_cumulative = bits[t] / trial_count;
    }
    if (full_round_count > 0)
        curves.mean_full_detection_round =
            static_cast<double>(full_round_sum) / static_cast<double>(full_round_count);
    return curves;
}

void write_csv(const ExperimentCurves& curves, std::ostream& os) {
    os << "round,detection_prob,avg_rank,bits_cumulative,scheme,S,K,L,alpha,p,mode,seed,"
          "detection_prob_all\n";
    const ExperimentConfig& c = curves.config;
    char buf[256];
    for (const CurvePoint& pt : curves.points) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.3f,%s,%d,%d,%d,%g,%g,%s,%llu,%.6f\n",
                      pt.round, pt.detection_prob, pt.avg_rank, pt.bits_cumulative,
                      scheme_name(c.scheme).c_str(), c.sensors, c.defectives, c.clusters, c.alpha,
                      c.p, c.mode == MasterMode::Random ? "rm" : "dm",
                      static_cast<unsigned long long>(c.seed), pt.detection_prob_all);
        os << buf;
    }
}

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["scheme"] = scheme_name(c.scheme);
    j["graph"] = c.graph.to_string();
    j["S"] = c.sensors;
    j["K"] = c.defectives;
    j["L"] = c.clusters;
    j["alpha"] = c.alpha;
    j["p"] = c.p;
    j["mode"] = c.mode == MasterMode::Random ? "rm" : "dm";
    j["rounds"] = c.rounds;
    j["realizations"] = c.realizations;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["raw_bits"] = c.raw_bits;
    j["id_bits"] = c.id_bits;
    j["config_hash"] = c.config_hash();
    return j;
}

ExperimentConfig config_from_json(const nlohmann::ordered_json& j) {
    ExperimentConfig c;
    c.scheme = *parse_scheme(j.at("scheme").get<std::string>());
    c.graph = *GraphSpec::parse(j.at("graph").get<std::string>());
    c.sensors = j.at("S").get<int>();
    c.defectives = j.at("K").get<int>();
    c.clusters = j.at("L").get<int>();
    c.alpha = j.at("alpha").get<double>();
    c.p = j.at("p").get<double>();
    c.mode = j.at("mode").get<std::string>() == "rm" ? MasterMode::Random : MasterMode::Deterministic;
    c.rounds = j.at("rounds").get<int>();
    c.realizations = j.at("realizations").get<int>();
    c.trials = j.at("trials").get<int>();
    c.seed = j.at("seed").get<uint64_t>();
    c.raw_bits = j.at("raw_bits").get<int>();
    c.id_bits = j.at("id_bits").get<int>();
    return c;
}

} // namespace

std::string to_json(const ExperimentCurves& curves) {
    nlohmann::ordered_json j;
    j["config"] = config_json(curves.config);
    j["metadata"] = {{"delta", "p/2"},
                     {"required_messages_log_base", "e"},
                     {"comm_sf_log_base", 2},
                     {"fractional_bits", "rounded up"},
                     {"gsf_negotiation_bits_per_pull", "S + R_d + I_d"},
                     {"detection_prob", "mean over (trial, sensor) pairs, latched"},
                     {"detection_prob_all", "fraction of trials with every sensor detected"}};
    j["decode_events"] = curves.decode_events;
    j["false_detections"] = curves.false_detections;
    j["mean_full_detection_round"] = curves.mean_full_detection_round;
    j["points"] = nlohmann::ordered_json::array();
    for (const CurvePoint& pt : curves.points) {
        nlohmann::ordered_json p;
        p["round"] = pt.round;
        p["detection_prob"] = pt.detection_prob;
        p["detection_prob_all"] = pt.detection_prob_all;
        p["avg_rank"] = pt.avg_rank;
        p["bits_cumulative"] = pt.bits_cumulative;
        j["points"].push_back(std::move(p));
    }
    return j.dump(2) + "\n";
}

ExperimentCurves curves_from_json(const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    ExperimentCurves curves;
    curves.config = config_from_json(j.at("config"));
    curves.decode_events = j.at("decode_events").get<uint64_t>();
    curves.false_detections = j.at("false_detections").get<uint64_t>();
    curves.mean_full_detection_round = j.at("mean_full_detection_round").get<double>();
    for (const auto& p : j.at("points")) {
        CurvePoint pt;
        pt.round = p.at("round").get<int>();
        pt.detection_prob = p.at("detection_prob").get<double>();
        pt.detection_prob_all = p.at("detection_prob_all").get<double>();
        pt.avg_rank = p.at("avg_rank").get<double>();
        pt.bits_cumulative = p.at("bits_cumulative").get<double>();
        curves.points.push_back(pt);
    }
    return curves;
}

SchemeComparison compare_schemes(const std::vector<ExperimentConfig>& configs, double threshold,
                                 bool use_openmp) {
    SchemeComparison cmp;
    cmp.threshold = threshold;
    for (const ExperimentConfig& config : configs) {
        ExperimentCurves curves = run_experiment(config, use_openmp);
        SchemeRow row;
        row.scheme = config.scheme;
        for (const CurvePoint& pt : curves.points) {
            if (pt.detection_prob >= threshold) {
                row.rounds_to_threshold = pt.round;
                break;
            }
        }
        cmp.rows.push_back(row);
    }
    return cmp;
}

std::string SchemeComparison::to_text() const {
    std::ostringstream os;
    char buf[128];
    std::snprintf(buf, sizeof buf, "scheme rounds_to_%.2f\n", threshold);
    os << buf;
    for (const SchemeRow& row : rows) {
        os << scheme_name(row.scheme) << ' ';
        if (row.rounds_to_threshold)
            os << *row.rounds_to_threshold;
        else
            os << "not_reached";
        os << '\n';
    }
    return os.str();
}

} // namespace gtgossip
