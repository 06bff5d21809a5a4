#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gtgossip/analysis.hpp"
#include "gtgossip/harness.hpp"

using namespace gtgossip;

namespace {

constexpr int kConfigError = 2;

struct SimulateArgs {
    std::string scheme = "gp";
    std::string graph = "complete";
    int S = 20;
    int K = 1;
    int L = 5;
    double alpha = 1.0;
    double p = 1.0;
    std::string mode = "rm";
    int rounds = 30;
    int realizations = 10;
    int trials = 100;
    uint64_t seed = 1;
    std::string out = "results.csv";
    bool serial = false;
};

int make_config(const SimulateArgs& a, ExperimentConfig& config, std::string& err) {
    auto scheme = parse_scheme(a.scheme);
    if (!scheme) {
        err = "unknown scheme: " + a.scheme;
        return kConfigError;
    }
    auto graph = GraphSpec::parse(a.graph);
    if (!graph) {
        err = "unparseable graph spec: " + a.graph;
        return kConfigError;
    }
    if (a.mode != "rm" && a.mode != "dm") {
        err = "mode must be rm or dm";
        return kConfigError;
    }
    config.scheme = *scheme;
    config.graph = *graph;
    config.sensors = a.S;
    config.defectives = a.K;
    config.clusters = a.L;
    config.alpha = a.alpha;
    config.p = a.p;
    config.mode = a.mode == "rm" ? MasterMode::Random : MasterMode::Deterministic;
    config.rounds = a.rounds;
    config.realizations = a.realizations;
    config.trials = a.trials;
    config.seed = a.seed;
    err = config.validate();
    return err.empty() ? 0 : kConfigError;
}

void add_simulate_flags(CLI::App* cmd, SimulateArgs& a) {
    cmd->add_option("--scheme", a.scheme, "gp|rwgp|rw|sf|gsf");
    cmd->add_option("--graph", a.graph, "complete|kregular:<k>|geometric:<r>");
    cmd->add_option("--S", a.S, "sensor count");
    cmd->add_option("--K", a.K, "defective sensor count");
    cmd->add_option("--L", a.L, "master/cluster count");
    cmd->add_option("--alpha", a.alpha, "participation constant, q = alpha/K");
    cmd->add_option("--p", a.p, "probability a non-zero test entry survives");
    cmd->add_option("--mode", a.mode, "rm|dm master selection");
    cmd->add_option("--rounds", a.rounds, "round budget");
    cmd->add_option("--realizations", a.realizations, "independent network realizations");
    cmd->add_option("--trials", a.trials, "trials per realization");
    cmd->add_option("--seed", a.seed, "master seed");
}

int run_simulate(const SimulateArgs& a) {
    ExperimentConfig config;
    std::string err;
    if (int rc = make_config(a, config, err); rc != 0) {
        std::cerr << "config error: " << err << "\n";
        return rc;
    }
    ExperimentCurves curves = run_experiment(config, !a.serial);
    std::ofstream os(a.out, std::ios::binary);
    if (!os) {
        std::cerr << "config error: cannot write " << a.out << "\n";
        return kConfigError;
    }
    write_csv(curves, os);
    std::string json_path = a.out + ".json";
    std::ofstream js(json_path, std::ios::binary);
    js << to_json(curves);
    std::cerr << "wrote " << a.out << " and " << json_path << "\n";
    return 0;
}

int run_compare(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "config error: cannot read " << path << "\n";
        return kConfigError;
    }
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << "config error: expected key=value, got: " << line << "\n";
            return kConfigError;
        }
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }

    SimulateArgs base;
    auto take = [&kv](const char* key, auto& into) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        std::istringstream ss(it->second);
        ss >> into;
    };
    std::string schemes = "gp";
    if (kv.count("scheme")) schemes = kv["scheme"];
    take("graph", base.graph);
    take("S", base.S);
    take("K", base.K);
    take("L", base.L);
    take("alpha", base.alpha);
    take("p", base.p);
    take("mode", base.mode);
    take("rounds", base.rounds);
    take("realizations", base.realizations);
    take("trials", base.trials);
    take("seed", base.seed);

    std::vector<ExperimentConfig> configs;
    std::istringstream list(schemes);
    std::string token;
    while (std::getline(list, token, ',')) {
        SimulateArgs a = base;
        a.scheme = token;
        ExperimentConfig config;
        std::string err;
        if (int rc = make_config(a, config, err); rc != 0) {
            std::cerr << "config error: " << err << "\n";
            return rc;
        }
        configs.push_back(config);
    }
    if (configs.empty()) {
        std::cerr << "config error: no schemes listed\n";
        return kConfigError;
    }
    SchemeComparison cmp = compare_schemes(configs);
    std::cout << cmp.to_text();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed defective-sensor detection simulator"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "run one experiment sweep");
    add_simulate_flags(simulate, sim_args);
    simulate->add_option("--out", sim_args.out, "output CSV path");
    simulate->add_flag("--serial", sim_args.serial, "disable the OpenMP worker pool");

    int b_S = 20, b_K = 1, b_L = 5;
    double b_p = 0.9, b_q = 0.15, b_delta = 0.45;
    CLI::App* bounds = app.add_subcommand("bounds", "print closed-form bound evaluations");
    bounds->add_option("--S", b_S);
    bounds->add_option("--K", b_K);
    bounds->add_option("--L", b_L);
    bounds->add_option("--p", b_p);
    bounds->add_option("--q", b_q);
    bounds->add_option("--delta", b_delta);

    std::string compare_path;
    CLI::App* compare = app.add_subcommand("compare", "paired scheme comparison");
    compare->add_option("--config", compare_path, "flat key=value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim_args);
        if (bounds->parsed()) {
            std::cout << analysis::bounds_json(b_S, b_K, b_L, b_p, b_q, b_delta) << "\n";
            return 0;
        }
        if (compare->parsed()) return run_compare(compare_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
