// Command-line front end: evaluates key-rate scenarios described by small
// `key = value` config files and emits CSV tables.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qkd/mc.hpp"
#include "qkd/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInsecure = 2;

bool load_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

struct CommonOpts {
    std::string config;
    std::string preset;
    std::string out;
    double cutoff = -1.0;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config, "Scenario config file");
    cmd->add_option("--preset", opts.preset, "Override the experiment preset");
    cmd->add_option("--out", opts.out, "Write the CSV table to this file");
    cmd->add_option("--cutoff", opts.cutoff, "Override the rate cutoff");
    cmd->add_option("--jobs", opts.jobs, "Evaluate sweep points concurrently")
        ->check(CLI::PositiveNumber);
}

// Parses the config (if any) and applies command-line overrides.
int build_scenario(const CommonOpts& opts, qkd::Scenario& s) {
    if (!opts.config.empty()) {
        std::string text;
        if (!load_file(opts.config, text)) {
            std::cerr << "error: cannot read config '" << opts.config << "'\n";
            return kExitInvalid;
        }
        qkd::ParseResult res = qkd::parse_config(text);
        if (!res.ok) {
            std::cerr << "error: " << opts.config << ":" << res.error.line << ": "
                      << res.error.message << '\n';
            return kExitInvalid;
        }
        s = res.scenario;
    }
    if (!opts.preset.empty() && !qkd::find_preset(opts.preset, s.params)) {
        std::cerr << "error: unknown preset '" << opts.preset << "'\n";
        return kExitInvalid;
    }
    if (opts.cutoff >= 0.0) s.rate_cutoff = opts.cutoff;
    return kExitOk;
}

int emit(const qkd::ResultTable& table, const CommonOpts& opts) {
    if (!opts.out.empty()) {
        std::string err;
        if (!qkd::emit_csv_file(table, opts.out, &err)) {
            std::cerr << "error: " << err << '\n';
            return kExitInvalid;
        }
    } else {
        qkd::emit_csv(table, std::cout);
    }
    if (!table.rows.empty()) {
        bool all_insecure = true;
        for (const std::string& st : table.status) {
            if (st != "insecure") {
                all_insecure = false;
                break;
            }
        }
        if (all_insecure) return kExitInsecure;
    }
    return kExitOk;
}

int run_table(const CommonOpts& opts, bool single_point, bool force_optimize) {
    qkd::Scenario s;
    const int rc = build_scenario(opts, s);
    if (rc != kExitOk) return rc;
    if (single_point) s.to = s.from;
    if (force_optimize) s.mu_policy = qkd::MuPolicy::Optimized;
    return emit(qkd::run_scenario(s, opts.jobs), opts);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoy-state QKD key-rate calculator"};
    app.require_subcommand(1);

    CommonOpts rate_opts, sweep_opts, optimize_opts, region_opts, verify_opts;

    CLI::App* rate = app.add_subcommand("rate", "Key rate at a single point");
    add_common(rate, rate_opts);

    CLI::App* sweep = app.add_subcommand("sweep", "Key rate over a distance/loss sweep");
    add_common(sweep, sweep_opts);

    CLI::App* optimize =
        app.add_subcommand("optimize", "Sweep with the intensity re-optimized per point");
    add_common(optimize, optimize_opts);

    CLI::App* region =
        app.add_subcommand("region", "Two-way tolerable-region grid over (delta_b, delta_p)");
    add_common(region, region_opts);

    CLI::App* attack = app.add_subcommand("attack", "Efficiency-mismatch attack table");
    double eta0 = 0.0, eta1 = 0.0;
    std::string attack_out;
    attack->add_option("--eta0", eta0, "Detector efficiency seen by bit 0")->required();
    attack->add_option("--eta1", eta1, "Detector efficiency seen by bit 1")->required();
    attack->add_option("--out", attack_out, "Write the CSV table to this file");

    CLI::App* verify =
        app.add_subcommand("verify", "Monte Carlo cross-check of the analytic model");
    add_common(verify, verify_opts);
    std::uint64_t seed = 1;
    std::uint64_t pulses = 1000000;
    verify->add_option("--seed", seed, "Simulation seed");
    verify->add_option("--pulses", pulses, "Number of simulated pulses");

    CLI::App* presets = app.add_subcommand("presets", "List the built-in presets");

    CLI11_PARSE(app, argc, argv);

    if (rate->parsed()) return run_table(rate_opts, true, false);
    if (sweep->parsed()) return run_table(sweep_opts, false, false);
    if (optimize->parsed()) return run_table(optimize_opts, false, true);

    if (region->parsed()) {
        qkd::Scenario s;
        const int rc = build_scenario(region_opts, s);
        if (rc != kExitOk) return rc;
        s.kind = qkd::ScenarioKind::GlRegion;
        return emit(qkd::run_scenario(s, region_opts.jobs), region_opts);
    }

    if (attack->parsed()) {
        if (eta0 <= 0.0 || eta1 <= 0.0) {
            std::cerr << "error: efficiencies must be positive\n";
            return kExitInvalid;
        }
        qkd::Scenario s;
        s.kind = qkd::ScenarioKind::Timeshift;
        s.eta0_attack = eta0;
        s.eta1_attack = eta1;
        CommonOpts opts;
        opts.out = attack_out;
        return emit(qkd::run_scenario(s), opts);
    }

    if (verify->parsed()) {
        qkd::Scenario s;
        const int rc = build_scenario(verify_opts, s);
        if (rc != kExitOk) return rc;
        const double mu = s.mu > 0.0 ? s.mu : 0.48;
        const double eta = qkd::transmittance(s.params, s.from);
        qkd::SimConfig cfg;
        cfg.source = qkd::SourceKind::CoherentPoisson;
        cfg.intensity = mu;
        cfg.eta = eta;
        cfg.y0 = s.params.y0();
        cfg.e_d = s.params.e_detector;
        cfg.n_pulses = pulses;
        cfg.seed = seed;
        const qkd::SimTally tally = qkd::simulate_channel(cfg);
        const qkd::ChannelObservables obs =
            qkd::coherent_observables(s.params, eta, mu);
        const qkd::AgreementReport rep =
            qkd::agreement_check(tally, obs.gain, obs.qber);
        std::cout << (rep.ok ? "agree" : "DISAGREE") << ": " << rep.detail << '\n';
        return rep.ok ? kExitOk : kExitInvalid;
    }

    if (presets->parsed()) {
        for (const std::string& name : qkd::preset_names()) {
            qkd::ExperimentParams p;
            qkd::find_preset(name, p);
            std::printf(
                "%-8s beta=%.3g dB/km  eta_bob=%.4g  eta_alice=%.4g  e_d=%.4g  "
                "Y0=%.4g  f=%.3g\n",
                name.c_str(), p.beta_db_per_km, p.eta_bob, p.eta_alice,
                p.e_detector, p.y0_bob, p.f_ec);
        }
        return kExitOk;
    }

    return kExitInvalid;
}
