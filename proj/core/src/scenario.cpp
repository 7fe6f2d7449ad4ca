#include "qkd/scenario.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "qkd/keyrate.hpp"
#include "qkd/twoway.hpp"

namespace qkd {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& v, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(v, &used);
        return used == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& v, int& out) {
    try {
        std::size_t used = 0;
        out = std::stoi(v, &used);
        return used == v.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult res;
    Scenario& s = res.scenario;
    s.params = presets::gys();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.error.line = lineno;
        res.error.message = msg;
        return res;
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') return fail("unterminated section header");
            continue;  // sections organize the file; keys are global
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) return fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) return fail("empty key or value");

        auto need_double = [&](double& out) {
            if (!parse_double(value, out)) {
                fail("invalid number for key '" + key + "'");
                return false;
            }
            return true;
        };
        auto need_int = [&](int& out) {
            if (!parse_int(value, out)) {
                fail("invalid integer for key '" + key + "'");
                return false;
            }
            return true;
        };

        if (key == "kind") {
            if (value == "coherent_one_way") s.kind = ScenarioKind::CoherentOneWay;
            else if (value == "coherent_two_way") s.kind = ScenarioKind::CoherentTwoWay;
            else if (value == "triggering") s.kind = ScenarioKind::Triggering;
            else if (value == "triggering_fluct") s.kind = ScenarioKind::TriggeringFluct;
            else if (value == "entangled") s.kind = ScenarioKind::Entangled;
            else if (value == "fluct_alloc") s.kind = ScenarioKind::FluctAlloc;
            else if (value == "pa_compare") s.kind = ScenarioKind::PaCompare;
            else if (value == "gl_region") s.kind = ScenarioKind::GlRegion;
            else if (value == "timeshift") s.kind = ScenarioKind::Timeshift;
            else return fail("unknown kind '" + value + "'");
        } else if (key == "preset") {
            if (!find_preset(value, s.params)) {
                return fail("unknown preset '" + value + "'");
            }
        } else if (key == "estimator") {
            using E = pipelines::CoherentEstimator;
            if (value == "infinite") s.estimator = E::Infinite;
            else if (value == "non_decoy") s.estimator = E::NonDecoy;
            else if (value == "vacuum_weak") s.estimator = E::VacuumWeak;
            else if (value == "one_decoy") s.estimator = E::OneDecoy;
            else if (value == "lp") s.estimator = E::Lp;
            else return fail("unknown estimator '" + value + "'");
        } else if (key == "twoway") {
            using T = pipelines::TwoWayScheme;
            if (value == "one_locc") s.twoway = T::OneLocc;
            else if (value == "b_steps") s.twoway = T::BSteps;
            else if (value == "recurrence") s.twoway = T::Recurrence;
            else return fail("unknown twoway scheme '" + value + "'");
        } else if (key == "trig") {
            using T = pipelines::TrigScheme;
            if (value == "pnr") s.trig = T::Pnr;
            else if (value == "infinite") s.trig = T::Infinite;
            else if (value == "ayki") s.trig = T::Ayki;
            else if (value == "non_decoy") s.trig = T::NonDecoy;
            else if (value == "weak") s.trig = T::Weak;
            else return fail("unknown trig scheme '" + value + "'");
        } else if (key == "ent") {
            using E = pipelines::EntScheme;
            if (value == "one_way") s.ent = E::OneWay;
            else if (value == "b_steps") s.ent = E::BSteps;
            else if (value == "recurrence") s.ent = E::Recurrence;
            else return fail("unknown ent scheme '" + value + "'");
        } else if (key == "mu_policy") {
            if (value == "fixed") s.mu_policy = MuPolicy::Fixed;
            else if (value == "optimized") s.mu_policy = MuPolicy::Optimized;
            else return fail("unknown mu_policy '" + value + "'");
        } else if (key == "axis") {
            if (value == "km") s.axis = SweepAxis::Km;
            else if (value == "db") s.axis = SweepAxis::Db;
            else return fail("unknown axis '" + value + "'");
        } else if (key == "n_bsteps") {
            if (!need_int(s.n_bsteps)) return res;
        } else if (key == "grid") {
            if (!need_int(s.grid)) return res;
        } else if (key == "mu") {
            if (!need_double(s.mu)) return res;
        } else if (key == "nu") {
            if (!need_double(s.nu)) return res;
        } else if (key == "lambda") {
            if (!need_double(s.lambda)) return res;
        } else if (key == "from") {
            if (!need_double(s.from)) return res;
        } else if (key == "to") {
            if (!need_double(s.to)) return res;
        } else if (key == "step") {
            if (!need_double(s.step)) return res;
        } else if (key == "n_pulses") {
            if (!need_double(s.n_pulses)) return res;
        } else if (key == "u") {
            if (!need_double(s.u)) return res;
        } else if (key == "eta0") {
            if (!need_double(s.eta0)) return res;
        } else if (key == "rate_cutoff") {
            if (!need_double(s.rate_cutoff)) return res;
        } else if (key == "eta0_attack") {
            if (!need_double(s.eta0_attack)) return res;
        } else if (key == "eta1_attack") {
            if (!need_double(s.eta1_attack)) return res;
        } else if (key == "eta_bob") {
            if (!need_double(s.params.eta_bob)) return res;
        } else if (key == "eta_alice") {
            if (!need_double(s.params.eta_alice)) return res;
        } else if (key == "e_detector") {
            if (!need_double(s.params.e_detector)) return res;
        } else if (key == "y0_bob") {
            if (!need_double(s.params.y0_bob)) return res;
        } else if (key == "y0_alice") {
            if (!need_double(s.params.y0_alice)) return res;
        } else if (key == "f_ec") {
            if (!need_double(s.params.f_ec)) return res;
        } else if (key == "beta_db_per_km") {
            if (!need_double(s.params.beta_db_per_km)) return res;
        } else {
            return fail("unknown key '" + key + "'");
        }
    }
    lineno = 0;
    if (s.step <= 0.0) return fail("step must be positive");
    if (s.mu < 0.0 || s.nu < 0.0 || s.lambda < 0.0) {
        return fail("intensities must be nonnegative");
    }
    if (s.from < 0.0 || s.to < 0.0) return fail("sweep range must be nonnegative");
    if (s.n_pulses < 0.0) return fail("n_pulses must be nonnegative");
    if (s.u < 0.0) return fail("u must be nonnegative");
    if (s.grid < 2) return fail("grid must be at least 2");
    if (!s.params.valid()) {
        lineno = 0;
        return fail("invalid experiment parameters");
    }
    res.ok = true;
    return res;
}

namespace {

const char* status_name(RateStatus st) {
    switch (st) {
        case RateStatus::Positive: return "positive";
        case RateStatus::ClampedZero: return "zero";
        case RateStatus::Insecure: return "insecure";
    }
    return "unknown";
}

struct Row {
    std::vector<double> values;
    std::string status;
};

Row sweep_row(const Scenario& s, double axis) {
    Row row;
    switch (s.kind) {
        case ScenarioKind::CoherentOneWay: {
            double mu = s.mu;
            if (s.mu_policy == MuPolicy::Optimized) {
                mu = pipelines::coherent_rate_optimized(s.params, s.estimator, s.nu,
                                                        axis)
                         .mu;
            }
            pipelines::CoherentPoint p =
                pipelines::coherent_rate(s.params, s.estimator, mu, s.nu, axis);
            row.values = {axis,
                          mu,
                          p.overall.gain,
                          p.overall.qber,
                          p.bounds.y1_low,
                          p.bounds.e1_high,
                          p.rate.rate};
            row.status = status_name(p.rate.status);
            break;
        }
        case ScenarioKind::CoherentTwoWay: {
            double mu = s.mu;
            double rate;
            if (s.mu_policy == MuPolicy::Optimized) {
                pipelines::OptimizedPoint p = pipelines::twoway_rate_optimized(
                    s.params, s.twoway, s.n_bsteps, axis);
                mu = p.mu;
                rate = p.rate;
            } else {
                rate = pipelines::twoway_rate(s.params, s.twoway, s.n_bsteps, mu,
                                              axis);
            }
            const ChannelObservables obs = coherent_observables(
                s.params, transmittance(s.params, axis), mu);
            row.values = {axis, mu, obs.gain, obs.qber, 0.0, 0.0, rate};
            row.status = rate > 0.0 ? "positive" : "zero";
            break;
        }
        case ScenarioKind::Triggering:
        case ScenarioKind::TriggeringFluct: {
            const bool fluct = s.kind == ScenarioKind::TriggeringFluct;
            pipelines::TrigFluctConfig cfg;
            if (s.n_pulses > 0.0) cfg.n_pulses = s.n_pulses;
            double mu = s.mu;
            double rate;
            if (s.mu_policy == MuPolicy::Optimized) {
                pipelines::OptimizedPoint p =
                    fluct ? pipelines::trig_fluct_rate_optimized(s.params, s.trig,
                                                                 s.eta0, axis, cfg)
                          : pipelines::trig_rate_optimized(s.params, s.trig, s.eta0,
                                                           axis);
                mu = p.mu;
                rate = p.rate;
            } else {
                rate = fluct ? pipelines::trig_fluct_rate(s.params, s.trig, mu, s.nu,
                                                          s.eta0, axis, cfg)
                             : pipelines::trig_rate(s.params, s.trig, mu, s.nu,
                                                    s.eta0, axis);
            }
            const double eta = (s.eta0 > 0.0 ? s.eta0 : s.params.eta_bob) *
                               std::pow(10.0, -axis / 10.0);
            const TriggeredObservables t =
                triggering_observables(s.params, mu, eta);
            const double q = t.q_mu0 + t.q_mu1;
            const double e =
                q > 0.0 ? (t.e_mu0 * t.q_mu0 + t.e_mu1 * t.q_mu1) / q : 0.5;
            row.values = {axis, mu, q, e, 0.0, 0.0, rate};
            row.status = rate > 0.0 ? "positive" : "zero";
            break;
        }
        case ScenarioKind::Entangled: {
            double lambda = s.lambda;
            double rate;
            if (s.mu_policy == MuPolicy::Optimized) {
                pipelines::OptimizedPoint p = pipelines::ent_rate_optimized(
                    s.params, s.ent, s.n_bsteps, axis, s.n_pulses);
                lambda = p.mu;
                rate = p.rate;
            } else {
                rate = pipelines::ent_rate(s.params, s.ent, s.n_bsteps, lambda, axis,
                                           s.n_pulses);
            }
            const double eta_arm =
                s.params.eta_bob * std::pow(10.0, -axis / 20.0);
            const ChannelObservables obs =
                ent_observables(s.params, lambda, eta_arm, eta_arm);
            row.values = {axis, lambda, obs.gain, obs.qber, 0.0, 0.0, rate};
            row.status = rate > 0.0 ? "positive" : "zero";
            break;
        }
        default:
            break;
    }
    return row;
}

}  // namespace

ResultTable run_scenario(const Scenario& s, int jobs) {
    ResultTable table;
    switch (s.kind) {
        case ScenarioKind::CoherentOneWay:
        case ScenarioKind::CoherentTwoWay:
        case ScenarioKind::Triggering:
        case ScenarioKind::TriggeringFluct:
        case ScenarioKind::Entangled: {
            table.columns = {"axis", "mu", "gain", "qber", "y1_low", "e1_high",
                             "rate"};
            std::vector<double> axes;
            for (double a = s.from; a <= s.to + 1e-9; a += s.step) axes.push_back(a);
            std::vector<Row> rows(axes.size());
            if (jobs > 1 && axes.size() > 1) {
                std::atomic<std::size_t> next{0};
                auto worker = [&]() {
                    for (;;) {
                        const std::size_t i = next.fetch_add(1);
                        if (i >= axes.size()) break;
                        rows[i] = sweep_row(s, axes[i]);
                    }
                };
                std::vector<std::thread> pool;
                const int n = std::min<int>(jobs, int(axes.size()));
                pool.reserve(n);
                for (int t = 0; t < n; ++t) pool.emplace_back(worker);
                for (auto& t : pool) t.join();
            } else {
                for (std::size_t i = 0; i < axes.size(); ++i) {
                    rows[i] = sweep_row(s, axes[i]);
                }
            }
            for (Row& r : rows) {
                table.rows.push_back(std::move(r.values));
                table.status.push_back(std::move(r.status));
            }
            break;
        }
        case ScenarioKind::FluctAlloc: {
            table.columns = {"distance_km", "mu",     "nu",  "n_signal",
                             "n_vacuum",    "n_weak", "rate", "key_bits"};
            ConfidenceSpec conf;
            conf.u = s.u;
            const double n_total = s.n_pulses > 0.0 ? s.n_pulses : 6e9;
            AllocationResult a =
                optimize_allocation(s.params, n_total, s.mu, s.from, conf);
            table.rows.push_back({s.from, s.mu, a.nu, a.budget.n_signal,
                                  a.budget.n_vacuum, a.budget.n_weak, a.rate,
                                  n_total * a.rate});
            table.status.push_back(a.rate > 0.0 ? "positive" : "zero");
            break;
        }
        case ScenarioKind::PaCompare: {
            table.columns = {"gap_argmax", "gap_value", "rel_deviation"};
            pipelines::PaComparison c = pipelines::pa_comparison(
                s.step > 0.0 && s.step < 0.5 ? s.step : 1e-4);
            table.rows.push_back(
                {c.gap_argmax, c.gap_value, c.rel_deviation_at_argmax});
            table.status.push_back("positive");
            break;
        }
        case ScenarioKind::GlRegion: {
            table.columns = {"delta_b", "delta_p", "tolerable", "margin"};
            const int grid = std::max(2, s.grid);
            const double hi = s.to > 0.0 ? s.to : 0.25;
            const double lo = s.from;
            for (int i = 0; i < grid; ++i) {
                for (int j = 0; j < grid; ++j) {
                    const double db =
                        lo + (hi - lo) * double(i) / double(grid - 1);
                    const double dp =
                        lo + (hi - lo) * double(j) / double(grid - 1);
                    GlRegionResult r = gl_tolerable_region(db, dp);
                    table.rows.push_back(
                        {db, dp, r.tolerable ? 1.0 : 0.0, r.best_margin});
                    table.status.push_back(r.tolerable ? "positive" : "insecure");
                }
            }
            break;
        }
        case ScenarioKind::Timeshift: {
            table.columns = {"eta0", "eta1", "eve_info", "mismatch_rate"};
            TimeshiftResult t = timeshift_analysis(s.eta0_attack, s.eta1_attack);
            table.rows.push_back(
                {s.eta0_attack, s.eta1_attack, t.eve_info, t.mismatch_rate});
            table.status.push_back(t.eve_info > 0.0 ? "insecure" : "positive");
            break;
        }
    }
    return table;
}

void emit_csv(const ResultTable& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << ",status\n";
    char buf[64];
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) out << ',';
            std::snprintf(buf, sizeof(buf), "%.9g", table.rows[r][c]);
            out << buf;
        }
        out << ',' << (r < table.status.size() ? table.status[r] : "") << '\n';
    }
}

bool emit_csv_file(const ResultTable& table, const std::string& path,
                   std::string* error_message) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        if (error_message) *error_message = "cannot open '" + path + "' for writing";
        return false;
    }
    emit_csv(table, out);
    out.flush();
    if (!out) {
        if (error_message) *error_message = "write failure on '" + path + "'";
        return false;
    }
    return true;
}

}  // namespace qkd
