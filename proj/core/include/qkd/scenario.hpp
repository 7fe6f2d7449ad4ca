#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qkd/params.hpp"
#include "qkd/pipelines.hpp"

namespace qkd {

// What a config file describes: one named setup plus a pipeline family, an
// estimator / post-processing choice, a sweep axis, and fluctuation settings.
enum class ScenarioKind {
    CoherentOneWay,   // coherent source, one-way post-processing
    CoherentTwoWay,   // coherent source, B steps or recurrence
    Triggering,       // triggering PDC, asymptotic
    TriggeringFluct,  // triggering PDC with statistical fluctuations
    Entangled,        // entanglement PDC
    FluctAlloc,       // pulse-budget / nu optimization at one distance
    PaCompare,        // privacy-amplification comparison scan
    GlRegion,         // Gottesman-Lo tolerable-region grid
    Timeshift,        // efficiency-mismatch attack table
};

enum class SweepAxis { Km, Db };
enum class MuPolicy { Fixed, Optimized };

struct Scenario {
    ScenarioKind kind = ScenarioKind::CoherentOneWay;
    ExperimentParams params;

    pipelines::CoherentEstimator estimator = pipelines::CoherentEstimator::Infinite;
    pipelines::TwoWayScheme twoway = pipelines::TwoWayScheme::OneLocc;
    pipelines::TrigScheme trig = pipelines::TrigScheme::Infinite;
    pipelines::EntScheme ent = pipelines::EntScheme::OneWay;
    int n_bsteps = 1;

    MuPolicy mu_policy = MuPolicy::Optimized;
    double mu = 0.0;
    double nu = 0.0;
    double lambda = 0.0;

    SweepAxis axis = SweepAxis::Km;
    double from = 0.0;
    double to = 0.0;
    double step = 1.0;

    double n_pulses = 0.0;  // 0 = asymptotic
    double u = 10.0;
    double eta0 = 0.0;      // effective 0 dB efficiency override (0 = preset)
    double rate_cutoff = 0.0;

    // GlRegion / Timeshift extras
    int grid = 101;
    double eta0_attack = 0.0;
    double eta1_attack = 0.0;
};

struct ParseError {
    int line = 0;
    std::string message;
};

// Line-oriented `key = value` with `[section]` headers and `#` comments;
// unknown keys are errors (fail closed).
struct ParseResult {
    bool ok = false;
    Scenario scenario;
    ParseError error;
};
ParseResult parse_config(const std::string& text);

// One output row of a scenario run.
struct ResultRow {
    std::vector<std::pair<std::string, double>> values;
    std::string status;
};

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;  // per row
};

// Deterministic evaluation of the scenario; jobs > 1 evaluates sweep points
// concurrently (rows stay ordered by axis value).
ResultTable run_scenario(const Scenario& scenario, int jobs = 1);

// Header line + rows, 9 significant digits, '\n' newlines, ',' separator.
void emit_csv(const ResultTable& table, std::ostream& out);
bool emit_csv_file(const ResultTable& table, const std::string& path,
                   std::string* error_message = nullptr);

}  // namespace qkd
