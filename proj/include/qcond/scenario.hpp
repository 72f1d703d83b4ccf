#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcond/interval.hpp"

namespace qcond::scenario {

enum class Model { weyl_chain, free_particle, oscillator, finite_dim, kg_pairings };
enum class Method { formula, oracle, both };

struct RegionData {
    std::vector<std::vector<double>> generators;  // one vector per generator
    std::vector<IntervalUnion> boxes;
};

struct ScenarioConfig {
    Model model = Model::weyl_chain;
    Method method = Method::both;
    double hbar = 1.0;
    double m = 1.0;
    double omega = 1.0;
    int split = 1;

    std::vector<IntervalUnion> sets;   // weyl_chain / free_particle / oscillator / kg
    std::vector<double> times;         // free_particle / oscillator
    std::vector<RegionData> regions;   // finite_dim
    double e12 = 0.0, e13 = 0.0, e23 = 0.0;  // kg_pairings
    bool has_pairings = false;

    int grid_n = 1024;
    double grid_l = 40.0;
    double rel_tol = 1e-3;
    long long max_evals = 100'000'000;
    unsigned seed = 1;
};

struct PathResult {
    bool present = false;
    double probability = 0.0;
    double q_num = 0.0;
    double q_den = 0.0;
};

struct Report {
    PathResult formula;
    PathResult oracle;
    double discrepancy = 0.0;  // |formula - oracle| / max(|oracle|, eps)
    std::map<std::string, double> extras;
    double wall_seconds = 0.0;
    std::string notes;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

Report run_scenario(const ScenarioConfig& config);
std::string report_to_json(const Report& report);

struct SweepRow {
    double axis_value = 0.0;
    double formula_p = 0.0;
    double oracle_p = 0.0;
    double rho_spread = 0.0;  // spread of conditional probability over fixed rhos
    bool has_formula = false, has_oracle = false, has_spread = false;
};

/// axis: "set-width" (values are S1 widths), "time" (common time offsets) or
/// "transform-count" (numbers of random covariance transforms; the value
/// column reports the max relative deviation).
std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const std::string& axis,
                                const std::vector<double>& values);
std::string sweep_to_csv(const std::string& axis, const std::vector<SweepRow>& rows);

}  // namespace qcond::scenario
