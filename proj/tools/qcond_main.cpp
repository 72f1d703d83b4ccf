#include <CLI11.hpp>
#include <Eigen/Core>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "qcond/errors.hpp"
#include "qcond/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitDegenerate = 4;

const std::set<std::string> kDegenerateErrors = {
    "ZeroDenominator",    "CausticTime",        "DegenerateDirections",
    "DegeneratePairing",  "ZeroTimeSeparation", "CoincidentTimes",
    "ParallelLines",      "SingularGraph",      "UnboundedFirstSet",
    "UnboundedConditionSet", "HypothesisViolation"};

int classify_error(const qcond::Error& e) {
    std::string name = e.name();
    if (name == "ConfigParseError") return kExitConfig;
    if (name == "QuadratureNotConverged") return kExitNoConverge;
    if (kDegenerateErrors.count(name)) return kExitDegenerate;
    return 1;
}

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw qcond::ConfigParseError("cannot write output file: " + out_path);
    out << text << "\n";
}

struct CheckCase {
    std::string name;
    std::string config;
    double tolerance;  // max allowed formula/oracle relative discrepancy
};

// Small fixed scenarios exercising every model; grids kept modest so the
// whole check runs in seconds.
const std::vector<CheckCase> kCheckCases = {
    {"weyl-two-round",
     R"({"model":"weyl_chain","method":"both","split":1,
         "measurements":[{"set":[[0,1]]},{"set":[[0,1]]},{"set":[[-1,1]]},
                         {"set":[[-1,1]]}],
         "numerics":{"grid_n":512,"grid_l":40}})",
     0.05},
    {"weyl-three-round",
     R"({"model":"weyl_chain","method":"both","split":2,
         "measurements":[{"set":[[-1,1]]},{"set":[[-1,1]]},{"set":[[-1,1]]},
                         {"set":[[-1,1]]},{"set":[[0,1]]},{"set":[[-1,0]]}],
         "numerics":{"grid_n":512,"grid_l":40}})",
     0.05},
    {"free-particle",
     R"({"model":"free_particle","method":"both","split":2,
         "params":{"m":1.0,"hbar":1.0},
         "measurements":[{"set":[[-1,1]],"time":0.0},{"set":[[-1,1]],"time":1.0},
                         {"set":[[-0.5,1.5]],"time":2.0}],
         "numerics":{"grid_n":512,"grid_l":40}})",
     0.05},
    {"oscillator",
     R"({"model":"oscillator","method":"both","split":2,
         "params":{"m":1.0,"omega":1.0,"hbar":1.0},
         "measurements":[{"set":[[-1,1]],"time":0.0},
                         {"set":[[-1,1]],"time":1.0471975511965976},
                         {"set":[[-1,1]],"time":2.0943951023931953}],
         "numerics":{"grid_n":512,"grid_l":40}})",
     0.05},
    {"finite-dim",
     R"({"model":"finite_dim","method":"both","split":2,
         "regions":[{"generators":[[1,0]],"boxes":[[[-1,1]]]},
                    {"generators":[[0,1]],"boxes":[[[-1,1]]]},
                    {"generators":[[1,1]],"boxes":[[[-1,1]]]}],
         "numerics":{"grid_n":512,"grid_l":40}})",
     0.05},
    {"kg-pairings",
     R"({"model":"kg_pairings","method":"formula","split":2,
         "pairings":{"e12":1.0,"e13":2.0,"e23":1.0},
         "measurements":[{"set":[[-1,1]]},{"set":[[-1,1]]},{"set":[[-1,1]]}]})",
     0.0}};

int run_check() {
    bool all_ok = true;
    for (const auto& cc : kCheckCases) {
        try {
            auto cfg = qcond::scenario::parse_config(cc.config);
            auto report = qcond::scenario::run_scenario(cfg);
            bool ok = true;
            std::ostringstream detail;
            if (report.formula.present) {
                double p = report.formula.probability;
                detail << "formula=" << p;
                if (!(p > -1e-3 && p < 1.0 + 1e-3)) ok = false;
            }
            if (report.oracle.present) {
                detail << " oracle=" << report.oracle.probability;
                if (report.formula.present) {
                    detail << " rel=" << report.discrepancy;
                    if (report.discrepancy > cc.tolerance) ok = false;
                }
            }
            std::cout << (ok ? "[ OK ] " : "[FAIL] ") << cc.name << "  "
                      << detail.str() << "\n";
            all_ok = all_ok && ok;
        } catch (const qcond::Error& e) {
            std::cout << "[FAIL] " << cc.name << "  error " << e.name() << ": "
                      << e.what() << "\n";
            all_ok = false;
        }
    }
    return all_ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("QCOND_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"Sequential-measurement prior probability engine"};
    app.require_subcommand(1);

    std::string run_file, run_method, run_out;
    auto* run = app.add_subcommand("run", "Evaluate one scenario file");
    run->add_option("file", run_file, "JSON scenario config")->required();
    run->add_option("--method", run_method, "formula | oracle | both");
    run->add_option("--out", run_out, "write the JSON report here");

    std::string sweep_file, sweep_axis, sweep_out;
    std::vector<double> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "Sweep one axis of a scenario");
    sweep->add_option("file", sweep_file, "JSON scenario config")->required();
    sweep->add_option("--axis", sweep_axis, "set-width | time | transform-count")
        ->required();
    sweep->add_option("--values", sweep_values, "axis values")->required();
    sweep->add_option("--out", sweep_out, "write the CSV table here");

    auto* check = app.add_subcommand("check", "Run the bundled self-check scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) {
            auto cfg = qcond::scenario::load_config(run_file);
            if (!run_method.empty()) {
                if (run_method == "formula")
                    cfg.method = qcond::scenario::Method::formula;
                else if (run_method == "oracle")
                    cfg.method = qcond::scenario::Method::oracle;
                else if (run_method == "both")
                    cfg.method = qcond::scenario::Method::both;
                else
                    throw qcond::ConfigParseError("unknown method: " + run_method);
            }
            auto report = qcond::scenario::run_scenario(cfg);
            write_or_print(qcond::scenario::report_to_json(report), run_out);
            return kExitOk;
        }
        if (sweep->parsed()) {
            auto cfg = qcond::scenario::load_config(sweep_file);
            auto rows = qcond::scenario::run_sweep(cfg, sweep_axis, sweep_values);
            write_or_print(qcond::scenario::sweep_to_csv(sweep_axis, rows), sweep_out);
            return kExitOk;
        }
        if (check->parsed()) return run_check();
    } catch (const qcond::Error& e) {
        std::cerr << "error (" << e.name() << "): " << e.what() << "\n";
        return classify_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
