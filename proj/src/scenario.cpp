#include "qcond/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qcond/errors.hpp"
#include "qcond/grid_oracle.hpp"
#include "qcond/pairing_core.hpp"
#include "qcond/prior_engine.hpp"
#include "qcond/propagators.hpp"
#include "qcond/regions.hpp"
#include "qcond/symplectic.hpp"

namespace qcond::scenario {

using nlohmann::json;

namespace {

double parse_endpoint(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigParseError("interval endpoint must be a number, \"inf\" or \"-inf\"");
}

IntervalUnion parse_set(const json& v) {
    if (!v.is_array()) throw ConfigParseError("a set must be an array of [lo, hi] pairs");
    std::vector<IntervalUnion::Interval> parts;
    for (const auto& pair : v) {
        if (!pair.is_array() || pair.size() != 2)
            throw ConfigParseError("each interval must be a [lo, hi] pair");
        parts.push_back({parse_endpoint(pair[0]), parse_endpoint(pair[1])});
    }
    return IntervalUnion(std::move(parts));
}

Model parse_model(const std::string& s) {
    if (s == "weyl_chain") return Model::weyl_chain;
    if (s == "free_particle") return Model::free_particle;
    if (s == "oscillator") return Model::oscillator;
    if (s == "finite_dim") return Model::finite_dim;
    if (s == "kg_pairings") return Model::kg_pairings;
    throw ConfigParseError("unknown model: " + s);
}

Method parse_method(const std::string& s) {
    if (s == "formula") return Method::formula;
    if (s == "oracle") return Method::oracle;
    if (s == "both") return Method::both;
    throw ConfigParseError("unknown method: " + s);
}

quad::Options quad_options(const ScenarioConfig& cfg) {
    quad::Options opt;
    opt.rel_tol = cfg.rel_tol;
    opt.max_evals = cfg.max_evals;
    return opt;
}

oracle::GridSpec grid_spec(const ScenarioConfig& cfg) {
    return {cfg.grid_n, cfg.grid_l, cfg.hbar};
}

std::vector<propagators::SpacetimeWindow> windows_of(const ScenarioConfig& cfg) {
    if (cfg.sets.size() != cfg.times.size())
        throw ConfigParseError("each measurement needs both a set and a time");
    std::vector<propagators::SpacetimeWindow> w;
    for (std::size_t i = 0; i < cfg.sets.size(); ++i)
        w.push_back({cfg.times[i], cfg.sets[i]});
    return w;
}

symplectic::SymplecticSpace& shared_canonical_space(int n) {
    static std::map<int, std::unique_ptr<symplectic::SymplecticSpace>> cache;
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<symplectic::SymplecticSpace>(
            symplectic::SymplecticSpace::canonical(n));
    return *slot;
}

std::vector<regions::GeneratedRegion> build_regions(const ScenarioConfig& cfg) {
    if (cfg.regions.empty())
        throw ConfigParseError("finite_dim scenarios need a regions list");
    std::size_t dim = cfg.regions[0].generators.at(0).size();
    if (dim == 0 || dim % 2 != 0)
        throw ConfigParseError("region generators must have even length");
    auto& space = shared_canonical_space(static_cast<int>(dim) / 2);
    std::vector<regions::GeneratedRegion> out;
    for (const auto& rd : cfg.regions) {
        Eigen::MatrixXd gens(dim, rd.generators.size());
        for (std::size_t g = 0; g < rd.generators.size(); ++g) {
            if (rd.generators[g].size() != dim)
                throw ConfigParseError("region generators must share one dimension");
            for (std::size_t i = 0; i < dim; ++i) gens(i, g) = rd.generators[g][i];
        }
        out.emplace_back(space, gens, rd.boxes);
    }
    return out;
}

PathResult formula_path(const ScenarioConfig& cfg, Report& report) {
    PathResult r;
    r.present = true;
    quad::Options opt = quad_options(cfg);
    switch (cfg.model) {
        case Model::weyl_chain: {
            prior::ChainSpec chain{cfg.sets, cfg.split, cfg.hbar};
            r.q_den = prior::q_box(chain, true, opt);
            r.probability = prior::prior_probability_box(chain, opt);
            r.q_num = r.probability * r.q_den;
            break;
        }
        case Model::free_particle:
        case Model::oscillator: {
            auto windows = windows_of(cfg);
            if (windows.size() != 3 || cfg.split != 2)
                throw ConfigParseError(
                    "free_particle/oscillator scenarios use 3 measurements, split 2");
            propagators::OscParams params{cfg.m, cfg.model == Model::oscillator ? cfg.omega : 0.0,
                                          cfg.hbar};
            std::vector<propagators::SpacetimeWindow> pairw{windows[0], windows[1]};
            if (cfg.model == Model::free_particle) {
                r.q_den = propagators::galilei_Q(pairw, params, opt);
                r.q_num = propagators::galilei_Q(windows, params, opt);
            } else {
                r.q_den = propagators::osc_Q(pairw, params, opt);
                r.q_num = propagators::osc_Q(windows, params, opt);
                double cov = propagators::osc_Q(windows, params, opt, true);
                report.extras["covariant_q3"] = cov;
                report.extras["covariant_probability"] = cov / r.q_den;
            }
            if (r.q_den < 1e-12) throw ZeroDenominator("two-window trace vanishes");
            r.probability = r.q_num / r.q_den;
            break;
        }
        case Model::finite_dim: {
            auto regs = build_regions(cfg);
            if (regs.size() != 3)
                throw ConfigParseError("finite_dim scenarios use exactly 3 regions");
            r.q_den = regions::lagrangian_overlap_trace(regs[0], regs[1]);
            r.probability = prior::finite_dim_prior(regs, cfg.split, opt);
            r.q_num = r.probability * r.q_den;
            break;
        }
        case Model::kg_pairings: {
            if (!cfg.has_pairings)
                throw ConfigParseError("kg_pairings scenarios need a pairings object");
            if (cfg.sets.size() != 3)
                throw ConfigParseError("kg_pairings scenarios use 3 sets");
            prior::PairingMatrix e{cfg.e12, cfg.e13, cfg.e23};
            r.q_den = core::q2_core(e.e12, cfg.sets[0].measure(), cfg.sets[1].measure());
            r.probability =
                prior::kg_prior_probability(e, cfg.sets[0], cfg.sets[1], cfg.sets[2], opt);
            r.q_num = r.probability * r.q_den;
            report.extras["cosine_q3"] = prior::kg_Q3(e, cfg.sets[0], cfg.sets[1],
                                                      cfg.sets[2], opt,
                                                      prior::KgIntegrand::cosine);
            break;
        }
    }
    return r;
}

std::vector<oracle::ChainEvent> oracle_events(const ScenarioConfig& cfg) {
    std::vector<oracle::ChainEvent> events;
    switch (cfg.model) {
        case Model::weyl_chain:
            for (std::size_t i = 0; i < cfg.sets.size(); ++i)
                events.push_back({i % 2 == 0 ? oracle::ObservableDescriptor::position()
                                             : oracle::ObservableDescriptor::momentum(),
                                  cfg.sets[i]});
            break;
        case Model::free_particle:
            for (std::size_t i = 0; i < cfg.sets.size(); ++i)
                events.push_back(
                    {oracle::ObservableDescriptor::free_evolved(cfg.times.at(i), cfg.m),
                     cfg.sets[i]});
            break;
        case Model::oscillator:
            for (std::size_t i = 0; i < cfg.sets.size(); ++i)
                events.push_back({oracle::ObservableDescriptor::osc_evolved(
                                      cfg.times.at(i), cfg.m, cfg.omega),
                                  cfg.sets[i]});
            break;
        case Model::finite_dim: {
            auto regs = build_regions(cfg);
            for (const auto& reg : regs) {
                if (reg.space().dim() != 2 || reg.n_generators() != 1)
                    throw UnknownDescriptor(
                        "oracle path covers single-mode finite_dim regions only");
                Eigen::Vector2d row =
                    reg.space().form().transpose() * reg.generators().col(0);
                events.push_back({{row[0], row[1]}, reg.box()[0]});
            }
            break;
        }
        case Model::kg_pairings:
            throw UnknownDescriptor("kg_pairings scenarios have no grid oracle");
    }
    return events;
}

PathResult oracle_path(const ScenarioConfig& cfg, Report& report) {
    PathResult r;
    if (cfg.model == Model::kg_pairings) {
        report.notes += "oracle path not defined for pairing-only scenarios; ";
        return r;
    }
    oracle::Oracle grid_oracle(grid_spec(cfg));
    // weyl_chain's split counts rounds of two events each.
    oracle::ProjectionChainSpec chain{
        oracle_events(cfg),
        cfg.model == Model::weyl_chain ? 2 * cfg.split : cfg.split};
    std::vector<oracle::ChainEvent> condition(chain.events.begin(),
                                              chain.events.begin() + chain.split);
    r.present = true;
    r.q_den = grid_oracle.chain_trace(condition);
    r.q_num = grid_oracle.chain_trace(chain.events);
    r.probability = oracle::prior_conditional_probability_oracle(grid_oracle, chain);
    return r;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        ScenarioConfig cfg;
        cfg.model = parse_model(j.at("model").get<std::string>());
        if (j.contains("method")) cfg.method = parse_method(j["method"].get<std::string>());
        if (j.contains("params")) {
            const auto& p = j["params"];
            if (p.contains("hbar")) cfg.hbar = p["hbar"].get<double>();
            if (p.contains("m")) cfg.m = p["m"].get<double>();
            if (p.contains("omega")) cfg.omega = p["omega"].get<double>();
        }
        if (j.contains("split")) cfg.split = j["split"].get<int>();
        if (j.contains("measurements")) {
            for (const auto& meas : j["measurements"]) {
                cfg.sets.push_back(parse_set(meas.at("set")));
                if (meas.contains("time")) cfg.times.push_back(meas["time"].get<double>());
            }
        }
        if (j.contains("regions")) {
            for (const auto& reg : j["regions"]) {
                RegionData rd;
                for (const auto& gen : reg.at("generators"))
                    rd.generators.push_back(gen.get<std::vector<double>>());
                for (const auto& box : reg.at("boxes")) rd.boxes.push_back(parse_set(box));
                cfg.regions.push_back(std::move(rd));
            }
        }
        if (j.contains("pairings")) {
            const auto& p = j["pairings"];
            cfg.e12 = p.at("e12").get<double>();
            cfg.e13 = p.at("e13").get<double>();
            cfg.e23 = p.at("e23").get<double>();
            cfg.has_pairings = true;
        }
        if (j.contains("numerics")) {
            const auto& n = j["numerics"];
            if (n.contains("grid_n")) cfg.grid_n = n["grid_n"].get<int>();
            if (n.contains("grid_l")) cfg.grid_l = n["grid_l"].get<double>();
            if (n.contains("rel_tol")) cfg.rel_tol = n["rel_tol"].get<double>();
            if (n.contains("max_evals")) cfg.max_evals = n["max_evals"].get<long long>();
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigParseError(std::string("config field error: ") + e.what());
    }
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Report run_scenario(const ScenarioConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    Report report;
    if (cfg.method == Method::formula || cfg.method == Method::both)
        report.formula = formula_path(cfg, report);
    if (cfg.method == Method::oracle || cfg.method == Method::both)
        report.oracle = oracle_path(cfg, report);
    if (report.formula.present && report.oracle.present)
        report.discrepancy = std::abs(report.formula.probability - report.oracle.probability) /
                             std::max(std::abs(report.oracle.probability), 1e-12);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string report_to_json(const Report& report) {
    json j;
    auto path_json = [](const PathResult& r) {
        json p;
        p["present"] = r.present;
        if (r.present) {
            p["probability"] = r.probability;
            p["q_numerator"] = r.q_num;
            p["q_denominator"] = r.q_den;
        }
        return p;
    };
    j["formula"] = path_json(report.formula);
    j["oracle"] = path_json(report.oracle);
    if (report.formula.present && report.oracle.present)
        j["relative_discrepancy"] = report.discrepancy;
    if (!report.extras.empty()) j["extras"] = report.extras;
    if (!report.notes.empty()) j["notes"] = report.notes;
    j["wall_seconds"] = report.wall_seconds;
    return j.dump(2);
}

namespace {

ScenarioConfig with_first_width(const ScenarioConfig& cfg, double width) {
    ScenarioConfig out = cfg;
    auto resize = [&](IntervalUnion& s) {
        double center = 0.5 * (s.lower() + s.upper());
        s = IntervalUnion(center - 0.5 * width, center + 0.5 * width);
    };
    if (!out.sets.empty())
        resize(out.sets[0]);
    else if (!out.regions.empty() && !out.regions[0].boxes.empty())
        resize(out.regions[0].boxes[0]);
    else
        throw ConfigParseError("set-width sweep needs a first measurement set");
    return out;
}

double rho_spread(const ScenarioConfig& cfg) {
    oracle::Oracle grid_oracle(grid_spec(cfg));
    // weyl_chain's split counts rounds of two events each.
    oracle::ProjectionChainSpec chain{
        oracle_events(cfg),
        cfg.model == Model::weyl_chain ? 2 * cfg.split : cfg.split};
    std::vector<oracle::DensityOperator> rhos;
    rhos.push_back(oracle::DensityOperator::ground_state(grid_spec(cfg)));
    rhos.push_back(oracle::DensityOperator::thermal_like(grid_spec(cfg), 4, 1.0));
    rhos.push_back(oracle::DensityOperator::displaced_gaussian(grid_spec(cfg), 1.0, 0.5));
    double lo = 2.0, hi = -1.0;
    for (const auto& rho : rhos) {
        double p = oracle::conditional_probability(grid_oracle, rho, chain);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return hi - lo;
}

double formula_probability(const ScenarioConfig& cfg) {
    Report scratch;
    return formula_path(cfg, scratch).probability;
}

double transform_deviation(const ScenarioConfig& cfg, int count) {
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double base = formula_probability(cfg);
    double max_dev = 0.0;
    for (int i = 0; i < count; ++i) {
        ScenarioConfig t = cfg;
        switch (cfg.model) {
            case Model::free_particle: {
                // Galilei boost + translation: S_j -> S_j + x0 + v t_j.
                double x0 = unit(rng), v = unit(rng);
                for (std::size_t jj = 0; jj < t.sets.size(); ++jj)
                    t.sets[jj] = t.sets[jj].scaled(1.0, x0 + v * t.times[jj]);
                break;
            }
            case Model::oscillator: {
                // Phase-space rotation: common time offset.
                double c = 0.3 * (unit(rng) + 1.0);
                for (double& tt : t.times) tt += c;
                break;
            }
            case Model::finite_dim: {
                double a = 0.0;
                while (std::abs(a) < 0.3) a = unit(rng) + (unit(rng) > 0 ? 1.0 : -1.0);
                double b = unit(rng), c = unit(rng);
                Eigen::MatrixXd sp(2, 2);
                sp << a, b, c, (1.0 + b * c) / a;
                Eigen::VectorXd shift(2);
                shift << unit(rng), unit(rng);
                auto regs = build_regions(cfg);
                t.regions.clear();
                for (const auto& reg : regs) {
                    auto moved = reg.transformed(sp, shift);
                    RegionData rd;
                    for (int g = 0; g < moved.n_generators(); ++g) {
                        std::vector<double> gen(moved.generators().rows());
                        for (int ii = 0; ii < moved.generators().rows(); ++ii)
                            gen[ii] = moved.generators()(ii, g);
                        rd.generators.push_back(std::move(gen));
                    }
                    rd.boxes = moved.box();
                    t.regions.push_back(std::move(rd));
                }
                break;
            }
            default:
                throw ConfigParseError(
                    "transform-count sweep supports free_particle, oscillator and "
                    "finite_dim scenarios");
        }
        double p = formula_probability(t);
        max_dev = std::max(max_dev, std::abs(p - base) / std::max(std::abs(base), 1e-12));
    }
    return max_dev;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, const std::string& axis,
                                const std::vector<double>& values) {
    std::vector<SweepRow> rows;
    for (double v : values) {
        SweepRow row;
        row.axis_value = v;
        if (axis == "set-width") {
            ScenarioConfig t = with_first_width(cfg, v);
            if (cfg.method != Method::oracle) {
                row.formula_p = formula_probability(t);
                row.has_formula = true;
            }
            if (cfg.method != Method::formula && cfg.model != Model::kg_pairings) {
                Report scratch;
                row.oracle_p = oracle_path(t, scratch).probability;
                row.has_oracle = true;
                row.rho_spread = rho_spread(t);
                row.has_spread = true;
            }
        } else if (axis == "time") {
            ScenarioConfig t = cfg;
            for (double& tt : t.times) tt += v;
            row.formula_p = formula_probability(t);
            row.has_formula = true;
            if (cfg.method == Method::both || cfg.method == Method::oracle) {
                Report scratch;
                row.oracle_p = oracle_path(t, scratch).probability;
                row.has_oracle = true;
            }
        } else if (axis == "transform-count") {
            row.formula_p = transform_deviation(cfg, static_cast<int>(v));
            row.has_formula = true;
        } else {
            throw ConfigParseError("unknown sweep axis: " + axis);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(const std::string& axis, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << axis << ",formula_probability,oracle_probability,rho_spread\n";
    for (const auto& row : rows) {
        out << row.axis_value << ",";
        if (row.has_formula) out << row.formula_p;
        out << ",";
        if (row.has_oracle) out << row.oracle_p;
        out << ",";
        if (row.has_spread) out << row.rho_spread;
        out << "\n";
    }
    return out.str();
}

}  // namespace qcond::scenario
