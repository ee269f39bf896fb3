// Copyright 2026 The pie-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pielab/experiment.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <vector>

#include "pielab/error.hpp"
#include "pielab/rng.hpp"

namespace pielab::app {

namespace fs = std::filesystem;
using io::json;

namespace {

[[noreturn]] void bad(const std::string &key, const std::string &msg) {
    fail(Errc::ConfigError, "config." + key + ": " + msg);
}

const json &need(const json &j, const std::string &key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        bad(where.empty() ? key : where + "." + key, "missing");
    }
    return j.at(key);
}

template <typename T>
T value(const json &j, const std::string &key, const std::string &where) {
    try {
        return need(j, key, where).get<T>();
    } catch (const json::exception &e) {
        bad(where.empty() ? key : where + "." + key, e.what());
    }
}

template <typename T>
T value_or(const json &j, const std::string &key, T fallback, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        return fallback;
    }
    return value<T>(j, key, where);
}

std::string resolve(const fs::path &base, const std::string &p) {
    const fs::path path(p);
    return (path.is_absolute() ? path : base / path).lexically_normal().string();
}

struct CircuitParams {
    std::string type = "ising";
    int qubits = 8;
    double field = 0.5;
    double time = 1.5;
    int steps = 3;
    int layers = 2;
    std::vector<double> angles;
    std::optional<Circuit> fixed;
};

CircuitParams parse_circuit(const json &cfg, const fs::path &base) {
    const json &c = need(cfg, "circuit", "");
    CircuitParams p;
    p.type = value_or<std::string>(c, "type", "ising", "circuit");
    if (p.type == "ising") {
        p.qubits = value<int>(c, "qubits", "circuit");
        p.field = value_or<double>(c, "field", 0.5, "circuit");
        p.time = value<double>(c, "time", "circuit");
        p.steps = value<int>(c, "trotter_steps", "circuit");
    } else if (p.type == "su2_ansatz") {
        p.qubits = value<int>(c, "qubits", "circuit");
        p.layers = value<int>(c, "layers", "circuit");
        if (c.contains("angles_file")) {
            const json a = io::read_json(resolve(base, value<std::string>(c, "angles_file", "circuit")));
            p.angles = value<std::vector<double>>(a, "angles", "angles_file");
        } else {
            p.angles = value<std::vector<double>>(c, "angles", "circuit");
        }
    } else if (p.type == "file") {
        p.fixed = io::circuit_from_json(io::read_json(resolve(base, value<std::string>(c, "file", "circuit"))));
        p.qubits = p.fixed->qubits();
    } else {
        bad("circuit.type", "unknown circuit type '" + p.type + "'");
    }
    if (p.qubits < 1 || p.qubits > kMaxQubits) {
        bad("circuit.qubits", "must be between 1 and " + std::to_string(kMaxQubits));
    }
    return p;
}

Circuit build(const CircuitParams &p) {
    if (p.fixed) {
        return *p.fixed;
    }
    if (p.type == "ising") {
        return build_ising_trotter(p.qubits, p.field, p.time, p.steps);
    }
    return build_su2_ansatz(p.qubits, p.layers, p.angles);
}

Observable parse_observable(const json &cfg, const fs::path &base, int qubits) {
    if (!cfg.contains("observable") || (cfg.at("observable").is_string() && cfg.at("observable") == "magnetization")) {
        return Observable::magnetization(qubits);
    }
    const json &o = cfg.at("observable");
    Observable obs = o.contains("file") ? io::observable_from_json(io::read_json(resolve(base, value<std::string>(o, "file", "observable"))))
                                        : io::observable_from_json(o);
    if (obs.qubits() != qubits) {
        bad("observable", "width " + std::to_string(obs.qubits()) + " does not match circuit width " +
                              std::to_string(qubits));
    }
    return obs;
}

NoiseScope parse_scope(const std::string &s, const std::string &where) {
    if (s == "both") {
        return NoiseScope::Both;
    }
    if (s == "one_qubit") {
        return NoiseScope::OneQubit;
    }
    if (s == "two_qubit") {
        return NoiseScope::TwoQubit;
    }
    bad(where, "scope must be one_qubit, two_qubit or both");
}

NoiseModel parse_noise(const json &cfg) {
    if (!cfg.contains("noise") || cfg.at("noise").is_null()) {
        return NoiseModel::noiseless();
    }
    const json &n = cfg.at("noise");
    if (n.contains("kind")) {
        return NoiseModel::from_spec(
            io::noise_spec_from_json(n, parse_scope(value_or<std::string>(n, "scope", "both", "noise"), "noise.scope")));
    }
    NoiseModel m;
    if (n.contains("one_qubit")) {
        m.one_qubit = io::noise_spec_from_json(n.at("one_qubit"), NoiseScope::OneQubit);
    }
    if (n.contains("two_qubit")) {
        m.two_qubit = io::noise_spec_from_json(n.at("two_qubit"), NoiseScope::TwoQubit);
    }
    return m;
}

std::vector<int> parse_folds(const json &cfg) {
    const auto folds = value_or<std::vector<int>>(cfg, "folds", {0, 1, 2, 3}, "");
    if (folds.empty()) {
        bad("folds", "must not be empty");
    }
    return folds;
}

std::vector<FitModel> parse_models(const json &cfg) {
    std::vector<FitModel> out;
    for (const auto &name : value_or<std::vector<std::string>>(cfg, "models", {"pie", "exp", "quadratic"}, "")) {
        out.push_back(model_from_name(name));
    }
    return out;
}

struct Common {
    std::uint64_t seed = 0;
    long shots = 4096;
    bool exact = false;
    FitOptions fit;
};

Common parse_common(const json &cfg, std::optional<std::uint64_t> seed_override) {
    Common c;
    c.seed = seed_override ? *seed_override : value_or<std::uint64_t>(cfg, "seed", 0, "");
    c.exact = value_or<bool>(cfg, "exact", false, "");
    c.shots = value_or<long>(cfg, "shots", 4096, "");
    if (c.shots < (c.exact ? 0 : 1)) {
        bad("shots", "must be at least 1 (or 0 in exact mode)");
    }
    c.fit.weighted = value_or<bool>(cfg, "weighted", true, "");
    return c;
}

struct PlotRow {
    std::string series;
    double x;
    double y;
    double yerr;
};

std::string plot_csv(const std::vector<PlotRow> &rows) {
    std::string s = "series,x,y,yerr\n";
    for (const auto &r : rows) {
        s += r.series + "," + io::format_double(r.x) + "," + io::format_double(r.y) + "," + io::format_double(r.yerr) +
             "\n";
    }
    return s;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

// Runs `n` independent tasks in parallel; each writes only its own slot.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)> &task) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = task(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

json fits_json(const ExtrapolationDataset &d, const std::vector<FitModel> &models, const FitOptions &opt,
               double x, std::vector<PlotRow> &rows) {
    json fits = json::object();
    for (FitModel m : models) {
        const std::string name(model_name(m));
        try {
            const FitResult r = fit(m, d, opt);
            fits[name] = io::fit_to_json(r);
            rows.push_back({name, x, r.mitigated, std::sqrt(r.mitigated_variance)});
        } catch (const Error &e) {
            fits[name] = json{{"error", e.what()}};
        }
    }
    return fits;
}

// ---------------------------------------------------------------- sweeps

struct SweepPoint {
    double x = 0.0;
    CircuitParams circuit;
    NoiseModel noise;
    json label;
};

NoiseSpec strength_spec(const std::string &kind, double v) {
    if (kind == "depolarizing") {
        return {Depolarizing{v}, NoiseScope::Both};
    }
    if (kind == "dephasing") {
        return {Dephasing{v}, NoiseScope::Both};
    }
    if (kind == "bit_flip") {
        return {MixedPauli{v, 0.0, 0.0}, NoiseScope::Both};
    }
    bad("sweep.kind", "strength sweeps support depolarizing, dephasing and bit_flip");
}

std::vector<SweepPoint> parse_sweep(const json &cfg, const fs::path &base, const CircuitParams &circuit,
                                    const NoiseModel &noise, const std::vector<std::string> &allowed) {
    const json &s = need(cfg, "sweep", "");
    const std::string axis = value<std::string>(s, "axis", "sweep");
    if (std::find(allowed.begin(), allowed.end(), axis) == allowed.end()) {
        bad("sweep.axis", "axis '" + axis + "' is not valid for this experiment");
    }
    std::vector<SweepPoint> pts;
    if (axis == "table") {
        const std::string kind = value<std::string>(s, "kind", "sweep");
        const auto scope = parse_scope(value_or<std::string>(s, "scope", "both", "sweep"), "sweep.scope");
        for (const auto &row : io::read_pauli_table(resolve(base, value<std::string>(s, "file", "sweep")))) {
            NoiseSpec spec;
            spec.scope = scope;
            if (kind == "mixed_pauli_table") {
                spec.kind = MixedPauli{row[0], row[1], row[2]};
            } else if (kind == "pauli_lindblad_table") {
                spec.kind = PauliLindblad{row[0], row[1], row[2]};
            } else {
                bad("sweep.kind", "table sweeps support mixed_pauli_table and pauli_lindblad_table");
            }
            validate(spec);
            SweepPoint p{row[3], circuit, NoiseModel::from_spec(spec), io::noise_spec_to_json(spec)};
            pts.push_back(std::move(p));
        }
        return pts;
    }
    const auto values = value<std::vector<double>>(s, "values", "sweep");
    if (values.empty()) {
        bad("sweep.values", "must not be empty");
    }
    for (double v : values) {
        SweepPoint p{v, circuit, noise, json(v)};
        if (axis == "strength") {
            NoiseSpec spec = strength_spec(value<std::string>(s, "kind", "sweep"), v);
            spec.scope = parse_scope(value_or<std::string>(s, "scope", "both", "sweep"), "sweep.scope");
            validate(spec);
            p.noise = NoiseModel::from_spec(spec);
            p.label = io::noise_spec_to_json(spec);
        } else if (axis == "time") {
            p.circuit.time = v;
        } else {
            if (v != std::floor(v) || v < 1) {
                bad("sweep.values", "trotter steps must be positive integers");
            }
            p.circuit.steps = static_cast<int>(v);
        }
        if (axis != "strength" && circuit.type != "ising") {
            bad("sweep.axis", "time and trotter_steps sweeps need an ising circuit");
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

RunOutput run_sweep(const json &cfg, const fs::path &base, const Common &common, const std::vector<std::string> &axes) {
    const CircuitParams circuit = parse_circuit(cfg, base);
    const Observable obs = parse_observable(cfg, base, circuit.qubits);
    const auto points = parse_sweep(cfg, base, circuit, parse_noise(cfg), axes);
    const auto folds = parse_folds(cfg);
    const auto models = parse_models(cfg);

    struct PointResult {
        std::vector<DataPoint> raw;
        double ideal = 0.0;
    };
    const auto results = parallel_map<PointResult>(points.size(), [&](std::size_t i) {
        const Circuit c = build(points[i].circuit);
        CollectOptions opt{folds, common.shots, common.exact, derive_seed(common.seed, i)};
        return PointResult{measure_folds(c, points[i].noise, obs, opt), ideal_expectation(c, obs)};
    });

    RunOutput out;
    std::vector<PlotRow> rows;
    json arr = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &r = results[i];
        const double x = points[i].x;
        const ExtrapolationDataset d = ExtrapolationDataset::from_raw(r.raw, obs.identity_component());
        char name[32];
        std::snprintf(name, sizeof name, "datasets/point_%03zu.csv", i);
        out.files[name] = io::dataset_csv(r.raw);
        rows.push_back({"ideal", x, r.ideal, 0.0});
        rows.push_back({"unmitigated", x, r.raw.front().value, r.raw.front().std});
        json p;
        p["index"] = i;
        p["x"] = x;
        p["setting"] = points[i].label;
        p["ideal"] = r.ideal;
        p["unmitigated"] = json{{"value", r.raw.front().value}, {"std", r.raw.front().std}};
        p["dataset"] = name;
        p["fits"] = fits_json(d, models, common.fit, x, rows);
        arr.push_back(p);
    }
    json res;
    res["experiment"] = cfg.at("experiment");
    res["seed"] = common.seed;
    res["axis"] = cfg.at("sweep").at("axis");
    res["points"] = arr;
    out.files["results.json"] = dump(res);
    out.files["plotdata.csv"] = plot_csv(rows);
    return out;
}

// ---------------------------------------------------------------- chemistry

RunOutput run_chemistry(const json &cfg, const fs::path &base, const Common &common) {
    const CircuitParams circuit = parse_circuit(cfg, base);
    const Observable obs = parse_observable(cfg, base, circuit.qubits);
    const NoiseModel noise = parse_noise(cfg);
    const Circuit c = build(circuit);
    const auto folds = value_or<std::vector<int>>(cfg, "folds", {0, 1, 2}, "");
    CollectOptions opt{folds, common.shots, common.exact, derive_seed(common.seed, 0)};
    const auto raw = measure_folds(c, noise, obs, opt);
    const double ideal = ideal_expectation(c, obs);
    const ExtrapolationDataset d = ExtrapolationDataset::from_raw(raw, obs.identity_component());

    RunOutput out;
    std::vector<PlotRow> rows;
    for (const auto &p : raw) {
        rows.push_back({"measured", static_cast<double>(p.lambda), p.value, p.std});
    }
    rows.push_back({"ideal", 0.0, ideal, 0.0});
    json res;
    res["experiment"] = "chemistry";
    res["seed"] = common.seed;
    if (cfg.contains("reference_energy")) {
        res["reference_energy"] = value<double>(cfg, "reference_energy", "");
    }
    res["trace_shift"] = d.trace_shift;
    res["observable_sign"] = d.observable_sign;
    res["ideal"] = ideal;
    res["unmitigated"] = json{{"value", raw.front().value}, {"std", raw.front().std}};
    res["fits"] = fits_json(d, parse_models(cfg), common.fit, 0.0, rows);
    out.files["datasets/chemistry.csv"] = io::dataset_csv(raw);
    out.files["results.json"] = dump(res);
    out.files["plotdata.csv"] = plot_csv(rows);
    return out;
}

// ---------------------------------------------------------------- certify

RunOutput run_certify(const json &cfg, const fs::path &base, const Common &common) {
    const CircuitParams circuit = parse_circuit(cfg, base);
    const Observable obs = parse_observable(cfg, base, circuit.qubits);
    const auto points = parse_sweep(cfg, base, circuit, parse_noise(cfg), {"strength", "table"});
    const bool direct = value_or<bool>(cfg, "direct", true, "");
    const auto folds = parse_folds(cfg);
    const Circuit c = build(circuit);

    const auto reports = parallel_map<CertReport>(points.size(), [&](std::size_t i) {
        CertOptions opt;
        opt.collect = {folds, common.shots, common.exact, derive_seed(common.seed, i)};
        opt.fit = common.fit;
        opt.direct = direct;
        return certify(c, points[i].noise, obs, opt);
    });
    RunOutput out;
    std::vector<PlotRow> rows;
    json arr = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        json p = io::cert_to_json(reports[i]);
        p["x"] = points[i].x;
        p["setting"] = points[i].label;
        arr.push_back(p);
        rows.push_back({"s_from_slope", points[i].x, reports[i].s_from_slope, 0.0});
        if (reports[i].s_direct) {
            rows.push_back({"s_direct", points[i].x, *reports[i].s_direct, 0.0});
        }
    }
    json res;
    res["experiment"] = "certify";
    res["seed"] = common.seed;
    res["reports"] = arr;
    out.files["results.json"] = dump(res);
    out.files["plotdata.csv"] = plot_csv(rows);
    return out;
}

// ---------------------------------------------------------------- inverse EMRE

RunOutput run_inverse_emre(const json &cfg, const fs::path &base, const Common &common) {
    const CircuitParams circuit = parse_circuit(cfg, base);
    const Observable obs = parse_observable(cfg, base, circuit.qubits);
    const NoiseModel noise = parse_noise(cfg);
    const Circuit c = build(circuit);
    const int samples = value_or<int>(cfg, "samples", 1200, "");
    const bool ptm_exact = value_or<bool>(cfg, "ptm_exact", true, "");
    QpdBuildOptions qopt;
    qopt.exact = ptm_exact;
    qopt.shots = value_or<long>(cfg, "ptm_shots", 4096, "");
    qopt.seed = derive_seed(common.seed, 1u << 20);
    qopt.max_residual = ptm_exact ? 1e-6 : std::numeric_limits<double>::infinity();
    const QpdTable table = build_qpd_table(c, noise, qopt);

    RunOutput out;
    std::vector<PlotRow> rows;
    const double ideal = ideal_expectation(c, obs);
    const NoisyCircuit nc = apply_noise_model(c, noise);
    const DensityState st = evolve(nc, DensityState::zero(c.qubits()));
    const ShotResult noisy = common.exact ? ShotResult{expectation(st, obs), 0.0, 1}
                                          : sample_expectation(st, obs, common.shots, derive_seed(common.seed, 1u << 21));
    rows.push_back({"ideal", 0.0, ideal, 0.0});
    rows.push_back({"unmitigated", 0.0, noisy.mean, noisy.std_error});

    json qpds = json::object();
    for (const auto &[k, q] : table.entries()) {
        qpds[k] = io::qpd_to_json(q);
    }
    json modes = json::object();
    const auto names = value_or<std::vector<std::string>>(cfg, "modes", {"pec", "emre", "hemre"}, "");
    for (std::size_t m = 0; m < names.size(); ++m) {
        EstimatorOptions eopt;
        eopt.mode = estimator_from_name(names[m]);
        eopt.samples = samples;
        eopt.shots = common.shots;
        eopt.exact = common.exact;
        eopt.seed = derive_seed(common.seed, m);
        const SamplingEstimate e = run_estimator(c, noise, obs, table, eopt);
        modes[names[m]] = json{{"mean", e.mean},
                               {"std_error", e.std_error},
                               {"raw_mean", e.raw_mean},
                               {"robustness_product", e.robustness_product},
                               {"samples", samples}};
        rows.push_back({names[m], 0.0, e.mean, e.std_error});
        std::string csv = "k,value\n";
        for (std::size_t k = 0; k < e.per_sample_values.size(); ++k) {
            csv += std::to_string(k) + "," + io::format_double(e.robustness_product * e.per_sample_values[k] +
                                                               obs.identity_component()) + "\n";
        }
        out.files["estimates/" + names[m] + ".csv"] = csv;
    }
    json res;
    res["experiment"] = "inverse_emre";
    res["seed"] = common.seed;
    res["ideal"] = ideal;
    res["unmitigated"] = json{{"value", noisy.mean}, {"std", noisy.std_error}};
    res["qpds"] = qpds;
    res["estimators"] = modes;
    out.files["results.json"] = dump(res);
    out.files["plotdata.csv"] = plot_csv(rows);
    return out;
}

// ---------------------------------------------------------------- CDR

RunOutput run_cdr(const json &cfg, const fs::path &base, const Common &common) {
    const CircuitParams circuit = parse_circuit(cfg, base);
    const Observable obs = parse_observable(cfg, base, circuit.qubits);
    const NoiseModel noise = parse_noise(cfg);
    const Circuit c = build(circuit);
    const auto fractions = value_or<std::vector<double>>(cfg, "fractions", {0.25, 0.5, 0.75, 1.0}, "");
    const int trials = value_or<int>(cfg, "trials", 10, "");
    const int training = value_or<int>(cfg, "training_circuits", 20, "");
    if (trials < 1) {
        bad("trials", "must be at least 1");
    }
    const auto folds = parse_folds(cfg);

    const double ideal = ideal_expectation(c, obs);
    const auto raw = measure_folds(c, noise, obs, {folds, common.shots, common.exact, derive_seed(common.seed, 0)});
    const ExtrapolationDataset d = ExtrapolationDataset::from_raw(raw, obs.identity_component());

    RunOutput out;
    std::vector<PlotRow> rows;
    rows.push_back({"ideal", 0.0, ideal, 0.0});
    rows.push_back({"unmitigated", 0.0, raw.front().value, raw.front().std});
    json res;
    res["experiment"] = "cdr_compare";
    res["seed"] = common.seed;
    res["ideal"] = ideal;
    res["unmitigated"] = json{{"value", raw.front().value}, {"std", raw.front().std}};
    res["fits"] = fits_json(d, parse_models(cfg), common.fit, 0.0, rows);

    json cdr = json::array();
    for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
        const auto runs = parallel_map<CdrResult>(static_cast<std::size_t>(trials), [&](std::size_t t) {
            CdrOptions o;
            o.training_count = training;
            o.non_clifford_fraction = fractions[fi];
            o.shots = common.shots;
            o.exact = common.exact;
            o.seed = derive_seed(derive_seed(common.seed, 100 + fi), t);
            return cdr_mitigate(c, noise, obs, o);
        });
        double mean = 0.0;
        for (const auto &r : runs) {
            mean += r.mitigated;
        }
        mean /= trials;
        double ss = 0.0;
        json vals = json::array();
        for (const auto &r : runs) {
            ss += (r.mitigated - mean) * (r.mitigated - mean);
            vals.push_back(r.mitigated);
        }
        const double sd = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
        cdr.push_back(json{{"fraction", fractions[fi]}, {"mean", mean}, {"std", sd}, {"trials", vals}});
        rows.push_back({"cdr", fractions[fi], mean, sd});
    }
    res["cdr"] = cdr;
    out.files["datasets/target.csv"] = io::dataset_csv(raw);
    out.files["results.json"] = dump(res);
    out.files["plotdata.csv"] = plot_csv(rows);
    return out;
}

}  // namespace

RunOutput run_config(const json &config, const fs::path &base_dir, std::optional<std::uint64_t> seed_override) {
    const std::string exp = value<std::string>(config, "experiment", "");
    const Common common = parse_common(config, seed_override);
    if (exp == "ising_sweep") {
        return run_sweep(config, base_dir, common, {"strength", "table", "time", "trotter_steps"});
    }
    if (exp == "noise_sweep") {
        return run_sweep(config, base_dir, common, {"strength", "table"});
    }
    if (exp == "depth_sweep") {
        return run_sweep(config, base_dir, common, {"trotter_steps"});
    }
    if (exp == "chemistry") {
        return run_chemistry(config, base_dir, common);
    }
    if (exp == "certify") {
        return run_certify(config, base_dir, common);
    }
    if (exp == "inverse_emre") {
        return run_inverse_emre(config, base_dir, common);
    }
    if (exp == "cdr_compare") {
        return run_cdr(config, base_dir, common);
    }
    bad("experiment", "unknown experiment '" + exp + "'");
}

RunOutput run_config_file(const std::string &path, std::optional<std::uint64_t> seed_override) {
    return run_config(io::read_json(path), fs::path(path).parent_path(), seed_override);
}

fs::path default_output_dir(const json &config, const fs::path &base_dir) {
    return resolve(base_dir, value_or<std::string>(config, "output", "out", ""));
}

void write_output(const RunOutput &out, const fs::path &dir) {
    for (const auto &[rel, text] : out.files) {
        const fs::path p = dir / rel;
        fs::create_directories(p.parent_path());
        io::write_text(p.string(), text);
    }
}

FitFileResult fit_file(const std::string &path, FitModel model, double trace_shift, bool weighted) {
    const ExtrapolationDataset d = ExtrapolationDataset::from_raw(io::read_dataset_csv(path), trace_shift);
    FitOptions opt;
    opt.weighted = weighted;
    const FitResult r = fit(model, d, opt);
    return {io::fit_to_json(r), r.clamped};
}

}  // namespace pielab::app
