// Copyright 2026 The symapprox Authors
// SPDX-License-Identifier: Apache-2.0

#include "symapprox/experiment.hpp"

#include "symapprox/detail/numeric.hpp"
#include "symapprox/errors.hpp"
#include "symapprox/model_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace symapprox {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double get_real(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + key + "' must be finite");
    return x;
}

std::uint64_t get_unsigned(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError("'" + key + "' must be a non-negative integer");
}

std::string get_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
    return v.get<std::string>();
}

std::string fmt(double v) { return detail::decimal17(v); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Evaluator as_evaluator(const Approximator& a) {
    return [&a](const Configuration& x) { return a(x); };
}

} // namespace

DomainSpec ExperimentConfig::domain() const { return DomainSpec{d, num_points, lo, hi}; }

BuildParams ExperimentConfig::build_params() const {
    BuildParams p;
    p.smooth_width = smooth_width;
    p.node = node;
    p.tau = tau;
    p.seed = seed;
    p.cap = cap;
    p.threads = threads;
    return p;
}

std::filesystem::path ExperimentConfig::model_file() const {
    return model_path ? *model_path : output_dir / "model.symapprox";
}

ExperimentConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(root,
                   {"kind", "d", "N", "lo", "hi", "delta", "epsilon", "deltas", "smooth_width", "node", "tau",
                    "target", "seed", "samples", "threads", "cap", "fd_step", "n_perms", "min_gap", "output"},
                   "config");
    ExperimentConfig c;
    if (root.contains("kind")) c.kind = parse_approx_kind(get_string(root["kind"], "kind"));
    if (!root.contains("d") || !root.contains("N")) throw ConfigError("config requires 'd' and 'N'");
    c.d = get_unsigned(root["d"], "d");
    c.num_points = get_unsigned(root["N"], "N");
    if (root.contains("lo")) c.lo = get_real(root["lo"], "lo");
    if (root.contains("hi")) c.hi = get_real(root["hi"], "hi");
    if (root.contains("delta")) c.delta = get_real(root["delta"], "delta");
    if (root.contains("epsilon")) c.epsilon = get_real(root["epsilon"], "epsilon");
    if (root.contains("deltas")) {
        if (!root["deltas"].is_array()) throw ConfigError("'deltas' must be an array");
        for (const auto& v : root["deltas"]) c.deltas.push_back(get_real(v, "deltas"));
    }
    if (root.contains("smooth_width")) c.smooth_width = get_real(root["smooth_width"], "smooth_width");
    if (root.contains("node")) {
        const std::string node = get_string(root["node"], "node");
        if (node == "corner") c.node = NodePlacement::corner;
        else if (node == "center") c.node = NodePlacement::center;
        else throw ConfigError("'node' must be corner or center");
    }
    if (root.contains("tau")) c.tau = get_real(root["tau"], "tau");
    if (!root.contains("target")) throw ConfigError("config requires 'target'");
    {
        const json& t = root["target"];
        if (t.is_string()) {
            c.target = t.get<std::string>();
        } else if (t.is_object()) {
            reject_unknown(t, {"name", "params"}, "target");
            if (!t.contains("name")) throw ConfigError("target requires 'name'");
            c.target = get_string(t["name"], "target.name");
            if (t.contains("params")) {
                if (!t["params"].is_object()) throw ConfigError("'target.params' must be an object");
                for (const auto& [k, v] : t["params"].items()) c.target_params[k] = get_real(v, "target.params." + k);
            }
        } else {
            throw ConfigError("'target' must be a name or an object");
        }
    }
    if (root.contains("seed")) c.seed = get_unsigned(root["seed"], "seed");
    if (root.contains("samples")) c.samples = get_unsigned(root["samples"], "samples");
    if (root.contains("threads")) c.threads = static_cast<unsigned>(get_unsigned(root["threads"], "threads"));
    if (root.contains("cap")) c.cap = get_unsigned(root["cap"], "cap");
    if (root.contains("fd_step")) c.fd_step = get_real(root["fd_step"], "fd_step");
    if (root.contains("n_perms")) c.n_perms = get_unsigned(root["n_perms"], "n_perms");
    if (root.contains("min_gap")) c.min_gap = get_real(root["min_gap"], "min_gap");
    if (root.contains("output")) {
        const json& o = root["output"];
        if (!o.is_object()) throw ConfigError("'output' must be an object");
        reject_unknown(o, {"dir", "model"}, "output");
        if (o.contains("dir")) c.output_dir = get_string(o["dir"], "output.dir");
        if (o.contains("model")) c.model_path = std::filesystem::path(get_string(o["model"], "output.model"));
    }

    if (c.delta && c.epsilon) throw ConfigError("set exactly one of 'delta' and 'epsilon', not both");
    if (!c.delta && !c.epsilon && c.deltas.empty()) {
        throw ConfigError("set exactly one of 'delta' and 'epsilon'");
    }
    if (c.d == 0 || c.num_points == 0) throw ConfigError("'d' and 'N' must be at least 1");
    if (!(c.lo < c.hi)) throw ConfigError("'lo' must be below 'hi'");
    if (c.delta && !(*c.delta > 0.0)) throw ConfigError("'delta' must be positive");
    if (c.samples == 0) throw ConfigError("'samples' must be at least 1");
    if (c.n_perms == 0) throw ConfigError("'n_perms' must be at least 1");
    if (c.threads == 0) c.threads = 1;
    builtin_target(c.target, c.target_params);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

void apply_overrides(ExperimentConfig& config, const Overrides& o) {
    if (o.seed) config.seed = *o.seed;
    if (o.out) {
        config.output_dir = *o.out;
        if (config.model_path && config.model_path->is_relative()) config.model_path = *o.out / *config.model_path;
    }
    if (o.threads) config.threads = std::max(1u, *o.threads);
    if (o.cap) config.cap = *o.cap;
    if (o.no_timing) config.timing = false;
}

ResolvedDelta resolve_delta(const ExperimentConfig& config, const TargetFunction& f) {
    if (config.delta) return ResolvedDelta{*config.delta, std::nullopt};
    if (!config.epsilon) throw ConfigError("config gives neither 'delta' nor 'epsilon'");
    const double eps = *config.epsilon;
    if (!satisfies_accuracy_hypothesis(eps, config.num_points, config.d)) {
        const double nd = static_cast<double>(config.num_points * config.d);
        const double limit =
            std::sqrt(nd) * std::pow(static_cast<double>(config.num_points), -1.0 / static_cast<double>(config.d));
        throw ConfigError("epsilon = " + fmt(eps) + " violates the accuracy hypothesis 0 < epsilon < sqrt(Nd) N^(-1/d) = " +
                          fmt(limit));
    }
    const DomainSpec domain = config.domain();
    const SampleSet samples = sample_configurations(domain, config.samples, config.seed);
    const double h = config.fd_step.value_or(default_fd_step(domain));
    const double lhat = gradient_bound_estimate(f.evaluator(), samples, h, config.threads);
    const double delta = std::min(delta_for_epsilon(eps, config.num_points, config.d, lhat), config.hi - config.lo);
    return ResolvedDelta{delta, lhat};
}

Configuration parse_configuration_literal(std::string_view text, std::size_t num_points, std::size_t d) {
    std::vector<double> coords;
    std::size_t points = 0;
    std::string group;
    std::istringstream groups{std::string(text)};
    while (std::getline(groups, group, ';')) {
        if (group.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream values(group);
        std::string token;
        std::size_t count = 0;
        while (std::getline(values, token, ',')) {
            const auto first = token.find_first_not_of(" \t\r\n");
            const auto last = token.find_last_not_of(" \t\r\n");
            const std::string trimmed = first == std::string::npos ? "" : token.substr(first, last - first + 1);
            const auto v = detail::parse_double(trimmed);
            if (!v) throw ArgumentError("bad coordinate '" + trimmed + "' in configuration");
            coords.push_back(*v);
            ++count;
        }
        if (count != d) {
            throw ArgumentError("point " + std::to_string(points) + " has " + std::to_string(count) +
                                " coordinates, model expects d = " + std::to_string(d));
        }
        ++points;
    }
    if (points != num_points) {
        throw ArgumentError("configuration has " + std::to_string(points) + " points, model expects N = " +
                            std::to_string(num_points));
    }
    return Configuration(num_points, d, std::move(coords));
}

int cmd_build(const ExperimentConfig& config, std::ostream& out) {
    const TargetFunction f = builtin_target(config.target, config.target_params);
    const ResolvedDelta resolved = resolve_delta(config, f);
    const LatticeSpec spec = LatticeSpec::for_domain(config.domain(), resolved.delta);
    const auto start = std::chrono::steady_clock::now();
    const Approximator model = build_approximator(config.kind, f, spec, config.num_points, config.build_params());
    const double seconds = config.timing ? seconds_since(start) : 0.0;
    const std::filesystem::path path = config.model_file();
    save_model(path, model);
    const double nd = static_cast<double>(config.num_points * config.d);
    const double eps = config.epsilon.value_or(resolved.delta * std::sqrt(nd));
    out << "kind=" << to_string(model.kind()) << '\n';
    out << "delta=" << fmt(resolved.delta) << '\n';
    if (resolved.gradient_bound) out << "gradient_bound=" << fmt(*resolved.gradient_bound) << '\n';
    out << "cells_per_dim=" << spec.cells_per_dim() << '\n';
    out << "wedge_count=" << model.wedge_count() << '\n';
    if (const auto* a = model.antisym()) out << "entries=" << a->entry_count() << '\n';
    out << "M=" << model.feature_count() << '\n';
    out << "theoretical_bound=" << fmt(theoretical_feature_bound(eps, config.num_points, config.d)) << '\n';
    out << "build_seconds=" << fmt(seconds) << '\n';
    out << "model=" << path.string() << '\n';
    return kExitOk;
}

int cmd_eval(const std::filesystem::path& model_path, std::string_view input, std::ostream& out) {
    const Approximator model = load_model(model_path);
    std::string text(input);
    std::error_code ec;
    if (!text.empty() && text.find(';') == std::string::npos && std::filesystem::is_regular_file(text, ec)) {
        std::ifstream in(text, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
        for (char& ch : text) {
            if (ch == '\n') ch = ';';
        }
    }
    const LatticeSpec& spec = model.spec();
    const Configuration x = parse_configuration_literal(text, model.num_points(), spec.dim());
    if (!x.in_domain(DomainSpec{spec.dim(), model.num_points(), spec.lo(), spec.hi()})) {
        throw DomainError("configuration lies outside [" + fmt(spec.lo()) + ", " + fmt(spec.hi()) + "]^d");
    }
    out << fmt(model(x)) << '\n';
    return kExitOk;
}

int cmd_verify(const ExperimentConfig& config, std::ostream& out, const VerifyHooks& hooks) {
    const auto start = std::chrono::steady_clock::now();
    const TargetFunction f = builtin_target(config.target, config.target_params);
    const DomainSpec domain = config.domain();
    const ResolvedDelta resolved = resolve_delta(config, f);
    const LatticeSpec spec = LatticeSpec::for_domain(domain, resolved.delta);
    const Approximator model = build_approximator(config.kind, f, spec, config.num_points, config.build_params());
    Evaluator approx = as_evaluator(model);
    if (hooks.wrap_approx) approx = hooks.wrap_approx(approx);

    const SampleSet samples = sample_configurations(domain, config.samples, config.seed);
    const double h = config.fd_step.value_or(default_fd_step(domain));
    VerificationReport report;
    report.gradient_bound = resolved.gradient_bound ? *resolved.gradient_bound
                                                    : gradient_bound_estimate(f.evaluator(), samples, h, config.threads);
    const SupError sup = sup_error(f.evaluator(), approx, samples, config.threads);
    report.sup_error = sup.value;
    report.argmax_configuration = sup.argmax;
    report.bound = error_budget(resolved.delta, config.num_points, config.d, report.gradient_bound).bound;
    report.bound_satisfied = within_bound(report.sup_error, report.bound);
    report.checks.push_back({"error_bound", report.bound_satisfied, report.sup_error, report.bound + 1e-12});

    const bool antisym = config.kind != ApproxKind::sym;
    const InvarianceMode mode = antisym ? InvarianceMode::antisym : InvarianceMode::sym;
    report.invariance_max_residual = invariance_suite(approx, samples, config.n_perms, mode, config.seed, config.threads);
    const double invariance_tol = config.smooth_width ? 1e-12 : 0.0;
    report.checks.push_back({"invariance", report.invariance_max_residual <= invariance_tol,
                             report.invariance_max_residual, invariance_tol});
    if (antisym && config.d == 1 && config.num_points >= 2) {
        report.cauchy_residual = cauchy_factor_check(f.evaluator(), samples, config.min_gap, config.n_perms, config.seed);
        report.checks.push_back({"cauchy_factor", *report.cauchy_residual <= 1e-9, *report.cauchy_residual, 1e-9});
    }
    report.wall_time = config.timing ? seconds_since(start) : 0.0;

    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(config.kind));
    j["target"] = config.target;
    j["d"] = config.d;
    j["N"] = config.num_points;
    j["lo"] = config.lo;
    j["hi"] = config.hi;
    j["delta"] = resolved.delta;
    j["delta_hex"] = detail::hex_double(resolved.delta);
    j["epsilon"] = config.epsilon ? nlohmann::ordered_json(*config.epsilon) : nlohmann::ordered_json(nullptr);
    j["seed"] = config.seed;
    j["samples"] = config.samples;
    j["n_perms"] = config.n_perms;
    j["wedge_count"] = model.wedge_count();
    j["M"] = model.feature_count();
    j["gradient_bound"] = report.gradient_bound;
    j["gradient_bound_hex"] = detail::hex_double(report.gradient_bound);
    j["sup_error"] = report.sup_error;
    j["sup_error_hex"] = detail::hex_double(report.sup_error);
    nlohmann::ordered_json argmax = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.argmax_configuration.size(); ++i) {
        const auto p = report.argmax_configuration.point(i);
        argmax.push_back(std::vector<double>(p.begin(), p.end()));
    }
    j["argmax_configuration"] = argmax;
    j["bound"] = report.bound;
    j["bound_hex"] = detail::hex_double(report.bound);
    j["bound_satisfied"] = report.bound_satisfied;
    j["invariance_max_residual"] = report.invariance_max_residual;
    j["invariance_max_residual_hex"] = detail::hex_double(report.invariance_max_residual);
    if (report.cauchy_residual) {
        j["cauchy_residual"] = *report.cauchy_residual;
        j["cauchy_residual_hex"] = detail::hex_double(*report.cauchy_residual);
    } else {
        j["cauchy_residual"] = nullptr;
    }
    j["slope"] = nullptr;
    j["wall_time"] = report.wall_time;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}});
    }
    j["checks"] = checks;
    j["passed"] = report.passed();
    j["note"] = "sup error is a maximum over random samples, a lower estimate of the true supremum";

    std::ostringstream csv;
    csv << "name,value,threshold,passed\n";
    for (const auto& c : report.checks) {
        csv << c.name << ',' << fmt(c.value) << ',' << fmt(c.threshold) << ',' << (c.passed ? "true" : "false") << '\n';
    }
    csv << "gradient_bound," << fmt(report.gradient_bound) << ",,\n";
    csv << "sup_error," << fmt(report.sup_error) << ",,\n";
    csv << "bound," << fmt(report.bound) << ",,\n";
    csv << "wedge_count," << model.wedge_count() << ",,\n";
    csv << "M," << model.feature_count() << ",,\n";
    csv << "wall_time_s," << fmt(report.wall_time) << ",,\n";

    std::filesystem::create_directories(config.output_dir);
    write_file_atomic(config.output_dir / "report.json", j.dump(2) + "\n");
    write_file_atomic(config.output_dir / "report.csv", csv.str());

    std::vector<std::string> failed;
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << fmt(c.value) << " threshold=" << fmt(c.threshold)
            << '\n';
        if (!c.passed) failed.push_back(c.name);
    }
    if (failed.empty()) {
        out << "verification passed\n";
        return kExitOk;
    }
    out << "verification failed:";
    for (const auto& name : failed) out << ' ' << name;
    out << '\n';
    return kExitVerificationFailed;
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& out) {
    if (config.deltas.size() < 3) throw ConfigError("sweep requires 'deltas' with at least three values");
    const TargetFunction f = builtin_target(config.target, config.target_params);
    const DomainSpec domain = config.domain();
    const SampleSet samples = sample_configurations(domain, config.samples, config.seed);
    const double h = config.fd_step.value_or(default_fd_step(domain));
    const double lhat = gradient_bound_estimate(f.evaluator(), samples, h, config.threads);
    SweepResult result;
    try {
        result = convergence_sweep(f, config.kind, domain, config.build_params(), config.deltas, samples, lhat);
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    std::ostringstream csv;
    csv << "delta,sup_error,bound,wedge_count,M,wall_time_s\n";
    for (const auto& r : result.rows) {
        csv << fmt(r.delta) << ',' << fmt(r.sup_error) << ',' << fmt(r.bound) << ',' << r.wedge_count << ',' << r.m << ','
            << fmt(config.timing ? r.wall_seconds : 0.0) << '\n';
    }
    csv << "# slope=" << (result.slope ? fmt(*result.slope) : std::string("absent")) << '\n';
    write_file_atomic(config.output_dir / "sweep.csv", csv.str());
    out << csv.str();
    return kExitOk;
}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ArgumentError*>(&e) ||
        dynamic_cast<const DomainError*>(&e)) {
        return kExitUsage;
    }
    if (dynamic_cast<const CapacityError*>(&e) || dynamic_cast<const BuildError*>(&e) ||
        dynamic_cast<const SizeLimitError*>(&e)) {
        return kExitCapacity;
    }
    return kExitVerificationFailed;
}

} // namespace symapprox
