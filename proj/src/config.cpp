#include "swts/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "swts/errors.hpp"
#include "swts/trajectory_io.hpp"

namespace swts {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double get_real(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) throw ConfigError(where + "." + key + " must be a number");
    return it->get<double>();
}

double get_real_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? get_real(obj, key, where) : fallback;
}

std::size_t get_count(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) {
        throw ConfigError(where + "." + key + " must be a non-negative integer");
    }
    return it->get<std::size_t>();
}

std::vector<std::size_t> get_count_list(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) throw ConfigError(where + "." + key + " must be an array of integers");
    std::vector<std::size_t> out;
    for (const auto& v : *it) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw ConfigError(where + "." + key + " must contain non-negative integers");
        }
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

RewardFamily parse_family(const json& j, const std::string& where) {
    try {
        return parse_family_json(j.dump());
    } catch (const ParameterError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

PolicyConfig parse_policy(const json& j, const std::string& where, bool needs_tau) {
    reject_unknown(j, where, {"policy", "tau", "gamma", "arm"});
    if (!j.contains("policy") || !j["policy"].is_string()) throw ConfigError(where + ".policy must be a string");
    const auto name = j["policy"].get<std::string>();
    const auto kind = parse_policy_kind(name);
    if (!kind) throw ConfigError(where + ".policy: unknown policy '" + name + "'");
    PolicyConfig p;
    p.kind = *kind;
    const bool windowed = p.kind == PolicyKind::beta_swts || p.kind == PolicyKind::gamma_swgts;
    const bool gaussian = p.kind == PolicyKind::gamma_swgts || p.kind == PolicyKind::stationary_gts;
    if (j.contains("tau")) {
        if (!windowed) throw ConfigError(where + ".tau is only valid for beta_swts and gamma_swgts");
        p.tau = get_count(j, "tau", where);
        if (p.tau < 1) throw ConfigError(where + ".tau must be at least 1");
    } else if (windowed && needs_tau) {
        throw ConfigError(where + ".tau is required for " + name);
    }
    if (j.contains("gamma")) {
        if (!gaussian) throw ConfigError(where + ".gamma is only valid for gamma_swgts and stationary_gts");
        p.gamma = get_real(j, "gamma", where);
        if (!(*p.gamma > 0.0)) throw ConfigError(where + ".gamma must be positive");
    }
    if (j.contains("arm")) {
        if (p.kind != PolicyKind::fixed) throw ConfigError(where + ".arm is only valid for the fixed policy");
        const std::size_t arm = get_count(j, "arm", where);
        if (arm < 1) throw ConfigError(where + ".arm is 1-based");
        p.arm = arm - 1;
    } else if (p.kind == PolicyKind::fixed) {
        throw ConfigError(where + ".arm is required for the fixed policy");
    }
    return p;
}

EnvironmentSpec parse_environment(const json& j, const std::filesystem::path& base_dir) {
    const std::string where = "environment";
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ConfigError("environment.kind must be a string");
    }
    EnvironmentSpec env;
    const auto kind = j["kind"].get<std::string>();
    if (j.contains("family")) env.family = parse_family(j["family"], where + ".family");

    if (kind == "piecewise_constant") {
        reject_unknown(j, where, {"kind", "family", "arms", "boundaries", "means"});
        env.kind = EnvironmentSpec::Kind::piecewise_constant;
        env.arms = get_count(j, "arms", where);
        env.boundaries = j.contains("boundaries") ? get_count_list(j, "boundaries", where) : std::vector<std::size_t>{};
        if (!j.contains("means") || !j["means"].is_array()) throw ConfigError("environment.means must be an array");
        for (const auto& row : j["means"]) {
            if (!row.is_array()) throw ConfigError("environment.means must be an array of arrays");
            std::vector<double> v;
            for (const auto& x : row) {
                if (!x.is_number()) throw ConfigError("environment.means entries must be numbers");
                v.push_back(x.get<double>());
            }
            env.phase_means.push_back(std::move(v));
        }
    } else if (kind == "crossing_sinusoid") {
        reject_unknown(j, where, {"kind", "family", "amplitude", "period", "center", "shift"});
        env.kind = EnvironmentSpec::Kind::crossing_sinusoid;
        env.sinusoid.amplitude = get_real_or(j, "amplitude", env.sinusoid.amplitude, where);
        env.sinusoid.period = get_real_or(j, "period", env.sinusoid.period, where);
        env.sinusoid.center = get_real_or(j, "center", env.sinusoid.center, where);
        env.sinusoid.shift = get_real_or(j, "shift", env.sinusoid.shift, where);
    } else if (kind == "lipschitz_smooth") {
        reject_unknown(j, where, {"kind", "family", "arms", "shape", "sigma", "delta_prime", "center", "period",
                                  "lower", "upper", "seed"});
        env.kind = EnvironmentSpec::Kind::lipschitz_smooth;
        SmoothParams& s = env.smooth;
        s.arms = j.contains("arms") ? get_count(j, "arms", where) : 2;
        env.arms = s.arms;
        const std::string shape = j.value("shape", "oscillating");
        if (shape == "diverging_ramps") {
            s.shape = SmoothShape::diverging_ramps;
        } else if (shape == "oscillating") {
            s.shape = SmoothShape::oscillating;
        } else if (shape == "random_walk") {
            s.shape = SmoothShape::random_walk;
        } else {
            throw ConfigError("environment.shape must be diverging_ramps, oscillating or random_walk");
        }
        s.sigma = get_real(j, "sigma", where);
        s.delta_prime = get_real(j, "delta_prime", where);
        s.center = get_real_or(j, "center", s.center, where);
        s.period = get_real_or(j, "period", s.period, where);
        s.lower = get_real_or(j, "lower", s.lower, where);
        s.upper = get_real_or(j, "upper", s.upper, where);
        s.seed = j.contains("seed") ? get_count(j, "seed", where) : 0;
    } else if (kind == "custom_file") {
        reject_unknown(j, where, {"kind", "path"});
        env.kind = EnvironmentSpec::Kind::custom_file;
        if (!j.contains("path") || !j["path"].is_string()) throw ConfigError("environment.path must be a string");
        std::filesystem::path p = j["path"].get<std::string>();
        env.path = p.is_absolute() ? p : base_dir / p;
    } else {
        throw ConfigError("environment.kind: unknown kind '" + kind + "'");
    }
    return env;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, "config", {"environment", "horizon", "policies", "sweep", "replications", "seed", "timestamp",
                                 "plot", "output_dir"});
    ExperimentConfig cfg;
    if (!j.contains("environment")) throw ConfigError("config.environment is required");
    cfg.environment = parse_environment(j["environment"], base_dir);
    if (j.contains("horizon")) {
        cfg.horizon = get_count(j, "horizon", "config");
        if (*cfg.horizon < 1) throw ConfigError("config.horizon must be at least 1");
    }
    if (cfg.environment.kind != EnvironmentSpec::Kind::custom_file && !cfg.horizon) {
        throw ConfigError("config.horizon is required for generated environments");
    }
    if (j.contains("policies")) {
        if (!j["policies"].is_array()) throw ConfigError("config.policies must be an array");
        std::size_t k = 0;
        for (const auto& p : j["policies"]) {
            cfg.policies.push_back(parse_policy(p, "policies[" + std::to_string(k++) + "]", true));
        }
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown(s, "sweep", {"policy", "gamma", "taus"});
        json policy_part = json::object();
        policy_part["policy"] = s.value("policy", "");
        if (s.contains("gamma")) policy_part["gamma"] = s["gamma"];
        SweepSpec spec;
        spec.policy = parse_policy(policy_part, "sweep", false);
        if (spec.policy.kind != PolicyKind::beta_swts && spec.policy.kind != PolicyKind::gamma_swgts) {
            throw ConfigError("sweep.policy must be beta_swts or gamma_swgts");
        }
        spec.taus = get_count_list(s, "taus", "sweep");
        if (spec.taus.empty()) throw ConfigError("sweep.taus must not be empty");
        for (std::size_t tau : spec.taus) {
            if (tau < 1) throw ConfigError("sweep.taus entries must be at least 1");
        }
        cfg.sweep = std::move(spec);
    }
    if (j.contains("replications")) {
        cfg.replications = get_count(j, "replications", "config");
        if (cfg.replications < 1) throw ConfigError("config.replications must be at least 1");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("config.seed must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("timestamp")) {
        if (!j["timestamp"].is_string()) throw ConfigError("config.timestamp must be a string");
        cfg.timestamp = j["timestamp"].get<std::string>();
    }
    if (j.contains("plot")) {
        reject_unknown(j["plot"], "plot", {"log_x", "log_y"});
        cfg.plot.log_x = j["plot"].value("log_x", false);
        cfg.plot.log_y = j["plot"].value("log_y", false);
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) throw ConfigError("config.output_dir must be a string");
        std::filesystem::path p = j["output_dir"].get<std::string>();
        cfg.output_dir = p.is_absolute() ? p : base_dir / p;
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str(), path.parent_path());
}

void apply_seed_override(ExperimentConfig& config, const char* env_value) {
    if (env_value == nullptr || *env_value == '\0') return;
    const std::string s(env_value);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("BANDIT_SEED must be a non-negative integer, got '" + s + "'");
    }
    config.seed = v;
}

RewardTrajectory build_environment(const ExperimentConfig& config) {
    const EnvironmentSpec& env = config.environment;
    try {
        switch (env.kind) {
            case EnvironmentSpec::Kind::piecewise_constant:
                return make_piecewise_constant(env.arms, *config.horizon, env.boundaries, env.phase_means,
                                               env.family);
            case EnvironmentSpec::Kind::crossing_sinusoid:
                return make_crossing_sinusoid(*config.horizon, env.sinusoid, env.family);
            case EnvironmentSpec::Kind::lipschitz_smooth: {
                SmoothParams p = env.smooth;
                p.horizon = *config.horizon;
                return make_lipschitz_smooth(p, env.family).trajectory;
            }
            case EnvironmentSpec::Kind::custom_file: {
                if (!std::filesystem::exists(env.path)) {
                    throw ConfigError("trajectory file not found: " + env.path.string());
                }
                RewardTrajectory traj = load_trajectory(env.path);
                if (config.horizon && *config.horizon != traj.horizon()) {
                    throw ConfigError("config.horizon " + std::to_string(*config.horizon) + " differs from the " +
                                      std::to_string(traj.horizon()) + " rounds in " + env.path.string());
                }
                return traj;
            }
        }
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("environment: ") + e.what());
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown environment kind");
}

std::vector<std::string> validate_experiment(const ExperimentConfig& config, const RewardTrajectory& traj) {
    std::vector<std::string> warnings;
    for (const PolicyConfig& p : config.policies) {
        validate_policy(p, traj);
        for (auto& w : policy_warnings(p, traj.family())) warnings.push_back(std::move(w));
    }
    if (config.sweep) {
        for (std::size_t tau : config.sweep->taus) {
            PolicyConfig p = config.sweep->policy;
            p.tau = tau;
            validate_policy(p, traj);
        }
        for (auto& w : policy_warnings(config.sweep->policy, traj.family())) warnings.push_back(std::move(w));
    }
    return warnings;
}

}  // namespace swts
