#include "jamsim/config.hpp"

#include "jamsim/channel_env.hpp"
#include "jamsim/errors.hpp"
#include "jamsim/rng.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace jamsim {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(ConfigErrorKind kind, const std::string& what) { throw ConfigError(kind, what); }

const json& require(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(ConfigErrorKind::missing_field, fmt::format("missing field '{}'", key));
    return *it;
}

template <typename T>
T get_as(const json& value, const char* key) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        fail(ConfigErrorKind::malformed, fmt::format("field '{}' has the wrong type", key));
    }
}

std::int64_t get_int(const json& value, const char* key) {
    if (!value.is_number_integer()) fail(ConfigErrorKind::malformed, fmt::format("field '{}' must be an integer", key));
    return value.get<std::int64_t>();
}

int get_small_int(const json& value, const char* key) {
    const auto v = get_int(value, key);
    if (v < -1000000 || v > 1000000) fail(ConfigErrorKind::range_violation, fmt::format("field '{}' out of range", key));
    return static_cast<int>(v);
}

double get_double(const json& value, const char* key) {
    if (!value.is_number()) fail(ConfigErrorKind::malformed, fmt::format("field '{}' must be a number", key));
    return value.get<double>();
}

ScheduleSpec parse_schedule(const json& s) {
    ScheduleSpec spec;
    if (s.is_string()) {
        if (s.get<std::string>() != "theorem") {
            fail(ConfigErrorKind::malformed, "schedule string must be \"theorem\"");
        }
        spec.theorem = true;
        return spec;
    }
    if (!s.is_object()) fail(ConfigErrorKind::malformed, "schedule must be an object or \"theorem\"");
    const std::string mode = s.contains("mode") ? get_as<std::string>(s["mode"], "schedule.mode") : "explicit";
    if (mode == "theorem") {
        spec.theorem = true;
        if (s.contains("delta")) spec.params.delta = get_double(s["delta"], "schedule.delta");
        if (s.contains("epsilon")) spec.params.epsilon = get_double(s["epsilon"], "schedule.epsilon");
        if (s.contains("gamma")) spec.params.gamma = get_double(s["gamma"], "schedule.gamma");
        if (s.contains("theta")) spec.theta = get_double(s["theta"], "schedule.theta");
        return spec;
    }
    if (mode != "explicit") fail(ConfigErrorKind::malformed, fmt::format("unknown schedule mode '{}'", mode));
    spec.t_c = get_int(require(s, "t_c"), "schedule.t_c");
    if (s.contains("t_o")) spec.t_o = get_int(s["t_o"], "schedule.t_o");
    if (s.contains("t_j")) spec.t_j = get_int(s["t_j"], "schedule.t_j");
    if (s.contains("epsilon")) spec.params.epsilon = get_double(s["epsilon"], "schedule.epsilon");
    return spec;
}

json schedule_json(const ScheduleSpec& spec) {
    json s;
    if (spec.theorem) {
        s["mode"] = "theorem";
        s["delta"] = spec.params.delta;
        s["epsilon"] = spec.params.epsilon;
        s["gamma"] = spec.params.gamma;
        if (spec.theta) s["theta"] = *spec.theta;
    } else {
        s["mode"] = "explicit";
        s["t_c"] = spec.t_c;
        s["t_o"] = spec.t_o;
        s["t_j"] = spec.t_j;
        s["epsilon"] = spec.params.epsilon;
    }
    return s;
}

json core_json(const ExperimentConfig& c) {
    json out;
    out["name"] = c.name;
    out["algorithm"] = std::string(to_string(c.algorithm));
    out["k"] = c.k;
    out["n"] = c.n;
    out["j"] = c.j;
    out["p"] = c.p;
    out["horizon"] = c.horizon;
    out["schedule"] = schedule_json(c.schedule);
    out["jammers"] = std::string(to_string(c.jammers));
    out["seed"] = c.seed;
    return out;
}

}  // namespace

std::vector<double> generator_probabilities(int k) {
    if (k < 1) fail(ConfigErrorKind::range_violation, "generator needs K >= 1");
    const int mid = (k + 1) / 2;
    std::vector<double> p;
    for (int i = 1; i <= k; ++i) {
        const double v = std::round((0.5 + 0.06 * (i - mid)) * 1e12) / 1e12;
        if (v < 0.0 || v > 1.0) {
            fail(ConfigErrorKind::range_violation,
                 fmt::format("generator gives p_{} = {} outside [0, 1] for K = {}", i, v, k));
        }
        p.push_back(v);
    }
    return p;
}

void validate(const ExperimentConfig& c) {
    const auto range = [](const std::string& what) { fail(ConfigErrorKind::range_violation, what); };
    if (c.k < 2) range(fmt::format("k must be >= 2 (got {})", c.k));
    if (c.n < 1 || c.n >= c.k) range(fmt::format("constraint n < k violated (n={} k={})", c.n, c.k));
    if (c.j < 0 || c.j >= c.n) range(fmt::format("constraint 0 <= j < n violated (j={} n={})", c.j, c.n));
    if (c.p.size() != static_cast<std::size_t>(c.k)) {
        range(fmt::format("p has {} entries but k = {}", c.p.size(), c.k));
    }
    const ChannelModel model(c.p);
    if (c.horizon < 1) range(fmt::format("horizon must be >= 1 (got {})", c.horizon));
    if (c.runs < 1) range(fmt::format("runs must be >= 1 (got {})", c.runs));
    if (!(c.schedule.params.epsilon > 0.0 && c.schedule.params.epsilon < 1.0)) {
        range(fmt::format("epsilon {} outside (0, 1)", c.schedule.params.epsilon));
    }
    if (c.schedule.theorem) {
        validate(c.schedule.params);
        if (c.schedule.theta) {
            const double t = *c.schedule.theta;
            if (!(t > 0.0 && t <= model.availability_floor() + 1e-12)) {
                range(fmt::format("theta {} must lie in (0, {}]", t, model.availability_floor()));
            }
        }
    } else if (c.schedule.t_c < 0 || c.schedule.t_o < 0 || c.schedule.t_j < 0) {
        range("phase lengths must be nonnegative");
    }
    const auto resolved = resolve_schedule(c);
    if (resolved.learning() > c.horizon) {
        fail(ConfigErrorKind::schedule_overflow,
             fmt::format("schedule t_c + t_o + t_j = {} exceeds horizon {}", resolved.learning(), c.horizon));
    }
}

PhaseSchedule resolve_schedule(const ExperimentConfig& c) {
    PhaseSchedule s;
    if (c.algorithm == Algorithm::oracle) return s;
    if (c.schedule.theorem) {
        const double theta = c.schedule.theta.value_or(availability_floor(c.p));
        const Algorithm basis = is_baseline(c.algorithm) ? Algorithm::cnj : c.algorithm;
        s = phase_lengths(basis, c.k, theta, c.schedule.params);
    } else {
        s.t_c = c.schedule.t_c;
        s.t_o = c.schedule.t_o;
        s.t_j = c.schedule.t_j;
    }
    if (c.algorithm != Algorithm::cnj && c.algorithm != Algorithm::cuj) {
        s.t_o = 0;
        s.t_j = 0;
    }
    return s;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ConfigErrorKind::malformed, fmt::format("config is not valid JSON: {}", e.what()));
    }
    if (!root.is_object()) fail(ConfigErrorKind::malformed, "config must be a JSON object");

    ExperimentConfig c;
    c.algorithm = parse_algorithm(get_as<std::string>(require(root, "algorithm"), "algorithm"));
    c.k = get_small_int(require(root, "k"), "k");
    c.n = get_small_int(require(root, "n"), "n");
    c.j = get_small_int(require(root, "j"), "j");
    if (root.contains("p")) {
        const auto& p = root["p"];
        if (!p.is_array()) fail(ConfigErrorKind::malformed, "field 'p' must be an array");
        for (const auto& v : p) c.p.push_back(get_double(v, "p"));
    } else if (root.contains("p_generator")) {
        const auto gen = get_as<std::string>(root["p_generator"], "p_generator");
        if (gen != "linear") fail(ConfigErrorKind::malformed, fmt::format("unknown p_generator '{}'", gen));
        c.p = generator_probabilities(c.k);
    } else {
        fail(ConfigErrorKind::missing_field, "missing field 'p' (or 'p_generator')");
    }
    c.horizon = get_int(require(root, "horizon"), "horizon");
    c.schedule = parse_schedule(require(root, "schedule"));
    c.jammers = root.contains("jammers") ? parse_jam_mode(get_as<std::string>(root["jammers"], "jammers"))
                                         : default_jam_mode(c.algorithm);
    c.name = root.contains("name") ? get_as<std::string>(root["name"], "name") : std::string(to_string(c.algorithm));
    if (root.contains("runs")) c.runs = get_small_int(root["runs"], "runs");
    if (root.contains("seed")) {
        const auto& s = root["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            fail(ConfigErrorKind::malformed, "field 'seed' must be a nonnegative integer");
        }
        c.seed = s.get<std::uint64_t>();
    }
    if (root.contains("out_dir")) c.out_dir = get_as<std::string>(root["out_dir"], "out_dir");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read config file '{}'", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    json out = core_json(c);
    out["runs"] = c.runs;
    out["out_dir"] = c.out_dir;
    const auto s = resolve_schedule(c);
    out["resolved_schedule"] = {{"t_c", s.t_c}, {"t_o", s.t_o}, {"t_j", s.t_j}, {"source", to_string(s.source)}};
    return out.dump(2) + "\n";
}

std::string config_digest(const ExperimentConfig& c) {
    return fmt::format("{:016x}", splitmix64(fnv1a(core_json(c).dump())));
}

}  // namespace jamsim
