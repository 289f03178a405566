#include "jamsim/config.hpp"
#include "jamsim/errors.hpp"
#include "jamsim/estimators.hpp"
#include "jamsim/selfcheck.hpp"
#include "jamsim/sim_runner.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace jamsim;

namespace {

JamMode mode_of(const std::string& name) { return parse_jam_mode(name); }

py::dict schedule_dict(const PhaseSchedule& s) {
    py::dict d;
    d["t_c"] = s.t_c;
    d["t_o"] = s.t_o;
    d["t_j"] = s.t_j;
    d["source"] = std::string(to_string(s.source));
    return d;
}

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["config"] = s.config;
    d["algorithm"] = std::string(to_string(s.algorithm));
    d["k"] = s.k;
    d["n"] = s.n;
    d["j"] = s.j;
    d["runs"] = s.runs;
    d["final_regret"] = s.final_regret;
    d["stderr_final_regret"] = s.stderr_final_regret;
    d["correct_estimate_fraction"] = s.correct_estimate_fraction;
    d["mean_settle_slot"] = s.mean_settle_slot;
    d["su_collisions_after_settle"] = s.su_collisions_after_settle;
    d["ranking_correct_fraction"] = s.ranking_correct_fraction;
    d["degraded_runs"] = s.degraded_runs;
    return d;
}

py::dict trajectory_dict(const Trajectory& t) {
    py::dict d;
    d["seed"] = t.seed;
    d["successes"] = t.successes;
    d["su_collisions"] = t.su_collisions;
    d["jammer_collisions"] = t.jammer_collisions;
    d["busy"] = t.busy;
    py::list agents;
    for (const auto& a : t.agents) {
        py::dict ad;
        ad["n_hat"] = a.n_hat;
        ad["j_hat"] = a.j_hat;
        ad["total_hat"] = a.total_hat;
        ad["n_star"] = a.n_star;
        ad["degraded"] = a.degraded;
        ad["settle_slot"] = a.settle_slot;
        ad["ranking_correct"] = a.ranking_correct;
        agents.append(ad);
    }
    d["agents"] = agents;
    d["estimates_correct"] = t.estimates_correct;
    d["all_settled"] = t.all_settled;
    d["last_settle"] = t.last_settle;
    d["su_collisions_after_settle"] = t.su_collisions_after_settle;
    return d;
}

}  // namespace

PYBIND11_MODULE(_jamsim, m) {
    m.doc() = "Channel access under jamming: estimators and simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("collision_prob", [](const std::string& mode, int n, int j, int k) { return collision_prob(mode_of(mode), n, j, k); },
          py::arg("mode"), py::arg("n"), py::arg("j"), py::arg("k"));
    m.def("invert_n_given_j", &invert_n_given_j, py::arg("p_c"), py::arg("j"), py::arg("k"));
    m.def("invert_n_plus_j", &invert_n_plus_j, py::arg("p_c"), py::arg("k"));
    m.def("j_from_fraction", &j_from_fraction, py::arg("c_j"), py::arg("f"), py::arg("k"));
    m.def("jammer_invert_n", &jammer_invert_n, py::arg("c"), py::arg("b"), py::arg("j"), py::arg("t_c"), py::arg("k"));
    m.def("rank_channels", [](const std::vector<double>& p) { return rank_channels(p); }, py::arg("p_hat"));
    m.def(
        "optimize_window",
        [](const std::string& mode, int n, int j, const std::vector<double>& p_sorted) {
            const auto w = optimize_window(mode_of(mode), n, j, p_sorted);
            return py::make_tuple(w.m, w.objective);
        },
        py::arg("mode"), py::arg("n"), py::arg("j"), py::arg("p_sorted"));
    m.def(
        "phase_lengths",
        [](const std::string& algorithm, int k, double theta, double delta, double epsilon, double gamma) {
            return schedule_dict(phase_lengths(parse_algorithm(algorithm), k, theta, {delta, epsilon, gamma}));
        },
        py::arg("algorithm"), py::arg("k"), py::arg("theta"), py::arg("delta") = 0.3, py::arg("epsilon") = 0.05,
        py::arg("gamma") = 0.4);
    m.def(
        "oracle_throughput",
        [](const std::vector<double>& p, int n, int j, const std::string& mode) {
            return oracle_throughput(ChannelModel(p), n, j, mode_of(mode));
        },
        py::arg("p"), py::arg("n"), py::arg("j"), py::arg("mode") = "coordinated");
    m.def("generator_probabilities", &generator_probabilities, py::arg("k"));

    m.def("normalize_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
          py::arg("json_text"), "Parse, validate and re-serialize a config (adds the resolved schedule).");
    m.def(
        "run_episode",
        [](const std::string& text, std::uint64_t seed) {
            const auto c = parse_config(text);
            py::gil_scoped_release release;
            auto tr = run_episode(c, seed);
            py::gil_scoped_acquire acquire;
            return trajectory_dict(tr);
        },
        py::arg("json_text"), py::arg("seed"));
    m.def(
        "run_experiment",
        [](const std::string& text, int parallel, const std::string& out_dir) {
            const auto c = parse_config(text);
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(c, {parallel, false});
                if (!out_dir.empty()) emit_results({r}, out_dir);
            }
            py::dict d;
            d["summary"] = summary_dict(r.summary);
            d["schedule"] = schedule_dict(r.schedule);
            d["mean_regret"] = r.curve.mean_regret;
            d["stderr_regret"] = r.curve.stderr_regret;
            d["mean_throughput"] = r.curve.mean_throughput;
            return d;
        },
        py::arg("json_text"), py::arg("parallel") = 1, py::arg("out_dir") = "");
    m.def(
        "selfcheck",
        [](std::int64_t slots, std::uint64_t seed) {
            py::list out;
            for (const auto& r : run_selfcheck(slots, seed)) out.append(py::make_tuple(r.name, r.passed, r.detail));
            return out;
        },
        py::arg("slots") = 100000, py::arg("seed") = 2024);
}
