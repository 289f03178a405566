#include "jamsim/sim_runner.hpp"

#include "jamsim/errors.hpp"
#include "jamsim/jammer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

namespace jamsim {

__extension__ using wide_int = __int128;

JamMode effective_jam_mode(const ExperimentConfig& config) { return config.jammers; }

double oracle_throughput(const ChannelModel& model, int n, int j, JamMode mode) {
    return n * optimize_window(mode, n, j, model.sorted_busy()).objective;
}

double oracle_throughput(const ExperimentConfig& config) {
    return oracle_throughput(ChannelModel(config.p), config.n, config.j, effective_jam_mode(config));
}

Trajectory run_episode(const ExperimentConfig& config, std::uint64_t seed) {
    validate(config);
    const auto schedule = resolve_schedule(config);
    const ChannelModel model(config.p);
    const JamMode mode = effective_jam_mode(config);
    const bool distinguishable = config.algorithm == Algorithm::cdj;
    const bool oracle = config.algorithm == Algorithm::oracle;
    const auto n_agents = static_cast<std::size_t>(config.n);

    std::vector<SuAgentState> agents;
    std::vector<Rng> su_rng;
    for (std::size_t i = 0; i < n_agents; ++i) {
        agents.push_back(oracle ? make_oracle_agent(model, config.n, config.j, mode, static_cast<int>(i))
                                : make_su_agent(config.algorithm, config.k, schedule));
        su_rng.push_back(make_stream(seed, "su", i));
    }
    std::vector<JammerState> jammers;
    std::vector<Rng> jam_rng;
    if (config.j > 0) {
        const std::size_t states = mode == JamMode::coordinated ? 1 : static_cast<std::size_t>(config.j);
        for (std::size_t i = 0; i < states; ++i) {
            jammers.push_back(oracle ? make_informed_jammer(mode, model, config.n, config.j)
                                     : make_jammer(mode, config.k, config.j, schedule.t_c));
            jam_rng.push_back(make_stream(seed, "jammer", i));
        }
    }
    Rng env = make_stream(seed, "env");

    Trajectory tr;
    tr.seed = seed;
    tr.config_digest = config_digest(config);
    const auto horizon = static_cast<std::size_t>(config.horizon);
    tr.successes.assign(horizon, 0);
    tr.su_collisions.assign(horizon, 0);
    tr.jammer_collisions.assign(horizon, 0);
    tr.busy.assign(horizon, 0);

    BusyMask mask;
    std::vector<ChannelIndex> su_sel(n_agents);
    std::vector<ChannelIndex> jam_sel;
    std::vector<JammerFeedback> feedback;
    SlotOutcome out;
    for (std::size_t t = 0; t < horizon; ++t) {
        draw_occupancy(model, env, mask);
        for (std::size_t i = 0; i < n_agents; ++i) su_sel[i] = su_select(agents[i], su_rng[i]);
        jam_sel.clear();
        for (std::size_t i = 0; i < jammers.size(); ++i) {
            const auto picks = jammer_select(jammers[i], jam_rng[i]);
            jam_sel.insert(jam_sel.end(), picks.begin(), picks.end());
        }
        resolve_slot(mask, su_sel, jam_sel, distinguishable, out);
        for (std::size_t i = 0; i < n_agents; ++i) {
            const auto& o = out.su[i];
            if (o.busy) {
                ++tr.busy[t];
            } else if (o.success) {
                ++tr.successes[t];
            } else if (out.jammer_load[o.channel] > 0) {
                ++tr.jammer_collisions[t];
            } else {
                ++tr.su_collisions[t];
            }
            su_observe(agents[i], o);
        }
        for (auto& js : jammers) {
            feedback.clear();
            for (ChannelIndex c : js.pending) {
                const int others = out.su_load[c] + (mode == JamMode::uncoordinated ? out.jammer_load[c] - 1 : 0);
                feedback.push_back({c, mask[c] != 0, others > 0});
            }
            jammer_observe(js, feedback);
        }
    }

    bool correct = true;
    bool ranked = true;
    bool settled = true;
    std::int64_t last = 0;
    for (const auto& a : agents) {
        AgentSummary s;
        s.n_hat = a.n_hat;
        s.j_hat = a.j_hat;
        s.total_hat = a.total_hat;
        s.n_star = a.n_star;
        s.degraded = a.degraded;
        s.settle_slot = a.settle_slot;
        s.ranking_correct = !a.pi.empty() && is_epsilon_correct(a.pi, config.p, config.schedule.params.epsilon);
        const auto w = std::min(a.pi.size(), static_cast<std::size_t>(std::max(a.width, 0)));
        s.window.assign(a.pi.begin(), a.pi.begin() + static_cast<std::ptrdiff_t>(w));

        switch (config.algorithm) {
        case Algorithm::myopic:
        case Algorithm::mc: correct = correct && a.total_hat == config.n + config.j; break;
        case Algorithm::oracle: break;
        default: correct = correct && !a.degraded && a.n_hat == config.n && a.j_hat == config.j; break;
        }
        ranked = ranked && s.ranking_correct;
        settled = settled && a.settle_slot >= 0;
        last = std::max(last, a.settle_slot);
        tr.agents.push_back(std::move(s));
    }
    tr.estimates_correct = correct;
    tr.ranking_correct = ranked;
    tr.all_settled = settled;
    tr.shared_window = std::all_of(tr.agents.begin(), tr.agents.end(),
                                   [&](const AgentSummary& s) { return s.window == tr.agents.front().window; });
    tr.last_settle = settled ? last : config.horizon;
    for (auto t = tr.last_settle + 1; t < config.horizon; ++t) {
        tr.su_collisions_after_settle += tr.su_collisions[static_cast<std::size_t>(t)];
    }
    return tr;
}

RegretAccumulator::RegretAccumulator(std::string digest, std::int64_t horizon, double oracle_rate)
    : digest_(std::move(digest)), rate_(oracle_rate),
      sum_(static_cast<std::size_t>(horizon), 0), sum_sq_(static_cast<std::size_t>(horizon), 0) {}

void RegretAccumulator::add(const Trajectory& trajectory) {
    if (trajectory.config_digest != digest_) {
        throw ConfigError(ConfigErrorKind::range_violation, "regret curve over trajectories of different configs");
    }
    if (trajectory.successes.size() != sum_.size()) {
        throw ConfigError(ConfigErrorKind::range_violation, "trajectory length does not match the horizon");
    }
    std::int64_t cum = 0;
    for (std::size_t t = 0; t < sum_.size(); ++t) {
        cum += trajectory.successes[t];
        sum_[t] += cum;
        sum_sq_[t] += cum * cum;
    }
    ++runs_;
}

void RegretAccumulator::merge(const RegretAccumulator& other) {
    if (other.digest_ != digest_ || other.sum_.size() != sum_.size()) {
        throw ConfigError(ConfigErrorKind::range_violation, "cannot merge accumulators of different configs");
    }
    for (std::size_t t = 0; t < sum_.size(); ++t) {
        sum_[t] += other.sum_[t];
        sum_sq_[t] += other.sum_sq_[t];
    }
    runs_ += other.runs_;
}

RegretCurve RegretAccumulator::curve() const {
    RegretCurve c;
    const auto size = sum_.size();
    c.mean_regret.resize(size);
    c.stderr_regret.resize(size);
    c.mean_throughput.resize(size);
    if (runs_ == 0) return c;
    const auto r = static_cast<double>(runs_);
    for (std::size_t t = 0; t < size; ++t) {
        const double mean = static_cast<double>(sum_[t]) / r;
        c.mean_throughput[t] = mean;
        c.mean_regret[t] = static_cast<double>(t + 1) * rate_ - mean;
        if (runs_ > 1) {
            const wide_int num = static_cast<wide_int>(runs_) * sum_sq_[t] -
                                 static_cast<wide_int>(sum_[t]) * sum_[t];
            const double var = static_cast<double>(num) / (r * (r - 1.0));
            c.stderr_regret[t] = std::sqrt(std::max(0.0, var) / r);
        }
    }
    return c;
}

RegretCurve regret_curve(const std::vector<Trajectory>& trajectories, double oracle_rate) {
    if (trajectories.empty()) throw ConfigError(ConfigErrorKind::range_violation, "regret curve needs at least one run");
    RegretAccumulator acc(trajectories.front().config_digest,
                          static_cast<std::int64_t>(trajectories.front().successes.size()), oracle_rate);
    for (const auto& tr : trajectories) acc.add(tr);
    return acc.curve();
}

std::uint64_t run_seed(std::uint64_t master, std::int64_t run_index) {
    return derive_seed(master, "run", static_cast<std::uint64_t>(run_index));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    ExperimentResult result;
    result.config = config;
    result.schedule = resolve_schedule(config);
    const double rate = oracle_throughput(config);
    RegretAccumulator acc(config_digest(config), config.horizon, rate);

    RunSummary& s = result.summary;
    s.config = config.name;
    s.algorithm = config.algorithm;
    s.k = config.k;
    s.n = config.n;
    s.j = config.j;
    s.runs = config.runs;

    int correct = 0;
    int ranked = 0;
    int settled_runs = 0;
    double settle_sum = 0.0;
    auto fold = [&](Trajectory& tr) {
        acc.add(tr);
        correct += tr.estimates_correct ? 1 : 0;
        ranked += tr.ranking_correct ? 1 : 0;
        if (tr.all_settled) {
            ++settled_runs;
            settle_sum += static_cast<double>(tr.last_settle);
        }
        s.su_collisions_after_settle += tr.su_collisions_after_settle;
        if (std::any_of(tr.agents.begin(), tr.agents.end(), [](const AgentSummary& a) { return a.degraded; })) {
            ++s.degraded_runs;
        }
        if (options.keep_trajectories) result.trajectories.push_back(std::move(tr));
    };

    const int parallel = std::max(1, options.parallel);
    for (int start = 0; start < config.runs; start += parallel) {
        const int count = std::min(parallel, config.runs - start);
        std::vector<Trajectory> batch(static_cast<std::size_t>(count));
        if (count == 1) {
            batch[0] = run_episode(config, run_seed(config.seed, start));
        } else {
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
            std::vector<std::thread> workers;
            for (int i = 0; i < count; ++i) {
                workers.emplace_back([&, i] {
                    try {
                        batch[static_cast<std::size_t>(i)] = run_episode(config, run_seed(config.seed, start + i));
                    } catch (...) {
                        errors[static_cast<std::size_t>(i)] = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) w.join();
            for (const auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }
        for (auto& tr : batch) fold(tr);
    }

    result.curve = acc.curve();
    const double runs = config.runs;
    s.final_regret = result.curve.mean_regret.back();
    s.stderr_final_regret = result.curve.stderr_regret.back();
    s.correct_estimate_fraction = correct / runs;
    s.ranking_correct_fraction = ranked / runs;
    s.mean_settle_slot = settled_runs > 0 ? settle_sum / settled_runs : std::nan("");
    return result;
}

std::string regret_csv(const RegretCurve& curve) {
    std::string out = "slot,mean_regret,stderr_regret,mean_throughput\n";
    for (std::size_t t = 0; t < curve.mean_regret.size(); ++t) {
        out += fmt::format("{},{:.6f},{:.6f},{:.6f}\n", t + 1, curve.mean_regret[t], curve.stderr_regret[t],
                           curve.mean_throughput[t]);
    }
    return out;
}

std::string summary_csv(std::vector<RunSummary> summaries) {
    std::stable_sort(summaries.begin(), summaries.end(),
                     [](const RunSummary& a, const RunSummary& b) { return a.config < b.config; });
    std::string out =
        "config,algorithm,k,n,j,runs,final_regret,stderr_final_regret,correct_estimate_fraction,"
        "mean_settle_slot,su_collisions_after_settle,ranking_correct_fraction,degraded_runs\n";
    for (const auto& s : summaries) {
        out += fmt::format("{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.3f},{},{:.6f},{}\n", s.config,
                           to_string(s.algorithm), s.k, s.n, s.j, s.runs, s.final_regret, s.stderr_final_regret,
                           s.correct_estimate_fraction, s.mean_settle_slot, s.su_collisions_after_settle,
                           s.ranking_correct_fraction, s.degraded_runs);
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
    out << text;
    out.flush();
    if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

void make_dirs(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError(fmt::format("cannot create output directory '{}'", dir.string()));
    }
}

}  // namespace

void emit_results(const std::vector<ExperimentResult>& results, const std::filesystem::path& out_dir) {
    if (results.empty()) return;
    make_dirs(out_dir);
    std::vector<RunSummary> summaries;
    for (const auto& r : results) summaries.push_back(r.summary);
    write_file(out_dir / "summary.csv", summary_csv(summaries));
    if (results.size() == 1) {
        write_file(out_dir / "regret.csv", regret_csv(results.front().curve));
        write_file(out_dir / "config.json", serialize_config(results.front().config));
        return;
    }
    for (const auto& r : results) {
        const auto dir = out_dir / r.config.name;
        make_dirs(dir);
        write_file(dir / "regret.csv", regret_csv(r.curve));
        write_file(dir / "config.json", serialize_config(r.config));
    }
}

}  // namespace jamsim
