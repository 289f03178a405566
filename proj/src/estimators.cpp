#include "jamsim/estimators.hpp"

#include "jamsim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace jamsim {

namespace {

[[noreturn]] void range_error(const std::string& what) {
    throw ConfigError(ConfigErrorKind::range_violation, what);
}

void check_counts(std::span<const double> o, std::span<const double> c, std::span<const double> f) {
    if (o.size() != c.size() || o.size() != f.size()) {
        range_error("per-channel counter vectors must have equal length");
    }
}

}  // namespace

std::vector<ChannelIndex> rank_channels(std::span<const double> p_hat) {
    std::vector<ChannelIndex> order(p_hat.size());
    std::iota(order.begin(), order.end(), ChannelIndex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](ChannelIndex a, ChannelIndex b) { return p_hat[a] < p_hat[b]; });
    return order;
}

bool is_epsilon_correct(std::span<const ChannelIndex> ranking, std::span<const double> p, double eps) {
    for (std::size_t a = 0; a < ranking.size(); ++a) {
        for (std::size_t b = a + 1; b < ranking.size(); ++b) {
            if (p[ranking[a]] - p[ranking[b]] > eps) return false;
        }
    }
    return true;
}

double collision_prob(JamMode mode, int n, int j, int k) {
    if (k < 1 || n < 1 || j < 0) {
        range_error(fmt::format("collision_prob needs k >= 1, n >= 1, j >= 0 (got k={} n={} j={})", k, n, j));
    }
    const double stay = 1.0 - 1.0 / k;
    if (mode == JamMode::coordinated) {
        if (j > k) range_error(fmt::format("coordinated jammers need j <= k (got j={} k={})", j, k));
        return 1.0 - (1.0 - static_cast<double>(j) / k) * std::pow(stay, n - 1);
    }
    return 1.0 - std::pow(stay, n + j - 1);
}

std::optional<double> clamped_fraction(double num, double den) {
    if (!(den > 0.0)) return std::nullopt;
    return std::min(num / den, 1.0 - 1.0 / (2.0 * den));
}

int round_clamped(double x, int lo, int hi) {
    if (std::isnan(x)) return lo;
    if (x <= lo) return lo;
    if (x >= hi) return hi;
    return std::clamp(static_cast<int>(std::lround(x)), lo, hi);
}

int invert_n_given_j(double p_c_hat, int j, int k) {
    if (!(p_c_hat >= 0.0 && p_c_hat < 1.0)) range_error(fmt::format("p_c estimate {} outside [0, 1)", p_c_hat));
    if (k < 1 || j < 0 || j >= k) range_error(fmt::format("invert_n_given_j needs 0 <= j < k (got j={} k={})", j, k));
    if (k == 1) return 1;
    const double n = 1.0 + (std::log1p(-p_c_hat) - std::log1p(-static_cast<double>(j) / k)) / std::log1p(-1.0 / k);
    return round_clamped(n, 1, k);
}

int invert_n_plus_j(double p_c_hat, int k) {
    if (!(p_c_hat >= 0.0 && p_c_hat < 1.0)) range_error(fmt::format("p_c estimate {} outside [0, 1)", p_c_hat));
    if (k < 1) range_error("invert_n_plus_j needs k >= 1");
    if (k == 1) return 1;
    return round_clamped(1.0 + std::log1p(-p_c_hat) / std::log1p(-1.0 / k), 1, k);
}

std::optional<int> j_from_fraction(double c_j, double f, int k) {
    if (k < 1) range_error("j_from_fraction needs k >= 1");
    if (!(f >= 1.0)) return std::nullopt;
    return round_clamped(k * c_j / f, 0, k - 1);
}

std::optional<int> j_sequential(std::span<const double> o, std::span<const double> c,
                                std::span<const double> f, double t_j, int k) {
    check_counts(o, c, f);
    if (!(t_j > 0.0)) return std::nullopt;
    double sum = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < o.size(); ++i) {
        if (f[i] > 0.0) {
            any = true;
            sum += k * (o[i] / t_j) * (c[i] / f[i]);
        }
    }
    if (!any) return std::nullopt;
    return round_clamped(sum, 0, k - 1);
}

std::optional<int> j_from_window(std::span<const double> o, std::span<const double> c,
                                 std::span<const double> f, double t_j, int total_hat, int k) {
    check_counts(o, c, f);
    if (!(t_j > 0.0)) return std::nullopt;
    double pbar = 0.0;
    double f_total = 0.0;
    for (std::size_t i = 0; i < o.size(); ++i) {
        if (f[i] > 0.0) {
            pbar += (o[i] / t_j) * (c[i] / f[i]);
            f_total += f[i];
        }
    }
    if (!(f_total > 0.0)) return std::nullopt;
    if (total_hat < 2) return 0;
    pbar = std::min(pbar, 1.0 - 1.0 / (2.0 * f_total));
    return round_clamped(std::log1p(-pbar) / std::log1p(-1.0 / total_hat), 0, k - 1);
}

std::optional<int> jammer_invert_n(double c, double b, int j, double t_c, int k) {
    if (k < 1) range_error("jammer_invert_n needs k >= 1");
    const double free_attacks = j * t_c - b;
    const auto ratio = clamped_fraction(c, free_attacks);
    if (!ratio || free_attacks < 1.0) return std::nullopt;
    if (k == 1) return 1;
    return round_clamped(std::log1p(-std::max(0.0, *ratio)) / std::log1p(-1.0 / k), 1, k);
}

double window_objective(JamMode mode, int n, int j, std::span<const double> p_sorted, int w) {
    const int k = static_cast<int>(p_sorted.size());
    if (n < 1 || j < 0 || j > n || w < 0 || n + w > k) {
        range_error(fmt::format("window objective needs 1 <= n, 0 <= j <= n, n + w <= K (n={} j={} w={} K={})",
                                n, j, w, k));
    }
    auto avail = [&](int lo, int hi) {
        double s = 0.0;
        for (int i = lo; i < hi; ++i) s += 1.0 - p_sorted[static_cast<std::size_t>(i)];
        return s;
    };
    const double width = n + w;
    if (mode == JamMode::coordinated) {
        return (avail(0, n) * (1.0 - static_cast<double>(j) / n) + avail(n, n + w)) / width;
    }
    const double a = j == 0 ? 1.0 : std::pow(1.0 - 1.0 / (n + j - 1), j);
    if (w <= j - 1) return avail(0, n + w) * a / width;
    return (avail(0, n + j - 1) * a + avail(n + j - 1, n + w)) / width;
}

WindowChoice optimize_window(JamMode mode, int n, int j, std::span<const double> p_sorted) {
    const int k = static_cast<int>(p_sorted.size());
    WindowChoice best{0, window_objective(mode, n, j, p_sorted, 0)};
    for (int w = 1; w <= k - n; ++w) {
        const double v = window_objective(mode, n, j, p_sorted, w);
        if (v > best.objective) best = {w, v};
    }
    return best;
}

void validate(const LearningParams& params) {
    if (!(params.delta > 0.0 && params.delta <= 1.0)) range_error(fmt::format("delta {} outside (0, 1]", params.delta));
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) range_error(fmt::format("epsilon {} outside (0, 1)", params.epsilon));
    if (!(params.gamma > 0.0 && params.gamma < 0.5)) range_error(fmt::format("gamma {} outside (0, 0.5)", params.gamma));
}

double epsilon1(Algorithm a, const LearningParams& params, int k) {
    if (a == Algorithm::cuj) return params.gamma / (std::numbers::e * k);
    return params.gamma / (2.0 * std::numbers::e * k);
}

double epsilon2(Algorithm a, const LearningParams& params, int k) {
    if (a == Algorithm::cuj) return params.gamma / (std::numbers::e * k);
    return params.gamma / k;
}

std::string_view to_string(ScheduleSource s) noexcept {
    return s == ScheduleSource::theorem ? "theorem" : "explicit";
}

PhaseSchedule phase_lengths(Algorithm a, int k, double theta, const LearningParams& params) {
    validate(params);
    if (k < 2) range_error(fmt::format("phase lengths need K >= 2 (got {})", k));
    if (!(theta > 0.0 && theta <= 1.0)) range_error(fmt::format("theta {} outside (0, 1]", theta));
    if (a != Algorithm::cdj && a != Algorithm::cnj && a != Algorithm::cuj) {
        range_error(fmt::format("no theorem schedule for algorithm '{}'", to_string(a)));
    }
    const double kk = k;
    const double d = params.delta;
    const double eps = params.epsilon;
    const double e1 = epsilon1(a, params, k);
    const double e2 = epsilon2(a, params, k);
    auto slots = [](double x) { return static_cast<std::int64_t>(std::llround(x)); };

    PhaseSchedule s;
    s.source = ScheduleSource::theorem;
    if (a == Algorithm::cdj) {
        s.t_c = slots(std::max({8.0 / theta * std::log(18.0 * kk / d),
                                1.0 / (e1 * e1 * theta) * std::log(12.0 * kk / d),
                                1.0 / (e2 * e2 * theta) * std::log(24.0 * kk / d),
                                8.0 * kk * std::log(4.0 * kk * kk / d),
                                4.0 * kk / (eps * eps) * std::log(8.0 * kk * kk / d)}));
        return s;
    }
    s.t_c = slots(std::max({8.0 / theta * std::log(12.0 * kk / d),
                            1.0 / (e1 * e1 * theta) * std::log(24.0 * kk / d),
                            8.0 * kk * std::log(12.0 * kk * kk / d),
                            4.0 * kk / (eps * eps) * std::log(24.0 * kk * kk / d)}));
    const double settle = (theta / kk) * std::pow(1.0 - 1.0 / kk, kk - 1.0);
    s.t_o = slots(std::log(d / (3.0 * kk)) / std::log1p(-settle));
    s.t_j = slots(std::max(8.0 / theta * std::log(6.0 * kk / d),
                           1.0 / (e2 * e2 * theta) * std::log(12.0 * kk / d)));
    return s;
}

}  // namespace jamsim
