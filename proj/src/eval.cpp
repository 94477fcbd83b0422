#include "readmit/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace readmit {

double c_statistic(std::span<const Scored> s) {
    long n_pos = 0, n_neg = 0;
    for (const auto& e : s) (e.label ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("c_statistic: need at least one positive and one negative");

    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s[a].score < s[b].score; });

    // Sum of average ranks over positives. Average ranks are half-integers,
    // so this sum is exact in double for any realistic n.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && s[order[j]].score == s[order[i]].score) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (s[order[k]].label) rank_sum_pos += avg_rank;
        i = j;
    }

    const double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    const double pairs = static_cast<double>(n_pos) * static_cast<double>(n_neg);
    // Evaluate the smaller side of the division and reflect, so that the
    // negated-scores call (whose U is exactly pairs - u) lands on the
    // mirrored branch and the two results sum to 1.0 exactly.
    if (u <= pairs - u) return u / pairs;
    return 1.0 - (pairs - u) / pairs;
}

Confusion confusion_at(std::span<const Scored> s, double threshold) {
    long n_pos = 0, n_neg = 0;
    for (const auto& e : s) (e.label ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("confusion_at: need at least one positive and one negative");

    Confusion c;
    for (const auto& e : s) {
        const bool pred = e.score >= threshold;
        if (pred && e.label) c.tp++;
        else if (pred && !e.label) c.fp++;
        else if (!pred && !e.label) c.tn++;
        else c.fn++;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.sensitivity = (c.tp + c.fn) ? static_cast<double>(c.tp) / (c.tp + c.fn) : nan;
    c.specificity = (c.tn + c.fp) ? static_cast<double>(c.tn) / (c.tn + c.fp) : nan;
    c.ppv = (c.tp + c.fp) ? static_cast<double>(c.tp) / (c.tp + c.fp) : nan;
    return c;
}

std::vector<CalibrationBin> calibration_bins(std::span<const Scored> s, int bins) {
    if (bins < 1) throw std::invalid_argument("calibration_bins: bins must be >= 1");
    for (const auto& e : s)
        if (!(e.score >= 0.0 && e.score <= 1.0))
            throw std::invalid_argument("calibration_bins: scores must lie in [0,1]");

    std::vector<CalibrationBin> out(static_cast<std::size_t>(bins));
    std::vector<double> score_sum(static_cast<std::size_t>(bins), 0.0);
    std::vector<long> pos(static_cast<std::size_t>(bins), 0);
    for (const auto& e : s) {
        auto b = static_cast<std::size_t>(e.score * bins);
        if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;  // score == 1.0
        out[b].count++;
        score_sum[b] += e.score;
        if (e.label) pos[b]++;
    }
    for (std::size_t b = 0; b < out.size(); ++b) {
        if (out[b].count > 0) {
            out[b].mean_score = score_sum[b] / static_cast<double>(out[b].count);
            out[b].observed_rate = static_cast<double>(pos[b]) / static_cast<double>(out[b].count);
        }
    }
    return out;
}

}  // namespace readmit
