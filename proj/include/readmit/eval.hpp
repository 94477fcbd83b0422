#ifndef READMIT_EVAL_HPP
#define READMIT_EVAL_HPP

#include <span>
#include <vector>

namespace readmit {

struct Scored {
    double score;
    bool label;
};

/// C-statistic (area under the ROC curve): the probability that a uniformly
/// random positive outranks a uniformly random negative, ties counting 1/2.
/// Computed from average ranks in O(n log n). Requires at least one positive
/// and one negative; throws std::invalid_argument otherwise.
///
/// The rank sums are exact half-integers, so negating every score maps the
/// Mann-Whitney numerator U to exactly n_pos*n_neg - U. The final division is
/// arranged so that c(scores) + c(-scores) == 1 holds bitwise.
double c_statistic(std::span<const Scored> s);

struct Confusion {
    long tp = 0, fp = 0, tn = 0, fn = 0;
    double sensitivity = 0.0, specificity = 0.0, ppv = 0.0;  // NaN when undefined
};

// score >= threshold predicts positive.
Confusion confusion_at(std::span<const Scored> s, double threshold);

struct CalibrationBin {
    double mean_score = 0.0;
    double observed_rate = 0.0;
    long count = 0;
};

// Equal-width bins over [0,1]; scores outside [0,1] are rejected. Empty bins
// are reported with count 0.
std::vector<CalibrationBin> calibration_bins(std::span<const Scored> s, int bins);

}  // namespace readmit

#endif
