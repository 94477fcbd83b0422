#ifndef READMIT_CORPUS_HPP
#define READMIT_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace readmit {

enum class Disposition { home, facility, hospice, deceased };

enum class PlannedFlag { organ_transplant, chemotherapy, radiation, other_planned };

struct LaceFeatures {
    int length_of_stay_days = 0;
    bool acute_admission = false;
    int charlson_comorbidity_index = 0;
    int ed_visits_prior_6mo = 0;
};

/// One inpatient visit. Timestamps are UTC epoch seconds.
struct VisitRecord {
    std::string visit_id;
    std::string patient_id;
    std::int64_t admit_time = 0;
    std::int64_t discharge_time = 0;
    Disposition disposition = Disposition::home;
    std::optional<std::int64_t> death_time;
    std::set<PlannedFlag> planned_flags;
    std::string primary_condition;
    std::string note_text;
    LaceFeatures lace;
};

enum class ExclusionReason { hospice, death_within_30d, note_too_short };

struct LabeledVisit {
    VisitRecord visit;
    bool label = false;  // readmitted unplanned within the window; meaningless when excluded
    bool excluded = false;
    std::optional<ExclusionReason> exclusion_reason;
};

enum class Fold { train, validation, test };

struct SplitAssignment {
    std::string visit_id;
    Fold fold;
};

/// Label every visit with 30-day unplanned readmission and apply the cohort
/// exclusions (hospice discharge, death within the window, note under 20
/// whitespace tokens).
///
/// A visit V is labeled positive when some later visit W of the same patient
/// admits within (discharge(V), discharge(V) + window_days*86400], W carries
/// no planned flag, and W is not a same-condition admission within 24 hours
/// of discharge. W's own exclusion status does not matter.
///
/// Results come back in input order. Throws std::invalid_argument on a
/// duplicate visit_id (named in the message) or on overlapping stays within
/// a patient.
std::vector<LabeledVisit> derive_labels(const std::vector<VisitRecord>& visits,
                                        int window_days = 30);

struct SplitFractions {
    double train = 0.80;
    double valid = 0.089;
    double test = 0.111;
};

/// Assign every included visit to exactly one fold. Fold sizes follow the
/// largest-remainder rule, so each lands within 1 of fraction*N. The
/// assignment is deterministic under the seed and invariant to the input
/// order (visits are canonicalized by id before shuffling). Excluded visits
/// get no assignment. Throws std::invalid_argument when no visit is
/// included or the fractions do not sum to 1 within 1e-9.
std::vector<SplitAssignment> split_dataset(const std::vector<LabeledVisit>& labeled,
                                           SplitFractions fractions, std::uint64_t seed);

// --- enum <-> string (used by the record format and reports) ---
std::string to_string(Disposition d);
std::string to_string(PlannedFlag f);
std::string to_string(ExclusionReason r);
std::string to_string(Fold f);
Disposition disposition_from_string(const std::string& s);
PlannedFlag planned_flag_from_string(const std::string& s);
Fold fold_from_string(const std::string& s);

// --- visit record artifact (format "readmit.visits" v1) ---
// One JSON object per line after the header record; see README for the
// field schema. Round-trips losslessly.
void write_visits(const std::filesystem::path& path, const std::vector<VisitRecord>& visits);
std::vector<VisitRecord> read_visits(const std::filesystem::path& path);

// Count of whitespace-delimited tokens; the note-length exclusion rule.
int note_token_count(const std::string& text);

}  // namespace readmit

#endif
