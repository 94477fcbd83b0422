#include "readmit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "readmit/errors.hpp"
#include "readmit/record_io.hpp"
#include "readmit/rng.hpp"

namespace readmit {

namespace {
constexpr std::int64_t kSecondsPerDay = 86400;
}

int note_token_count(const std::string& text) {
    int count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

std::vector<LabeledVisit> derive_labels(const std::vector<VisitRecord>& visits,
                                        int window_days) {
    if (window_days <= 0) throw std::invalid_argument("derive_labels: window_days must be > 0");

    std::unordered_set<std::string> seen;
    for (const auto& v : visits) {
        if (!seen.insert(v.visit_id).second)
            throw std::invalid_argument("derive_labels: duplicate visit_id '" + v.visit_id + "'");
        if (v.admit_time >= v.discharge_time)
            throw std::invalid_argument("derive_labels: visit '" + v.visit_id +
                                        "' has admit_time >= discharge_time");
    }

    // Group per patient and sort by admission; overlapping stays cannot be
    // ordered and are rejected.
    std::unordered_map<std::string, std::vector<const VisitRecord*>> by_patient;
    for (const auto& v : visits) by_patient[v.patient_id].push_back(&v);
    for (auto& [pid, vs] : by_patient) {
        std::sort(vs.begin(), vs.end(), [](const VisitRecord* a, const VisitRecord* b) {
            return a->admit_time < b->admit_time;
        });
        for (std::size_t i = 1; i < vs.size(); ++i) {
            if (vs[i]->admit_time < vs[i - 1]->discharge_time)
                throw std::invalid_argument("derive_labels: unordered timestamps for patient '" +
                                            pid + "' (visit '" + vs[i]->visit_id +
                                            "' admits before '" + vs[i - 1]->visit_id +
                                            "' discharges)");
        }
    }

    const std::int64_t window = static_cast<std::int64_t>(window_days) * kSecondsPerDay;

    std::unordered_map<std::string, LabeledVisit> results;
    results.reserve(visits.size());
    for (const auto& [pid, vs] : by_patient) {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const VisitRecord& v = *vs[i];
            LabeledVisit out;
            out.visit = v;

            // Exclusions, checked in this order: hospice, death within the
            // window, short note.
            const std::int64_t window_end = v.discharge_time + window;
            if (v.disposition == Disposition::hospice) {
                out.excluded = true;
                out.exclusion_reason = ExclusionReason::hospice;
            } else if ((v.death_time && *v.death_time <= window_end) ||
                       (!v.death_time && v.disposition == Disposition::deceased)) {
                out.excluded = true;
                out.exclusion_reason = ExclusionReason::death_within_30d;
            } else if (note_token_count(v.note_text) < 20) {
                out.excluded = true;
                out.exclusion_reason = ExclusionReason::note_too_short;
            }

            for (std::size_t j = i + 1; j < vs.size(); ++j) {
                const VisitRecord& w = *vs[j];
                if (w.admit_time <= v.discharge_time) continue;
                if (w.admit_time > window_end) break;
                if (!w.planned_flags.empty()) continue;
                const bool within_day = w.admit_time - v.discharge_time <= kSecondsPerDay;
                if (within_day && w.primary_condition == v.primary_condition) continue;
                out.label = true;
                break;
            }
            if (out.excluded) out.label = false;
            results.emplace(v.visit_id, std::move(out));
        }
    }

    std::vector<LabeledVisit> ordered;
    ordered.reserve(visits.size());
    for (const auto& v : visits) ordered.push_back(std::move(results.at(v.visit_id)));
    return ordered;
}

std::vector<SplitAssignment> split_dataset(const std::vector<LabeledVisit>& labeled,
                                           SplitFractions fractions, std::uint64_t seed) {
    const double sum = fractions.train + fractions.valid + fractions.test;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("split_dataset: fractions must sum to 1");
    if (fractions.train < 0 || fractions.valid < 0 || fractions.test < 0)
        throw std::invalid_argument("split_dataset: fractions must be non-negative");

    std::vector<std::string> ids;
    for (const auto& lv : labeled)
        if (!lv.excluded) ids.push_back(lv.visit.visit_id);
    if (ids.empty())
        throw std::invalid_argument("split_dataset: no included visits to assign");

    // Canonical order, then a seeded shuffle: the assignment is a function of
    // the id set and the seed, not of input order.
    std::sort(ids.begin(), ids.end());
    Rng rng(seed);
    rng.shuffle(ids);

    const auto n = static_cast<double>(ids.size());
    const double targets[3] = {fractions.train * n, fractions.valid * n, fractions.test * n};
    std::size_t sizes[3];
    double remainders[3];
    std::size_t assigned = 0;
    for (int f = 0; f < 3; ++f) {
        sizes[f] = static_cast<std::size_t>(std::floor(targets[f]));
        remainders[f] = targets[f] - std::floor(targets[f]);
        assigned += sizes[f];
    }
    // Largest remainder gets the leftover slots; ties break toward the
    // earlier fold.
    while (assigned < ids.size()) {
        int best = 0;
        for (int f = 1; f < 3; ++f)
            if (remainders[f] > remainders[best]) best = f;
        sizes[best]++;
        remainders[best] = -1.0;
        assigned++;
    }

    std::vector<SplitAssignment> out;
    out.reserve(ids.size());
    std::size_t pos = 0;
    const Fold folds[3] = {Fold::train, Fold::validation, Fold::test};
    for (int f = 0; f < 3; ++f)
        for (std::size_t k = 0; k < sizes[f]; ++k) out.push_back({ids[pos++], folds[f]});
    return out;
}

// --- enum names ---

std::string to_string(Disposition d) {
    switch (d) {
        case Disposition::home: return "home";
        case Disposition::facility: return "facility";
        case Disposition::hospice: return "hospice";
        case Disposition::deceased: return "deceased";
    }
    return "home";
}

std::string to_string(PlannedFlag f) {
    switch (f) {
        case PlannedFlag::organ_transplant: return "organ_transplant";
        case PlannedFlag::chemotherapy: return "chemotherapy";
        case PlannedFlag::radiation: return "radiation";
        case PlannedFlag::other_planned: return "other_planned";
    }
    return "other_planned";
}

std::string to_string(ExclusionReason r) {
    switch (r) {
        case ExclusionReason::hospice: return "hospice";
        case ExclusionReason::death_within_30d: return "death_within_30d";
        case ExclusionReason::note_too_short: return "note_too_short";
    }
    return "hospice";
}

std::string to_string(Fold f) {
    switch (f) {
        case Fold::train: return "train";
        case Fold::validation: return "validation";
        case Fold::test: return "test";
    }
    return "train";
}

Disposition disposition_from_string(const std::string& s) {
    if (s == "home") return Disposition::home;
    if (s == "facility") return Disposition::facility;
    if (s == "hospice") return Disposition::hospice;
    if (s == "deceased") return Disposition::deceased;
    throw ArtifactError("unknown disposition '" + s + "'");
}

PlannedFlag planned_flag_from_string(const std::string& s) {
    if (s == "organ_transplant") return PlannedFlag::organ_transplant;
    if (s == "chemotherapy") return PlannedFlag::chemotherapy;
    if (s == "radiation") return PlannedFlag::radiation;
    if (s == "other_planned") return PlannedFlag::other_planned;
    throw ArtifactError("unknown planned flag '" + s + "'");
}

Fold fold_from_string(const std::string& s) {
    if (s == "train") return Fold::train;
    if (s == "validation") return Fold::validation;
    if (s == "test") return Fold::test;
    throw ArtifactError("unknown fold '" + s + "'");
}

// --- visits artifact ---

namespace {

const char* kVisitsFormat = "readmit.visits";
constexpr int kVisitsVersion = 1;

nlohmann::json visit_to_json(const VisitRecord& v) {
    nlohmann::json j = {
        {"visit_id", v.visit_id},
        {"patient_id", v.patient_id},
        {"admit_time", v.admit_time},
        {"discharge_time", v.discharge_time},
        {"disposition", to_string(v.disposition)},
        {"primary_condition", v.primary_condition},
        {"note_text", v.note_text},
        {"lace",
         {{"length_of_stay_days", v.lace.length_of_stay_days},
          {"acute_admission", v.lace.acute_admission},
          {"charlson_comorbidity_index", v.lace.charlson_comorbidity_index},
          {"ed_visits_prior_6mo", v.lace.ed_visits_prior_6mo}}},
    };
    if (v.death_time) j["death_time"] = *v.death_time;
    nlohmann::json flags = nlohmann::json::array();
    for (const auto& f : v.planned_flags) flags.push_back(to_string(f));
    j["planned_flags"] = flags;
    return j;
}

VisitRecord visit_from_json(const nlohmann::json& j) {
    VisitRecord v;
    v.visit_id = j.at("visit_id").get<std::string>();
    v.patient_id = j.at("patient_id").get<std::string>();
    v.admit_time = j.at("admit_time").get<std::int64_t>();
    v.discharge_time = j.at("discharge_time").get<std::int64_t>();
    v.disposition = disposition_from_string(j.at("disposition").get<std::string>());
    if (j.contains("death_time") && !j["death_time"].is_null())
        v.death_time = j["death_time"].get<std::int64_t>();
    for (const auto& f : j.at("planned_flags"))
        v.planned_flags.insert(planned_flag_from_string(f.get<std::string>()));
    v.primary_condition = j.at("primary_condition").get<std::string>();
    v.note_text = j.at("note_text").get<std::string>();
    const auto& l = j.at("lace");
    v.lace.length_of_stay_days = l.at("length_of_stay_days").get<int>();
    v.lace.acute_admission = l.at("acute_admission").get<bool>();
    v.lace.charlson_comorbidity_index = l.at("charlson_comorbidity_index").get<int>();
    v.lace.ed_visits_prior_6mo = l.at("ed_visits_prior_6mo").get<int>();
    return v;
}

}  // namespace

void write_visits(const std::filesystem::path& path, const std::vector<VisitRecord>& visits) {
    std::vector<nlohmann::json> records;
    records.reserve(visits.size());
    for (const auto& v : visits) records.push_back(visit_to_json(v));
    write_jsonl_artifact(path, kVisitsFormat, kVisitsVersion, records);
}

std::vector<VisitRecord> read_visits(const std::filesystem::path& path) {
    const auto records = read_jsonl_artifact(path, kVisitsFormat, kVisitsVersion);
    std::vector<VisitRecord> visits;
    visits.reserve(records.size());
    try {
        for (const auto& r : records) visits.push_back(visit_from_json(r));
    } catch (const nlohmann::json::exception& e) {
        throw ArtifactError("corrupt visit record in " + path.string() + ": " + e.what());
    }
    return visits;
}

}  // namespace readmit
