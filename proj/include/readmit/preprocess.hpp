#ifndef READMIT_PREPROCESS_HPP
#define READMIT_PREPROCESS_HPP

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "readmit/vocab.hpp"

namespace readmit {

std::vector<std::string> whitespace_tokens(std::string_view text);

/// True for single tokens that look like dates: numeric day/month/year forms
/// with -, / or . separators, and month-name forms fused with digits
/// ("14-mar-2012", "jan2014"). Edge punctuation is ignored. The pattern set
/// is a fixed table; tests/golden pins its behavior.
bool is_date_token(std::string_view token);

/// Lowercase the text and remove digits, punctuation, date tokens, and
/// name-lexicon tokens, collapsing whitespace. Date and lexicon hits drop
/// the whole token; digits and punctuation are removed character by
/// character. Lexicon matching is case-insensitive on the punctuation-
/// stripped token. Idempotent.
std::string deidentify(std::string_view text, const std::set<std::string>& name_lexicon);

/// Section names, their header patterns and the canonical output order.
/// Patterns are anchored at the start of a line and are matched
/// case-insensitively; '*' matches any run of characters within the line
/// (shortest match). The matched prefix is the header; the rest of the line
/// starts the section body.
struct SectionSchema {
    struct Section {
        std::string name;
        std::vector<std::string> header_patterns;
    };
    std::vector<Section> sections;
    std::vector<std::string> canonical_order;  // permutation over section names + fallback
    std::string fallback_section;

    // Throws std::invalid_argument on duplicate names, empty patterns, or a
    // canonical order that is not a permutation of the section names.
    void validate() const;

    static SectionSchema default_schema();
    static SectionSchema load(const std::filesystem::path& path);
};

/// Raw segmentation in source order, duplicates not merged. The concatenation
/// of the returned texts is whitespace-equivalent to the input with headers
/// removed. Text before the first header lands in the fallback section.
std::vector<std::pair<std::string, std::string>> scan_sections(std::string_view text,
                                                               const SectionSchema& schema);

/// Segmentation as consumed by the pipeline: duplicate headers merged in
/// source order, sections emitted in canonical order, empty sections
/// dropped. A note with no recognized header yields a single fallback entry.
std::vector<std::pair<std::string, std::string>> segment_sections(std::string_view text,
                                                                  const SectionSchema& schema);

/// A note reduced to exactly `length` token ids.
struct TokenSequence {
    std::vector<std::int32_t> ids;  // size == length; tail padded with kPadId
    int original_length = 0;        // min(raw token count, length)
};

/// Tokenize the concatenated section texts, map through the vocabulary
/// (OOV -> UNKNOWN), truncate to L, right-pad with PADDING.
/// Throws std::invalid_argument when L < 1.
TokenSequence to_token_sequence(const std::vector<std::pair<std::string, std::string>>& sections,
                                const Vocabulary& vocab, int L = 700);

// Same contract for text that was already segmented and de-identified.
TokenSequence tokenize_prepared(std::string_view text, const Vocabulary& vocab, int L = 700);

/// Full note path: segment + reorder, then de-identify each section, and
/// join into the canonical text the model consumes.
std::string preprocess_note(std::string_view raw_text, const SectionSchema& schema,
                            const std::set<std::string>& name_lexicon);

// One lowercase name per line; '#' comments allowed.
std::set<std::string> load_name_lexicon(const std::filesystem::path& path);

}  // namespace readmit

#endif
