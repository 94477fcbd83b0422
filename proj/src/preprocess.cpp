#include "readmit/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "readmit/errors.hpp"

namespace readmit {

namespace {

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ascii_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

char ascii_lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = ascii_lower(c);
    return out;
}

std::string_view strip_edge_punct(std::string_view tok) {
    std::size_t b = 0, e = tok.size();
    while (b < e && is_ascii_punct(tok[b])) ++b;
    while (e > b && is_ascii_punct(tok[e - 1])) --e;
    return tok.substr(b, e - b);
}

const std::array<std::string_view, 24> kMonthNames = {
    "jan", "january", "feb", "february", "mar",  "march",    "apr", "april",
    "may", "jun",     "june", "jul",     "july", "aug",      "august", "sep",
    "sept", "september", "oct", "october", "nov", "november", "dec", "december"};

bool is_date_sep(char c) { return c == '-' || c == '/' || c == '.'; }

// Consume 1-4 digits starting at i; returns count consumed.
std::size_t eat_digits(std::string_view s, std::size_t i) {
    std::size_t n = 0;
    while (i + n < s.size() && n < 4 && is_ascii_digit(s[i + n])) ++n;
    return n;
}

// Consume a month name: the maximal letter run starting at i must itself be
// a month name (so "sepsis" is not a hit).
std::size_t eat_month(std::string_view s, std::size_t i) {
    std::size_t n = 0;
    while (i + n < s.size() && std::isalpha(static_cast<unsigned char>(s[i + n]))) ++n;
    if (n == 0) return 0;
    const std::string_view run = s.substr(i, n);
    return std::find(kMonthNames.begin(), kMonthNames.end(), run) != kMonthNames.end() ? n : 0;
}

// Numeric date: two or three 1-2 digit components (day/month), at most one
// 4-digit year, joined by a single separator kind from -/. .
bool numeric_date(std::string_view s) {
    std::vector<std::size_t> widths;
    std::size_t i = 0;
    char sep = 0;
    while (i < s.size()) {
        const std::size_t n = eat_digits(s, i);
        if (n == 0) return false;
        widths.push_back(n);
        i += n;
        if (i == s.size()) break;
        if (!is_date_sep(s[i])) return false;
        if (sep == 0) sep = s[i];
        else if (s[i] != sep) return false;
        ++i;
        if (i == s.size()) return false;  // trailing separator
    }
    if (widths.size() < 2 || widths.size() > 3) return false;
    int years = 0, small = 0;
    for (auto w : widths) {
        if (w == 3) return false;
        (w == 4 ? years : small)++;
    }
    return years <= 1 && small >= 1;
}

// Month-name date fused into one token: month and digits adjacent or joined
// by single separators, e.g. "mar-14", "14mar2012", "jan2014", "2012-jan".
bool month_name_date(std::string_view s) {
    std::size_t i = 0;
    bool saw_month = false, saw_digits = false;
    int parts = 0;
    while (i < s.size()) {
        std::size_t n = eat_month(s, i);
        if (n > 0) {
            if (saw_month) return false;
            saw_month = true;
        } else {
            n = eat_digits(s, i);
            if (n == 0) return false;
            saw_digits = true;
        }
        parts++;
        i += n;
        if (i < s.size() && is_date_sep(s[i])) {
            ++i;
            if (i == s.size()) return false;
        }
    }
    return saw_month && saw_digits && parts <= 3;
}

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

bool is_date_token(std::string_view token) {
    const std::string_view core = strip_edge_punct(token);
    if (core.empty()) return false;
    bool has_digit = false;
    for (char c : core) has_digit |= is_ascii_digit(c);
    if (!has_digit) return false;
    return numeric_date(core) || month_name_date(core);
}

std::string deidentify(std::string_view text, const std::set<std::string>& name_lexicon) {
    std::string out;
    out.reserve(text.size());
    for (const auto& raw : whitespace_tokens(text)) {
        const std::string tok = lower_copy(raw);
        if (is_date_token(tok)) continue;
        std::string stripped;
        stripped.reserve(tok.size());
        for (char c : tok)
            if (!is_ascii_digit(c) && !is_ascii_punct(c)) stripped += c;
        if (stripped.empty()) continue;
        if (name_lexicon.count(stripped)) continue;
        if (!out.empty()) out += ' ';
        out += stripped;
    }
    return out;
}

// --- section schema ---

void SectionSchema::validate() const {
    if (fallback_section.empty())
        throw std::invalid_argument("section schema: fallback section is required");
    std::set<std::string> names;
    for (const auto& sec : sections) {
        if (sec.name.empty())
            throw std::invalid_argument("section schema: empty section name");
        if (!names.insert(sec.name).second)
            throw std::invalid_argument("section schema: duplicate section '" + sec.name + "'");
        if (sec.header_patterns.empty())
            throw std::invalid_argument("section schema: section '" + sec.name +
                                        "' has no header patterns");
        for (const auto& p : sec.header_patterns)
            if (p.empty() || p == "*")
                throw std::invalid_argument("section schema: pattern for '" + sec.name +
                                            "' must contain a literal");
    }
    if (names.count(fallback_section))
        throw std::invalid_argument("section schema: fallback must not also be a header section");
    names.insert(fallback_section);
    if (canonical_order.size() != names.size())
        throw std::invalid_argument("section schema: canonical order must list every section once");
    std::set<std::string> ordered(canonical_order.begin(), canonical_order.end());
    if (ordered != names)
        throw std::invalid_argument(
            "section schema: canonical order is not a permutation of the section names");
}

namespace {

// Anchored literal-plus-wildcard match at the start of `line` (both already
// lowercased). Returns the shortest matched prefix length, or 0.
std::size_t match_prefix(std::string_view pattern, std::string_view line) {
    if (pattern.empty()) return 0;
    std::size_t pi = 0, li = 0;
    // Iterative shortest-match: on '*', try expanding one character at a
    // time via recursion depth 1 per star (patterns are short).
    struct Frame {
        std::size_t pi, li;
    };
    std::vector<Frame> stars;
    while (pi < pattern.size()) {
        if (pattern[pi] == '*') {
            stars.push_back({pi, li});
            ++pi;
            continue;
        }
        if (li < line.size() && pattern[pi] == line[li]) {
            ++pi;
            ++li;
            continue;
        }
        // Mismatch: grow the most recent star by one character.
        while (!stars.empty()) {
            Frame& f = stars.back();
            f.li++;
            if (f.li <= line.size()) {
                pi = f.pi + 1;
                li = f.li;
                break;
            }
            stars.pop_back();
        }
        if (stars.empty() && (pi == 0 || li > line.size())) return 0;
        if (stars.empty()) return 0;
    }
    return li;
}

struct HeaderHit {
    std::size_t section_index;  // into schema.sections
    std::size_t header_len;
};

// First schema pattern that matches the start of the line wins.
bool match_header(std::string_view lower_line, const SectionSchema& schema, HeaderHit* hit) {
    for (std::size_t si = 0; si < schema.sections.size(); ++si) {
        for (const auto& pat : schema.sections[si].header_patterns) {
            const std::size_t len = match_prefix(pat, lower_line);
            if (len > 0) {
                *hit = {si, len};
                return true;
            }
        }
    }
    return false;
}

void append_text(std::string& dst, std::string_view piece) {
    // Trim outer whitespace of the piece; keep interior intact.
    std::size_t b = 0, e = piece.size();
    while (b < e && std::isspace(static_cast<unsigned char>(piece[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(piece[e - 1]))) --e;
    if (b == e) return;
    if (!dst.empty()) dst += '\n';
    dst.append(piece.substr(b, e - b));
}

}  // namespace

std::vector<std::pair<std::string, std::string>> scan_sections(std::string_view text,
                                                               const SectionSchema& schema) {
    schema.validate();
    std::vector<std::pair<std::string, std::string>> spans;
    std::string current_name = schema.fallback_section;
    std::string current_text;

    auto flush = [&]() {
        if (!current_text.empty()) spans.emplace_back(current_name, current_text);
        current_text.clear();
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        const std::string lower = lower_copy(line);
        HeaderHit hit;
        if (match_header(lower, schema, &hit)) {
            flush();
            current_name = schema.sections[hit.section_index].name;
            append_text(current_text, line.substr(hit.header_len));
        } else {
            append_text(current_text, line);
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    flush();
    return spans;
}

std::vector<std::pair<std::string, std::string>> segment_sections(std::string_view text,
                                                                  const SectionSchema& schema) {
    const auto spans = scan_sections(text, schema);

    std::vector<std::pair<std::string, std::string>> merged;
    auto find = [&](const std::string& name) -> std::string* {
        for (auto& [n, t] : merged)
            if (n == name) return &t;
        return nullptr;
    };
    for (const auto& [name, body] : spans) {
        if (std::string* t = find(name)) {
            *t += '\n';
            *t += body;
        } else {
            merged.emplace_back(name, body);
        }
    }

    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& name : schema.canonical_order)
        if (std::string* t = find(name))
            out.emplace_back(name, std::move(*t));

    if (out.empty()) out.emplace_back(schema.fallback_section, "");
    return out;
}

SectionSchema SectionSchema::default_schema() {
    SectionSchema s;
    s.sections = {
        {"chief_complaint", {"chief complaint*:", "cc:"}},
        {"history", {"history*:", "hpi:", "past medical history*:"}},
        {"hospital_course", {"hospital course*:", "course*:"}},
        {"procedures", {"procedure*:", "operations*:"}},
        {"allergies", {"allerg*:"}},
        {"medications", {"medication*:", "discharge medication*:", "meds*:"}},
        {"discharge_condition", {"discharge condition*:", "condition at discharge*:"}},
        {"prognosis", {"prognosis*:"}},
        {"instructions", {"instruction*:", "discharge instruction*:", "follow up*:", "followup*:"}},
    };
    s.fallback_section = "note";
    s.canonical_order = {"chief_complaint", "history",   "hospital_course",
                         "procedures",      "allergies", "medications",
                         "discharge_condition", "prognosis", "instructions", "note"};
    s.validate();
    return s;
}

SectionSchema SectionSchema::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArtifactError("missing section schema: " + path.string());

    SectionSchema s;
    std::string line;
    Section* current = nullptr;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        auto rest_of = [&]() {
            std::string rest;
            std::getline(ls, rest);
            std::size_t rb = rest.find_first_not_of(" \t");
            std::size_t re = rest.find_last_not_of(" \t\r");
            if (rb == std::string::npos) return std::string();
            return rest.substr(rb, re - rb + 1);
        };
        if (key == "section") {
            s.sections.push_back({rest_of(), {}});
            current = &s.sections.back();
        } else if (key == "header") {
            if (!current)
                throw ArtifactError(path.string() + ":" + std::to_string(lineno) +
                                    ": 'header' before any 'section'");
            current->header_patterns.push_back(lower_copy(rest_of()));
        } else if (key == "fallback") {
            s.fallback_section = rest_of();
        } else if (key == "order") {
            std::string name;
            while (ls >> name) s.canonical_order.push_back(name);
        } else {
            throw ArtifactError(path.string() + ":" + std::to_string(lineno) +
                                ": unknown schema directive '" + key + "'");
        }
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ArtifactError(path.string() + ": " + e.what());
    }
    return s;
}

// --- token sequences ---

TokenSequence to_token_sequence(const std::vector<std::pair<std::string, std::string>>& sections,
                                const Vocabulary& vocab, int L) {
    if (L < 1) throw std::invalid_argument("to_token_sequence: L must be >= 1");
    TokenSequence seq;
    seq.ids.assign(static_cast<std::size_t>(L), kPadId);
    int n = 0;
    int raw = 0;
    for (const auto& [name, body] : sections) {
        for (const auto& tok : whitespace_tokens(body)) {
            ++raw;
            if (n < L) seq.ids[static_cast<std::size_t>(n++)] = vocab.id_of(tok);
        }
    }
    seq.original_length = std::min(raw, L);
    return seq;
}

TokenSequence tokenize_prepared(std::string_view text, const Vocabulary& vocab, int L) {
    return to_token_sequence({{"note", std::string(text)}}, vocab, L);
}

std::string preprocess_note(std::string_view raw_text, const SectionSchema& schema,
                            const std::set<std::string>& name_lexicon) {
    std::string out;
    for (const auto& [name, body] : segment_sections(raw_text, schema)) {
        const std::string clean = deidentify(body, name_lexicon);
        if (clean.empty()) continue;
        if (!out.empty()) out += ' ';
        out += clean;
    }
    return out;
}

std::set<std::string> load_name_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArtifactError("missing name lexicon: " + path.string());
    std::set<std::string> lex;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        lex.insert(lower_copy(line.substr(b, e - b + 1)));
    }
    return lex;
}

}  // namespace readmit
