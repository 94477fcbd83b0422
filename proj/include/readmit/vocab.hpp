#ifndef READMIT_VOCAB_HPP
#define READMIT_VOCAB_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace readmit {

inline constexpr std::int32_t kPadId = 0;
inline constexpr std::int32_t kUnkId = 1;
inline constexpr const char* kPadToken = "PADDING";
inline constexpr const char* kUnkToken = "UNKNOWN";

/// Token <-> id table. Ids 0 and 1 are reserved for PADDING and UNKNOWN;
/// the rest are assigned by descending count, lexicographic on ties.
struct Vocabulary {
    std::vector<std::string> id_to_token;   // index = id
    std::vector<std::int64_t> counts;       // parallel to id_to_token
    std::unordered_map<std::string, std::int32_t> token_to_id;
    int min_count = 1;

    std::int32_t size() const { return static_cast<std::int32_t>(id_to_token.size()); }

    // Out-of-vocabulary tokens map to UNKNOWN.
    std::int32_t id_of(const std::string& token) const {
        auto it = token_to_id.find(token);
        return it == token_to_id.end() ? kUnkId : it->second;
    }

    const std::string& token_of(std::int32_t id) const { return id_to_token.at(static_cast<std::size_t>(id)); }

    // Stable identity used to pair models with the vocabulary they were
    // trained against.
    std::uint64_t content_hash() const;
};

/// Build a vocabulary from whitespace-token lists. Tokens seen fewer than
/// min_count times are dropped (their occurrences count toward UNKNOWN).
/// Throws std::invalid_argument on an empty corpus or min_count < 1.
Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count);

// Text artifact: "readmit.vocab.v1 <V> <min_count>" header, then one
// "<token> <count>" line per id in id order.
void save_vocab(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary load_vocab(const std::filesystem::path& path);

}  // namespace readmit

#endif
