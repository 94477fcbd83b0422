#include "readmit/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "readmit/errors.hpp"
#include "readmit/record_io.hpp"

namespace readmit {

std::uint64_t Vocabulary::content_hash() const {
    std::string blob;
    for (std::size_t i = 0; i < id_to_token.size(); ++i) {
        blob += id_to_token[i];
        blob += '\x1f';
        blob += std::to_string(counts[i]);
        blob += '\n';
    }
    return fnv1a64(blob);
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& corpus, int min_count) {
    if (min_count < 1) throw std::invalid_argument("build_vocab: min_count must be >= 1");

    std::map<std::string, std::int64_t> raw_counts;
    std::int64_t total = 0;
    for (const auto& doc : corpus) {
        for (const auto& tok : doc) {
            if (tok == kPadToken || tok == kUnkToken) continue;
            raw_counts[tok]++;
            total++;
        }
    }
    if (total == 0) throw std::invalid_argument("build_vocab: empty corpus");

    std::vector<std::pair<std::string, std::int64_t>> kept;
    std::int64_t dropped = 0;
    for (const auto& [tok, count] : raw_counts) {
        if (count >= min_count)
            kept.emplace_back(tok, count);
        else
            dropped += count;
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary v;
    v.min_count = min_count;
    v.id_to_token = {kPadToken, kUnkToken};
    v.counts = {0, dropped};
    for (auto& [tok, count] : kept) {
        v.id_to_token.push_back(std::move(tok));
        v.counts.push_back(count);
    }
    for (std::size_t i = 0; i < v.id_to_token.size(); ++i)
        v.token_to_id.emplace(v.id_to_token[i], static_cast<std::int32_t>(i));
    return v;
}

void save_vocab(const std::filesystem::path& path, const Vocabulary& vocab) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArtifactError("cannot write vocabulary: " + path.string());
    out << "readmit.vocab.v1 " << vocab.size() << ' ' << vocab.min_count << '\n';
    for (std::int32_t i = 0; i < vocab.size(); ++i)
        out << vocab.id_to_token[static_cast<std::size_t>(i)] << ' '
            << vocab.counts[static_cast<std::size_t>(i)] << '\n';
    if (!out) throw ArtifactError("failed writing vocabulary: " + path.string());
}

Vocabulary load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArtifactError("missing vocabulary artifact: " + path.string() +
                                 " (expected readmit.vocab.v1)");
    std::string magic;
    std::int64_t size = 0;
    int min_count = 0;
    in >> magic >> size >> min_count;
    if (magic != "readmit.vocab.v1" || size < 2)
        throw ArtifactError("artifact " + path.string() + " is not readmit.vocab.v1");

    Vocabulary v;
    v.min_count = min_count;
    for (std::int64_t i = 0; i < size; ++i) {
        std::string tok;
        std::int64_t count;
        if (!(in >> tok >> count))
            throw ArtifactError("corrupt vocabulary entry " + std::to_string(i) + " in " +
                                path.string());
        v.id_to_token.push_back(tok);
        v.counts.push_back(count);
    }
    if (v.id_to_token[0] != kPadToken || v.id_to_token[1] != kUnkToken)
        throw ArtifactError("vocabulary " + path.string() + " lacks the reserved tokens");
    for (std::size_t i = 0; i < v.id_to_token.size(); ++i)
        v.token_to_id.emplace(v.id_to_token[i], static_cast<std::int32_t>(i));
    return v;
}

}  // namespace readmit
