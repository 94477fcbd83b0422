#include "readmit/record_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "readmit/errors.hpp"

namespace readmit {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArtifactError("cannot open file for hashing: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64(buf.str());
}

std::string hash_string(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_jsonl_artifact(const std::filesystem::path& path, const std::string& format,
                          int version, const std::vector<nlohmann::json>& records) {
    std::string payload;
    for (const auto& r : records) {
        payload += r.dump();
        payload += '\n';
    }
    nlohmann::json header = {
        {"format", format},
        {"version", version},
        {"records", records.size()},
        {"content_hash", hash_string(fnv1a64(payload))},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArtifactError("cannot write artifact: " + path.string());
    out << header.dump() << '\n' << payload;
    if (!out) throw ArtifactError("failed writing artifact: " + path.string());
}

std::vector<nlohmann::json> read_jsonl_artifact(const std::filesystem::path& path,
                                                const std::string& expected_format,
                                                int expected_version) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArtifactError("missing artifact: " + path.string() + " (expected " +
                                 expected_format + " v" + std::to_string(expected_version) + ")");
    std::string line;
    if (!std::getline(in, line))
        throw ArtifactError("empty artifact: " + path.string());

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ArtifactError("corrupt artifact header in " + path.string() + ": " + e.what());
    }
    if (!header.contains("format") || header["format"] != expected_format)
        throw ArtifactError("artifact " + path.string() + " is not " + expected_format);
    if (!header.contains("version") || header["version"].get<int>() != expected_version)
        throw ArtifactError("artifact " + path.string() + ": expected " + expected_format +
                            " v" + std::to_string(expected_version));

    std::string payload;
    std::vector<nlohmann::json> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        payload += line;
        payload += '\n';
        try {
            records.push_back(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw ArtifactError("corrupt record " + std::to_string(records.size() + 1) +
                                " in " + path.string() + ": " + e.what());
        }
    }
    if (header.contains("content_hash") &&
        header["content_hash"] != hash_string(fnv1a64(payload)))
        throw ArtifactError("artifact " + path.string() + " failed its content hash check");
    if (header.contains("records") && header["records"].get<std::size_t>() != records.size())
        throw ArtifactError("artifact " + path.string() + " record count mismatch");
    return records;
}

}  // namespace readmit
