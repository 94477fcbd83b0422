#ifndef READMIT_RECORD_IO_HPP
#define READMIT_RECORD_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace readmit {

// FNV-1a 64-bit. Identifies artifact contents; not cryptographic.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hash_string(std::uint64_t h);  // "fnv1a:0123456789abcdef"

// Newline-delimited JSON records. Every artifact in this family starts with
// a header record carrying the format name, version, record count and the
// FNV-1a hash of the payload lines, e.g.
//
//   {"content_hash":"fnv1a:...","format":"readmit.visits","records":3,"version":1}
//   {...record 1...}
//   ...
//
// Readers verify the format name, version and hash before returning.
void write_jsonl_artifact(const std::filesystem::path& path, const std::string& format,
                          int version, const std::vector<nlohmann::json>& records);

std::vector<nlohmann::json> read_jsonl_artifact(const std::filesystem::path& path,
                                                const std::string& expected_format,
                                                int expected_version);

}  // namespace readmit

#endif
