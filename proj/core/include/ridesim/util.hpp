#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ridesim {

/// Error type for all recoverable failures (parse, validation, I/O).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shortest round-trip decimal rendering of a double. Used everywhere a
/// number is written to a file so that outputs are byte-deterministic and
/// re-parse to the exact same value.
inline std::string num_to_string(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string num_to_string(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);

/// Splits one CSV record on commas. No quoting: none of the file formats
/// here embed commas in fields.
std::vector<std::string_view> split_csv_line(std::string_view line);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// FNV-1a 64-bit, used to fingerprint trace files so paired runs can be
/// checked for identical inputs.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t hash_file(const std::string& path);

}  // namespace ridesim
