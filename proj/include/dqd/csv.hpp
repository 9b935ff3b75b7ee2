// csv.hpp — CSV output with '#'-prefixed metadata lines above a single header row.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dqd {

inline constexpr const char* kCodeVersion = "0.1.0";

// FNV-1a, 16 hex digits.
std::string fnv1a_hex(std::string_view text);

// Shortest round-trip representation; byte-stable across runs.
std::string format_number(double x);

struct CsvMeta {
    std::string config_hash;
    std::string variant;
    std::string preset;
    std::vector<std::pair<std::string, std::string>> extra;
};

class CsvWriter {
public:
    CsvWriter(const std::string& path, const CsvMeta& meta, const std::vector<std::string>& columns);

    // Empty optionals become empty fields.
    void row(const std::vector<std::optional<double>>& values);
    void row(const std::vector<double>& values);

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t ncols_;
};

} // namespace dqd
