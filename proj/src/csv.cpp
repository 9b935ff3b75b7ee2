#include "dqd/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace dqd {

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::string& path, const CsvMeta& meta, const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), ncols_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    out_ << "# config_hash: " << meta.config_hash << '\n';
    out_ << "# variant: " << meta.variant << '\n';
    out_ << "# code_version: " << kCodeVersion << '\n';
    out_ << "# preset: " << meta.preset << '\n';
    for (const auto& [k, v] : meta.extra) out_ << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::optional<double>>& values) {
    if (values.size() != ncols_) throw std::logic_error("CsvWriter::row: column count mismatch in " + path_);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        if (values[i]) out_ << format_number(*values[i]);
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    row(v);
}

} // namespace dqd
