#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace electsent {

/// Raised when an input file is missing or its contents violate the format
/// contract. The CLI maps this to exit code 2; everything else maps to 3.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

std::string trim(std::string_view s);
std::string ascii_lower(std::string_view s);
bool contains_ci(std::string_view haystack, std::string_view lowered_needle);

std::vector<std::string> split(std::string_view s, char sep);

// Minimal CSV with RFC-style quoting, enough for the report files.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
std::vector<std::vector<std::string>> read_csv(std::istream& in);

// FNV-1a, used for the manifest's input fingerprints. Not cryptographic;
// it only has to notice that an input changed.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(std::uint64_t value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

std::string format_fixed(double value, int digits = 6);

}  // namespace electsent
