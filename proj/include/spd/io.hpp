#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spd/core.hpp"
#include "spd/problems/svm.hpp"

namespace spd::io {

// ---------------------------------------------------------------------------
// LIBSVM text format:  <label> <index>:<value> <index>:<value> ...
// Indices are 1-based and strictly increasing. Blank lines are skipped.

enum class LabelMode {
    Signed,   // -1 / +1 only
    ZeroOne,  // 0 -> -1, 1 -> +1
    OneTwo,   // 1 -> +1, 2 -> -1 (covtype.binary)
};

struct ParseOptions {
    LabelMode labels = LabelMode::Signed;
    /// Feature count; inferred as the largest index seen when unset.
    std::optional<std::size_t> num_features;
    std::string name;
};

/// Throws ParseError (with 1-based line/column) on malformed input and
/// InvalidArgument when no example is found.
SvmDataset parse_libsvm(std::istream& in, const ParseOptions& options = {});
SvmDataset parse_libsvm(const std::string& text, const ParseOptions& options = {});
SvmDataset load_libsvm(const std::filesystem::path& path, ParseOptions options = {});

/// Writes values with 17 significant digits, so parsing back is exact.
void write_libsvm(std::ostream& out, const SvmDataset& ds);
void save_libsvm(const std::filesystem::path& path, const SvmDataset& ds);

/// Uniform subset without replacement of floor(fraction * m) examples, kept in
/// their original order. Deterministic per seed. Feature count is preserved.
SvmDataset subsample(const SvmDataset& ds, double fraction, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Trace CSV: header "k,objective,step_norm,tracker_error,elapsed_ns", absent
// optional metrics as empty fields, doubles with 17 significant digits.

inline constexpr const char* kTraceHeader = "k,objective,step_norm,tracker_error,elapsed_ns";

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);
void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace(std::istream& in);
std::vector<TraceRecord> read_trace(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Manifest: flat "key=value" lines in insertion order. '#' starts a comment line.

using Manifest = std::vector<std::pair<std::string, std::string>>;

void write_manifest(std::ostream& out, const Manifest& manifest);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(std::istream& in);
Manifest read_manifest(const std::filesystem::path& path);
std::optional<std::string> manifest_value(const Manifest& manifest, const std::string& key);

/// FNV-1a 64-bit over the file's bytes, as 16 hex digits.
std::string file_checksum(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace spd::io
