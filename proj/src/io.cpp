#include "spd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "spd/error.hpp"

namespace spd::io {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t begin = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > begin) tokens.push_back({line.substr(begin, i - begin), begin + 1});
    }
    return tokens;
}

std::string_view strip_plus(std::string_view s) {
    if (s.size() > 1 && s[0] == '+' && s[1] != '-' && s[1] != '+') s.remove_prefix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = strip_plus(s);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_index(std::string_view s) {
    if (s.empty() || s.front() < '0' || s.front() > '9') return std::nullopt;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

int map_label(double raw, LabelMode mode) {
    switch (mode) {
        case LabelMode::Signed:
            if (raw == 1.0) return 1;
            if (raw == -1.0) return -1;
            break;
        case LabelMode::ZeroOne:
            if (raw == 1.0) return 1;
            if (raw == 0.0) return -1;
            break;
        case LabelMode::OneTwo:
            if (raw == 1.0) return 1;
            if (raw == 2.0) return -1;
            break;
    }
    return 0;
}

const char* label_expectation(LabelMode mode) {
    switch (mode) {
        case LabelMode::ZeroOne:
            return "label must be 0 or 1";
        case LabelMode::OneTwo:
            return "label must be 1 or 2";
        default:
            return "label must be -1 or +1";
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

void check_written(const std::ostream& out, const std::filesystem::path& path) {
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

SvmDataset parse_libsvm(std::istream& in, const ParseOptions& options) {
    SvmDataset ds;
    ds.name = options.name;
    std::size_t max_index = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;

        SparseExample ex;
        const auto raw_label = parse_double(tokens[0].text);
        if (!raw_label) throw ParseError(line_no, tokens[0].column, std::string(tokens[0].text), "malformed label");
        ex.label = map_label(*raw_label, options.labels);
        if (ex.label == 0)
            throw ParseError(line_no, tokens[0].column, std::string(tokens[0].text), label_expectation(options.labels));

        std::uint64_t last = 0;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const auto& tok = tokens[t];
            const auto colon = tok.text.find(':');
            if (colon == std::string_view::npos)
                throw ParseError(line_no, tok.column, std::string(tok.text), "expected <index>:<value>");
            const auto index = parse_index(tok.text.substr(0, colon));
            const auto value = parse_double(tok.text.substr(colon + 1));
            if (!index || !value) throw ParseError(line_no, tok.column, std::string(tok.text), "malformed feature");
            if (*index == 0) throw ParseError(line_no, tok.column, std::string(tok.text), "feature indices are 1-based");
            if (*index <= last)
                throw ParseError(line_no, tok.column, std::string(tok.text), "feature indices not strictly increasing");
            if (*index > UINT32_MAX)
                throw ParseError(line_no, tok.column, std::string(tok.text), "feature index too large");
            if (options.num_features && *index > *options.num_features)
                throw ParseError(line_no, tok.column, std::string(tok.text), "feature index exceeds feature count");
            last = *index;
            if (*value == 0.0) continue;
            ex.features.indices.push_back(static_cast<std::uint32_t>(*index - 1));
            ex.features.values.push_back(*value);
        }
        max_index = std::max<std::size_t>(max_index, last);
        ds.examples.push_back(std::move(ex));
    }
    if (in.bad()) throw IoError("read error while parsing LIBSVM data");
    if (ds.examples.empty()) throw InvalidArgument("LIBSVM input contains no examples");
    // A file with no feature at all still describes a (degenerate) 1-feature set.
    ds.num_features = options.num_features.value_or(std::max<std::size_t>(max_index, 1));
    return ds;
}

SvmDataset parse_libsvm(const std::string& text, const ParseOptions& options) {
    std::istringstream in(text);
    return parse_libsvm(in, options);
}

SvmDataset load_libsvm(const std::filesystem::path& path, ParseOptions options) {
    auto in = open_in(path);
    if (options.name.empty()) options.name = path.filename().string();
    return parse_libsvm(in, options);
}

void write_libsvm(std::ostream& out, const SvmDataset& ds) {
    for (const auto& ex : ds.examples) {
        out << (ex.label > 0 ? "+1" : "-1");
        for (std::size_t j = 0; j < ex.features.nnz(); ++j)
            out << ' ' << ex.features.indices[j] + 1 << ':' << format_double(ex.features.values[j]);
        out << '\n';
    }
}

void save_libsvm(const std::filesystem::path& path, const SvmDataset& ds) {
    auto out = open_out(path);
    write_libsvm(out, ds);
    check_written(out, path);
}

SvmDataset subsample(const SvmDataset& ds, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("subsample: fraction must lie in (0, 1]");
    const std::size_t m = ds.examples.size();
    const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m)));
    if (count == 0) throw InvalidArgument("subsample: resulting dataset is empty");
    if (count == m) return ds;

    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, m - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    order.resize(count);
    std::sort(order.begin(), order.end());

    SvmDataset out;
    out.name = ds.name;
    out.num_features = ds.num_features;
    out.examples.reserve(count);
    for (std::size_t i : order) out.examples.push_back(ds.examples[i]);
    return out;
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
    out << kTraceHeader << '\n';
    for (const auto& r : records) {
        out << r.k << ',';
        if (r.objective) out << format_double(*r.objective);
        out << ',' << format_double(r.step_norm) << ',';
        if (r.tracker_error) out << format_double(*r.tracker_error);
        out << ',' << r.elapsed_ns << '\n';
    }
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& records) {
    auto out = open_out(path);
    write_trace(out, records);
    check_written(out, path);
}

std::vector<TraceRecord> read_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, 1, "", "missing trace header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader) throw ParseError(1, 1, line, "unexpected trace header");

    std::vector<TraceRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::vector<std::size_t> columns;
        std::string_view rest(line);
        std::size_t col = 1;
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            columns.push_back(col);
            if (comma == std::string_view::npos) break;
            col += comma + 1;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 5) throw ParseError(line_no, 1, line, "trace row must have 5 fields");

        auto required = [&](std::size_t i) {
            const auto v = parse_double(fields[i]);
            if (!v) throw ParseError(line_no, columns[i], std::string(fields[i]), "malformed number");
            return *v;
        };
        auto optional = [&](std::size_t i) -> std::optional<double> {
            if (fields[i].empty()) return std::nullopt;
            return required(i);
        };
        auto integer = [&](std::size_t i, auto& out) {
            const auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), out);
            if (ec != std::errc() || ptr != fields[i].data() + fields[i].size() || fields[i].empty())
                throw ParseError(line_no, columns[i], std::string(fields[i]), "malformed integer");
        };

        TraceRecord r;
        integer(0, r.k);
        r.objective = optional(1);
        r.step_norm = required(2);
        r.tracker_error = optional(3);
        integer(4, r.elapsed_ns);
        if (!records.empty() && r.k <= records.back().k)
            throw ParseError(line_no, 1, std::string(fields[0]), "trace iterations not strictly increasing");
        records.push_back(r);
    }
    return records;
}

std::vector<TraceRecord> read_trace(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_trace(in);
    } catch (const ParseError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
    for (const auto& [key, value] : manifest) {
        std::string v = value;
        std::replace(v.begin(), v.end(), '\n', ' ');
        out << key << '=' << v << '\n';
    }
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    auto out = open_out(path);
    write_manifest(out, manifest);
    check_written(out, path);
}

Manifest read_manifest(std::istream& in) {
    Manifest manifest;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(line_no, 1, line, "expected key=value");
        manifest.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return manifest;
}

Manifest read_manifest(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_manifest(in);
}

std::optional<std::string> manifest_value(const Manifest& manifest, const std::string& key) {
    for (const auto& [k, v] : manifest)
        if (k == key) return v;
    return std::nullopt;
}

std::string file_checksum(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

}  // namespace spd::io
