#include "tsgkit/tensor_io.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace tsgkit {

namespace {

void put_u32_le(std::ofstream& out, std::uint32_t v) {
    std::array<char, 4> b{};
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), b.size());
}

void put_u64_le(std::ofstream& out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), b.size());
}

std::uint32_t get_u32_le(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

} // namespace

void save_tensor(const TimeSeriesTensor& tensor, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(kTensorMagic, 4);
    put_u32_le(out, kTensorFormatVersion);
    put_u64_le(out, tensor.r_count());
    put_u64_le(out, tensor.seq_len());
    put_u64_le(out, tensor.dim_count());
    static_assert(std::endian::native == std::endian::little,
                  "payload fast path assumes a little-endian host");
    out.write(reinterpret_cast<const char*>(tensor.values().data()),
              static_cast<std::streamsize>(tensor.size() * sizeof(double)));
    if (!out) throw IoError("write failed: " + path.string());
}

TimeSeriesTensor load_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("input not found: " + path.string());

    std::array<unsigned char, kTensorHeaderBytes> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (static_cast<std::size_t>(in.gcount()) != header.size()) {
        throw FormatError("truncated header in " + path.string());
    }
    if (std::memcmp(header.data(), kTensorMagic, 4) != 0) {
        throw FormatError("bad magic in " + path.string() + " (expected TSGT)");
    }
    const std::uint32_t version = get_u32_le(header.data() + 4);
    if (version != kTensorFormatVersion) {
        throw FormatError("unsupported tensor format version " + std::to_string(version) +
                          " in " + path.string());
    }
    const std::uint64_t r = get_u64_le(header.data() + 8);
    const std::uint64_t l = get_u64_le(header.data() + 16);
    const std::uint64_t n = get_u64_le(header.data() + 24);
    if (r == 0 || l == 0 || n == 0) {
        throw FormatError("zero dimension in tensor header of " + path.string());
    }
    const std::uint64_t count = r * l * n;
    if (l != 0 && count / l / n != r) {
        throw FormatError("tensor shape overflows in " + path.string());
    }

    std::vector<double> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
        throw FormatError("truncated payload in " + path.string() + ": expected " +
                          std::to_string(count * sizeof(double)) + " bytes");
    }
    // Trailing garbage is rejected too: the format is exactly header+payload.
    char extra = 0;
    if (in.read(&extra, 1); in.gcount() != 0) {
        throw FormatError("trailing bytes after payload in " + path.string());
    }
    return {std::move(payload), r, l, n};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
    const std::string_view t = trim(cell);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ParseError("cannot parse \"" + std::string(cell) + "\" as a number at row " +
                         std::to_string(row) + ", column " + std::to_string(col));
    }
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("input not found: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    return lines;
}

} // namespace

RawSeries load_raw_csv(const std::filesystem::path& path, bool has_header) {
    const std::vector<std::string> lines = read_lines(path);
    std::size_t first = 0;
    std::vector<std::string> names;
    if (has_header) {
        if (lines.empty()) throw ParseError("missing header row in " + path.string());
        for (const auto& cell : split_csv_line(lines[0])) {
            names.emplace_back(trim(cell));
        }
        first = 1;
    }
    if (first >= lines.size()) throw ParseError("no data rows in " + path.string());

    const std::size_t n = split_csv_line(lines[first]).size();
    if (has_header && names.size() != n) {
        throw ShapeError("header has " + std::to_string(names.size()) +
                         " columns but data rows have " + std::to_string(n));
    }
    std::vector<double> values;
    values.reserve((lines.size() - first) * n);
    for (std::size_t row = first; row < lines.size(); ++row) {
        const auto cells = split_csv_line(lines[row]);
        if (cells.size() != n) {
            throw ShapeError("ragged row " + std::to_string(row + 1) + " in " + path.string() +
                             ": has " + std::to_string(cells.size()) + " columns, expected " +
                             std::to_string(n));
        }
        for (std::size_t col = 0; col < n; ++col) {
            values.push_back(parse_cell(cells[col], row + 1, col + 1));
        }
    }
    return {std::move(values), lines.size() - first, n, std::move(names)};
}

TimeSeriesTensor load_tensor_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.size() < 2) throw ParseError("no data rows in " + path.string());

    const auto header = split_csv_line(lines[0]);
    if (header.size() < 3 || trim(header[0]) != "window_id" || trim(header[1]) != "time_step") {
        throw ParseError("long-format CSV must start with window_id,time_step,dim_0,... in " +
                         path.string());
    }
    const std::size_t n = header.size() - 2;

    struct Cell { std::size_t r, j; std::vector<double> dims; };
    std::vector<Cell> cells;
    std::size_t max_r = 0, max_j = 0;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto fields = split_csv_line(lines[row]);
        if (fields.size() != header.size()) {
            throw ShapeError("ragged row " + std::to_string(row + 1) + " in " + path.string());
        }
        Cell c;
        const double rv = parse_cell(fields[0], row + 1, 1);
        const double jv = parse_cell(fields[1], row + 1, 2);
        if (rv < 0 || jv < 0 || rv != static_cast<std::size_t>(rv) ||
            jv != static_cast<std::size_t>(jv)) {
            throw ParseError("window_id/time_step must be non-negative integers at row " +
                             std::to_string(row + 1));
        }
        c.r = static_cast<std::size_t>(rv);
        c.j = static_cast<std::size_t>(jv);
        c.dims.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            c.dims.push_back(parse_cell(fields[2 + i], row + 1, 3 + i));
        }
        max_r = std::max(max_r, c.r);
        max_j = std::max(max_j, c.j);
        cells.push_back(std::move(c));
    }
    const std::size_t r_count = max_r + 1;
    const std::size_t seq_len = max_j + 1;
    if (cells.size() != r_count * seq_len) {
        throw ShapeError("long-format CSV grid incomplete: got " + std::to_string(cells.size()) +
                         " rows for shape (" + std::to_string(r_count) + ", " +
                         std::to_string(seq_len) + ")");
    }
    std::vector<double> data(r_count * seq_len * n);
    std::vector<bool> seen(r_count * seq_len, false);
    for (const auto& c : cells) {
        const std::size_t slot = c.r * seq_len + c.j;
        if (seen[slot]) {
            throw ShapeError("duplicate (window_id, time_step) = (" + std::to_string(c.r) +
                             ", " + std::to_string(c.j) + ") in " + path.string());
        }
        seen[slot] = true;
        std::copy(c.dims.begin(), c.dims.end(), data.begin() + slot * n);
    }
    return {std::move(data), r_count, seq_len, n};
}

std::string file_digest_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("input not found: " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    std::array<unsigned char, 65536> buf{};
    while (in) {
        in.read(reinterpret_cast<char*>(buf.data()), buf.size());
        h = fnv1a64(buf.data(), static_cast<std::size_t>(in.gcount()), h);
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace tsgkit
