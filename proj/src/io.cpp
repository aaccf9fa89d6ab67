#include "coreset/io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace coreset {

static_assert(std::endian::native == std::endian::little,
              "binary point files are little-endian; big-endian hosts need byte swaps");

namespace {

bool is_csv(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument(path + ": " + what);
}

// ---- binary ----

void write_bin(std::ostream& os, const void* p, std::size_t bytes) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

void read_bin(std::istream& is, void* p, std::size_t bytes, const std::string& path,
              const char* what) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(is.gcount()) != bytes)
        fail(path, std::string("truncated file while reading ") + what);
}

void save_binary(const PointSet& u, const std::vector<double>* weights,
                 const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(path, "cannot open for writing");
    const char* magic = weights ? "CSWT" : "CSET";
    write_bin(os, magic, 4);
    const std::uint32_t version = 1;
    write_bin(os, &version, 4);
    const std::uint64_t n = u.n, d = u.d;
    write_bin(os, &n, 8);
    write_bin(os, &d, 8);
    write_bin(os, u.data.data(), u.data.size() * 8);
    if (weights) write_bin(os, weights->data(), weights->size() * 8);
    if (!os) fail(path, "write failed");
}

void load_binary(const std::string& path, bool weighted, PointSet& u,
                 std::vector<double>* weights) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(path, "cannot open");
    char magic[4];
    read_bin(is, magic, 4, path, "magic");
    const char* want = weighted ? "CSWT" : "CSET";
    if (std::memcmp(magic, want, 4) != 0)
        fail(path, std::string("bad magic (expected ") + want + ")");
    std::uint32_t version = 0;
    read_bin(is, &version, 4, path, "version");
    if (version != 1) fail(path, "unsupported version " + std::to_string(version));
    std::uint64_t n = 0, d = 0;
    read_bin(is, &n, 8, path, "n");
    read_bin(is, &d, 8, path, "d");
    if (n == 0 || d == 0) fail(path, "empty point set");
    if (n > (1ull << 40) || d > (1ull << 24) || n * d > (1ull << 34))
        fail(path, "implausible dimensions");
    u = PointSet(n, d);
    read_bin(is, u.data.data(), u.data.size() * 8, path, "matrix");
    for (std::size_t i = 0; i < u.data.size(); ++i)
        if (!std::isfinite(u.data[i]))
            fail(path, "non-finite value at matrix offset " + std::to_string(i));
    if (weighted) {
        weights->resize(n);
        read_bin(is, weights->data(), n * 8, path, "weights");
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite((*weights)[i]) || (*weights)[i] < 0.0)
                fail(path, "bad weight at row " + std::to_string(i));
    }
}

// ---- csv ----

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t at = 0;
    while (true) {
        const std::size_t next = line.find(',', at);
        std::string tok = line.substr(at, next == std::string::npos ? std::string::npos
                                                                    : next - at);
        // trim ascii whitespace
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front())))
            tok.erase(tok.begin());
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back())))
            tok.pop_back();
        out.push_back(std::move(tok));
        if (next == std::string::npos) break;
        at = next + 1;
    }
    return out;
}

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && !tok.empty();
}

struct CsvData {
    std::vector<std::vector<double>> rows;
    bool had_header = false;
    bool header_has_weight = false;
};

CsvData load_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(path, "cannot open");
    CsvData csv;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto toks = split_csv_line(line);
        std::vector<double> vals(toks.size());
        bool numeric = true;
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (!parse_double(toks[i], vals[i])) {
                numeric = false;
                break;
            }
        if (!numeric) {
            if (lineno == 1 || (csv.rows.empty() && !csv.had_header)) {
                csv.had_header = true;
                csv.header_has_weight = !toks.empty() && toks.back() == "weight";
                width = toks.size();
                continue;
            }
            fail(path, "line " + std::to_string(lineno) + ": non-numeric value");
        }
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (!std::isfinite(vals[i]))
                fail(path, "line " + std::to_string(lineno) + ": non-finite value");
        if (width == 0) width = toks.size();
        if (toks.size() != width)
            fail(path, "line " + std::to_string(lineno) + ": expected " +
                           std::to_string(width) + " columns, got " +
                           std::to_string(toks.size()));
        csv.rows.push_back(std::move(vals));
    }
    if (csv.rows.empty()) fail(path, "no data rows");
    return csv;
}

void write_csv_value(std::ostream& os, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
    os.write(buf, res.ptr - buf);
}

}  // namespace

PointSet load_points(const std::string& path) {
    PointSet u;
    if (is_csv(path)) {
        const CsvData csv = load_csv(path);
        u = PointSet(csv.rows.size(), csv.rows.front().size());
        for (std::size_t i = 0; i < u.n; ++i)
            for (std::size_t j = 0; j < u.d; ++j) u.row(i)[j] = csv.rows[i][j];
    } else {
        load_binary(path, false, u, nullptr);
    }
    return u;
}

void save_points(const PointSet& u, const std::string& path) {
    require(u.n >= 1 && u.d >= 1 && u.data.size() == u.n * u.d, "save_points: bad point set");
    if (!is_csv(path)) {
        save_binary(u, nullptr, path);
        return;
    }
    std::ofstream os(path);
    if (!os) fail(path, "cannot open for writing");
    for (std::size_t j = 0; j < u.d; ++j) os << (j ? ",x" : "x") << j;
    os << '\n';
    for (std::size_t i = 0; i < u.n; ++i) {
        for (std::size_t j = 0; j < u.d; ++j) {
            if (j) os << ',';
            write_csv_value(os, u.row(i)[j]);
        }
        os << '\n';
    }
    if (!os) fail(path, "write failed");
}

WeightedPointSet load_coreset(const std::string& path) {
    WeightedPointSet ws;
    if (is_csv(path)) {
        const CsvData csv = load_csv(path);
        const std::size_t cols = csv.rows.front().size();
        if (cols < 2) fail(path, "weighted csv needs at least one coordinate plus weight");
        // trailing column is the weight (named `weight` when a header is present)
        ws.points = PointSet(csv.rows.size(), cols - 1);
        ws.weights.resize(csv.rows.size());
        for (std::size_t i = 0; i < ws.points.n; ++i) {
            for (std::size_t j = 0; j + 1 < cols; ++j) ws.points.row(i)[j] = csv.rows[i][j];
            ws.weights[i] = csv.rows[i][cols - 1];
            if (ws.weights[i] < 0.0)
                fail(path, "negative weight at data row " + std::to_string(i));
        }
    } else {
        load_binary(path, true, ws.points, &ws.weights);
    }
    return ws;
}

void save_coreset(const WeightedPointSet& ws, const std::string& path) {
    require(ws.points.n >= 1 && ws.weights.size() == ws.points.n, "save_coreset: bad coreset");
    if (!is_csv(path)) {
        save_binary(ws.points, &ws.weights, path);
        return;
    }
    std::ofstream os(path);
    if (!os) fail(path, "cannot open for writing");
    for (std::size_t j = 0; j < ws.points.d; ++j) os << (j ? ",x" : "x") << j;
    os << ",weight\n";
    for (std::size_t i = 0; i < ws.points.n; ++i) {
        for (std::size_t j = 0; j < ws.points.d; ++j) {
            if (j) os << ',';
            write_csv_value(os, ws.points.row(i)[j]);
        }
        os << ',';
        write_csv_value(os, ws.weights[i]);
        os << '\n';
    }
    if (!os) fail(path, "write failed");
}

void save_text(const std::string& text, const std::string& path) {
    std::ofstream os(path);
    if (!os) fail(path, "cannot open for writing");
    os << text;
    if (!os) fail(path, "write failed");
}

}  // namespace coreset
