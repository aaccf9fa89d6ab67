#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <unistd.h>

#include "coreset/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coreset;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path p;
    TempDir() {
        p = fs::temp_directory_path() /
            ("coreset_io_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
    }
    ~TempDir() { fs::remove_all(p); }
    std::string file(const std::string& name) const { return (p / name).string(); }
};

}  // namespace

TEST_CASE("binary point round-trip is bitwise exact") {
    TempDir tmp;
    const auto u = oracle::random_points(123, 7, 1001, 100.0);
    save_points(u, tmp.file("pts.bin"));
    const auto back = load_points(tmp.file("pts.bin"));
    CHECK(back.n == u.n);
    CHECK(back.d == u.d);
    CHECK(back.data == u.data);
}

TEST_CASE("binary weighted round-trip is bitwise exact") {
    TempDir tmp;
    WeightedPointSet w;
    w.points = oracle::random_points(50, 3, 1002);
    w.weights.assign(50, 0.0);
    Rng rng(1003);
    for (auto& x : w.weights) x = std::exp(rng.next_gaussian());
    save_coreset(w, tmp.file("cs.bin"));
    const auto back = load_coreset(tmp.file("cs.bin"));
    CHECK(back.points.data == w.points.data);
    CHECK(back.weights == w.weights);
}

TEST_CASE("csv round-trip preserves doubles exactly") {
    TempDir tmp;
    const auto u = oracle::random_points(40, 4, 1004, 1e6);
    save_points(u, tmp.file("pts.csv"));
    const auto back = load_points(tmp.file("pts.csv"));
    CHECK(back.n == u.n);
    CHECK(back.d == u.d);
    CHECK(back.data == u.data);  // shortest-round-trip formatting

    WeightedPointSet w;
    w.points = u;
    w.weights.assign(40, 2.5);
    save_coreset(w, tmp.file("cs.csv"));
    const auto wb = load_coreset(tmp.file("cs.csv"));
    CHECK(wb.points.data == u.data);
    CHECK(wb.weights == w.weights);
}

TEST_CASE("csv parsing: headers, floats, and malformed rows") {
    TempDir tmp;
    {
        std::ofstream f(tmp.file("ok.csv"));
        f << "x0,x1\n1.5,2.5\n-3e-2,4\n";
    }
    const auto u = load_points(tmp.file("ok.csv"));
    CHECK(u.n == 2);
    CHECK(u.d == 2);
    CHECK(u.data[0] == 1.5);
    CHECK(u.data[2] == -3e-2);

    {
        std::ofstream f(tmp.file("nohdr.csv"));
        f << "1,2,3\n4,5,6\n";
    }
    const auto v = load_points(tmp.file("nohdr.csv"));
    CHECK(v.n == 2);
    CHECK(v.d == 3);

    {
        std::ofstream f(tmp.file("ragged.csv"));
        f << "1,2\n3\n";
    }
    CHECK_THROWS_AS(load_points(tmp.file("ragged.csv")), std::invalid_argument);

    {
        std::ofstream f(tmp.file("junk.csv"));
        f << "1,2\n3,abc\n";
    }
    CHECK_THROWS_AS(load_points(tmp.file("junk.csv")), std::invalid_argument);

    {
        std::ofstream f(tmp.file("empty.csv"));
        f << "";
    }
    CHECK_THROWS_AS(load_points(tmp.file("empty.csv")), std::invalid_argument);
}

TEST_CASE("weighted csv: weight column and validation") {
    TempDir tmp;
    {
        std::ofstream f(tmp.file("w.csv"));
        f << "x0,x1,weight\n1,2,3\n4,5,0.5\n";
    }
    const auto w = load_coreset(tmp.file("w.csv"));
    CHECK(w.points.n == 2);
    CHECK(w.points.d == 2);
    CHECK(w.weights[0] == 3.0);
    CHECK(w.weights[1] == 0.5);

    {
        std::ofstream f(tmp.file("neg.csv"));
        f << "x0,weight\n1,-2\n";
    }
    CHECK_THROWS_AS(load_coreset(tmp.file("neg.csv")), std::invalid_argument);
}

TEST_CASE("binary format rejects corruption") {
    TempDir tmp;
    const auto u = oracle::random_points(10, 2, 1005);
    save_points(u, tmp.file("pts.bin"));

    // wrong magic
    {
        std::fstream f(tmp.file("pts.bin"),
                       std::ios::in | std::ios::out | std::ios::binary);
        f.write("XXXX", 4);
    }
    CHECK_THROWS_AS(load_points(tmp.file("pts.bin")), std::invalid_argument);

    // truncated payload
    save_points(u, tmp.file("t.bin"));
    fs::resize_file(tmp.file("t.bin"), fs::file_size(tmp.file("t.bin")) - 8);
    CHECK_THROWS_AS(load_points(tmp.file("t.bin")), std::invalid_argument);

    // weighted file loaded as plain points and vice versa
    WeightedPointSet w;
    w.points = u;
    w.weights.assign(10, 1.0);
    save_coreset(w, tmp.file("w.bin"));
    CHECK_THROWS_AS(load_points(tmp.file("w.bin")), std::invalid_argument);
    save_points(u, tmp.file("plain.bin"));
    CHECK_THROWS_AS(load_coreset(tmp.file("plain.bin")), std::invalid_argument);

    // non-finite payload is caught on load
    auto bad = u;
    bad.data[5] = std::numeric_limits<double>::quiet_NaN();
    save_points(bad, tmp.file("nan.bin"));
    CHECK_THROWS_AS(load_points(tmp.file("nan.bin")), std::invalid_argument);
}

TEST_CASE("missing files raise errors mentioning the path") {
    bool threw = false;
    try {
        load_points("/nonexistent/dir/file.bin");
    } catch (const std::invalid_argument& e) {
        threw = true;
        CHECK(std::string(e.what()).find("file.bin") != std::string::npos);
    }
    CHECK(threw);
}
