#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "eitsim/csv.hpp"

using namespace eitsim;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("csvtest_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("doubles serialize with 9 significant digits", "[csv]") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.2) == "-2.2");
    CHECK(format_double(0.4) == "0.4");
    CHECK(format_double(11343.4567891) == "11343.4568");
    CHECK(format_double(1.23456789012e-7) == "1.23456789e-07");
    CHECK(format_double(3.5e16) == "3.5e+16");
    CHECK(format_double(-0.000123456789) == "-0.000123456789");
}

TEST_CASE("writer/reader round trip", "[csv]") {
    TempFile f("roundtrip.csv");
    CsvWriter w({"intensity_w_m2", "fwhm_hz", "model"});
    w.row({format_double(2.0), format_double(7232.0), "pumped"});
    w.row({format_double(11.88349), format_double(11343.4), "pumped"});
    CHECK(w.rows() == 2);
    w.write(f.path);

    const CsvTable t = read_csv(f.path);
    REQUIRE(t.header.size() == 3);
    CHECK(t.header[0] == "intensity_w_m2");
    CHECK(t.column("fwhm_hz") == 1);
    CHECK_THROWS_AS(t.column("no_such_column"), InvalidData);
    const auto intensity = t.numeric_column(0);
    REQUIRE(intensity.size() == 2);
    CHECK(intensity[1] == 11.88349);
    // The text column is not numeric.
    CHECK_THROWS_AS(t.numeric_column(2), InvalidData);
}

TEST_CASE("writer output is byte-stable", "[csv]") {
    CsvWriter a({"x_hz", "y_s"});
    a.row({"1", "2.5"});
    CsvWriter b({"x_hz", "y_s"});
    b.row({"1", "2.5"});
    CHECK(a.str() == b.str());
    CHECK(a.str() == "x_hz,y_s\n1,2.5\n");
    CHECK_THROWS_AS(a.row({"only-one-cell"}), InvalidInput);
}

TEST_CASE("reader diagnostics", "[csv]") {
    CHECK_THROWS_AS(read_csv("definitely_missing_file.csv"), InvalidData);

    TempFile empty("empty.csv");
    write_text(empty.path, "");
    CHECK_THROWS_AS(read_csv(empty.path), InvalidData);

    TempFile ragged("ragged.csv");
    write_text(ragged.path, "a_hz,b_hz\n1,2\n3\n");
    try {
        read_csv(ragged.path);
        FAIL("expected InvalidData");
    } catch (const InvalidData& e) {
        // The message points at the offending line.
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }

    TempFile crlf("crlf.csv");
    write_text(crlf.path, "a_hz,b_hz\r\n1,2\r\n\r\n3,4\r\n");
    const CsvTable t = read_csv(crlf.path); // CRLF and blank lines tolerated
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1][1] == "4");

    TempFile junk("junk.csv");
    write_text(junk.path, "a_hz\n1x\n");
    const CsvTable tj = read_csv(junk.path);
    CHECK_THROWS_AS(tj.numeric_column(0), InvalidData);
}
