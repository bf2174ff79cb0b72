#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "atmscore/csv.hpp"
#include "atmscore/errors.hpp"

using namespace atmscore;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "atmscore_csv_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("csv round-trips quoted fields") {
    std::vector<std::string> header = {"name", "note"};
    std::vector<std::vector<std::string>> rows = {
        {"plain", "value"},
        {"comma, inside", "quote \" inside"},
        {"multi\nline", ""},
    };
    fs::path path = temp_file("roundtrip.csv");
    write_csv(path, header, rows);
    CsvTable table = read_csv(path);
    CHECK(table.header == header);
    CHECK(table.rows == rows);
}

TEST_CASE("csv column lookup") {
    fs::path path = temp_file("columns.csv");
    write_csv(path, {"a", "b", "c"}, {{"1", "2", "3"}});
    CsvTable table = read_csv(path);
    CHECK(table.column("a") == 0);
    CHECK(table.column("c") == 2);
    CHECK(table.column("missing") == -1);
}

TEST_CASE("csv rejects an empty file") {
    fs::path path = temp_file("empty.csv");
    std::ofstream(path).close();
    CHECK_THROWS_AS(read_csv(path), SchemaError);
}

TEST_CASE("csv missing file is an i/o error") {
    CHECK_THROWS_AS(read_csv(temp_file("does_not_exist.csv")), IoError);
}

TEST_CASE("csv_escape quotes only when needed") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("numeric formatting") {
    CHECK(format_fixed(1.5, 6) == "1.500000");
    CHECK(format_fixed(-0.1234567, 6) == "-0.123457");
    CHECK(format_general(42.0) == "42");
    CHECK(format_general(0.35) == "0.35");

    bool ok = false;
    CHECK(parse_double("3.25", ok) == doctest::Approx(3.25));
    CHECK(ok);
    parse_double("not-a-number", ok);
    CHECK_FALSE(ok);
    parse_double("", ok);
    CHECK_FALSE(ok);
    parse_double("1.5x", ok);
    CHECK_FALSE(ok);
}

TEST_CASE("parsed doubles survive fixed formatting round trips") {
    for (double v : {0.0, 1.0, 0.123456, 98765.4321, -17.000001}) {
        bool ok = false;
        double back = parse_double(format_fixed(v, 6), ok);
        CHECK(ok);
        CHECK(back == doctest::Approx(v).epsilon(1e-9));
    }
}
