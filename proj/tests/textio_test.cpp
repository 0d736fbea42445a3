#include "botreg/textio.hpp"

#include <cstdio>
#include <filesystem>

#include "botreg/errors.hpp"
#include "botreg/timeparse.hpp"
#include "doctest.h"

using namespace botreg;

TEST_CASE("format_double round-trips") {
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(0.1) == "0.1");
    CHECK(parse_double(format_double(1.0 / 3.0), "t") == 1.0 / 3.0);
    CHECK_THROWS_AS(format_double(std::numeric_limits<double>::infinity()),
                    ValueError);
}

TEST_CASE("format_fixed2 rounds half up") {
    CHECK(format_fixed2(4.845) == "4.85");
    CHECK(format_fixed2(4.844) == "4.84");
    CHECK(format_fixed2(6.125) == "6.13");
    CHECK(format_fixed2(2.0) == "2.00");
    CHECK(format_fixed2(0.0) == "0.00");
    CHECK(format_fixed2(9.995) == "10.00");
    CHECK(format_fixed2(99.999) == "100.00");
    CHECK(format_fixed2(0.004999) == "0.00");
    CHECK(format_fixed2(0.005) == "0.01");
    CHECK(format_fixed2(-4.845) == "-4.85");
    CHECK(format_fixed2(-0.001) == "0.00");
}

TEST_CASE("strict numeric parsing") {
    CHECK(parse_double("3.25", "t") == 3.25);
    CHECK(parse_double("-0.5", "t") == -0.5);
    CHECK(parse_double("1e2", "t") == 100.0);
    CHECK_THROWS_AS(parse_double("", "t"), ParseError);
    CHECK_THROWS_AS(parse_double(" 1", "t"), ParseError);
    CHECK_THROWS_AS(parse_double("1 ", "t"), ParseError);
    CHECK_THROWS_AS(parse_double("1.5x", "t"), ParseError);
    CHECK_THROWS_AS(parse_double("inf", "t"), ParseError);
    CHECK_THROWS_AS(parse_double("nan", "t"), ParseError);

    CHECK(parse_int("42", "t") == 42);
    CHECK(parse_int("-3", "t") == -3);
    CHECK_THROWS_AS(parse_int("3.5", "t"), ParseError);
    CHECK_THROWS_AS(parse_int("", "t"), ParseError);

    CHECK(parse_bool("true", "t"));
    CHECK_FALSE(parse_bool("false", "t"));
    CHECK_THROWS_AS(parse_bool("True", "t"), ParseError);
    CHECK_THROWS_AS(parse_bool("1", "t"), ParseError);
}

TEST_CASE("csv line splitting") {
    const auto f = split_csv_line("a,b,,d");
    REQUIRE(f.size() == 4);
    CHECK(f[0] == "a");
    CHECK(f[1] == "b");
    CHECK(f[2] == "");
    CHECK(f[3] == "d");

    const auto crlf = split_csv_line("x,y\r");
    REQUIRE(crlf.size() == 2);
    CHECK(crlf[1] == "y");

    CHECK(split_csv_line("").size() == 1);
}

TEST_CASE("split_lines drops only the trailing empty piece") {
    const auto lines = split_lines("a\nb\n");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "a");
    CHECK(lines[1] == "b");
    CHECK(split_lines("a\n\nb").size() == 3);
    CHECK(split_lines("").empty());
}

TEST_CASE("atomic write then read round-trips") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "botreg_textio_rt.txt")
            .string();
    write_file_atomic(path, "hello\nworld\n");
    CHECK(read_file(path) == "hello\nworld\n");
    // Overwrite goes through the same temp+rename path.
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file(path), IoError);
}

TEST_CASE("utc timestamp parsing") {
    CHECK(parse_utc_timestamp("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_utc_timestamp("1970-01-02T00:00:01Z") == 86401);
    CHECK(parse_utc_timestamp("2020-02-29T12:00:00Z") ==
          parse_utc_timestamp("2020-02-28T12:00:00Z") + 86400);
    CHECK(parse_utc_timestamp("2024-01-15T06:30:15+00:00") ==
          parse_utc_timestamp("2024-01-15T06:30:15Z"));
    CHECK_THROWS_AS(parse_utc_timestamp("2021-13-01T00:00:00Z"), RangeError);
    CHECK_THROWS_AS(parse_utc_timestamp("2021-02-29T00:00:00Z"), RangeError);
    CHECK_THROWS_AS(parse_utc_timestamp("2021-01-01T24:00:00Z"), RangeError);
    CHECK_THROWS_AS(parse_utc_timestamp("2021-01-01 00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_utc_timestamp("2021-01-01T00:00:00"), ParseError);
    CHECK_THROWS_AS(parse_utc_timestamp("2021-01-01T00:00:00+01:00"),
                    ParseError);
}

TEST_CASE("day arithmetic floors toward minus infinity") {
    CHECK(days_between(0, 86400) == 1);
    CHECK(days_between(0, 86399) == 0);
    CHECK(days_between(86400, 0) == -1);
    CHECK(days_between(100, 50) == -1);
    CHECK(days_from_civil(1970, 1, 1) == 0);
    CHECK(days_from_civil(2000, 3, 1) == 11017);
}
