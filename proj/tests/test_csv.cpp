#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "imexdde/csv.hpp"
#include "imexdde/error.hpp"

using namespace imexdde;

TEST_CASE("tables round-trip bitwise through text") {
  CsvTable t;
  t.metadata = {"imexdde test", "method=bdf2"};
  t.header = {"h", "e_0", "e_1"};
  t.rows = {{0.1, std::numbers::pi, -1e-300},
            {0.05, 1.0 / 3.0, std::numeric_limits<double>::max()},
            {0.005, 5e-324, -0.0}};
  t.footer = {"rate=2.0000499999999999 norm=l2"};
  const std::string path = "csv_roundtrip_test.csv";
  write_csv(path, t);
  const CsvTable back = read_csv(path);
  std::remove(path.c_str());
  CHECK(back.metadata == t.metadata);
  CHECK(back.header == t.header);
  CHECK(back.footer == t.footer);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    REQUIRE(back.rows[i].size() == t.rows[i].size());
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
      CHECK(back.rows[i][j] == t.rows[i][j]);
      CHECK(std::signbit(back.rows[i][j]) == std::signbit(t.rows[i][j]));
    }
  }
}

TEST_CASE("format and parse details") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  const auto t = parse_csv("# a\nx,y\n1,2\n3,4\n");
  CHECK(t.metadata.size() == 1);
  CHECK(t.rows.size() == 2);
  CHECK(t.rows[1][1] == 4.0);
  bool threw = false;
  try {
    (void)parse_csv("x\nabc\n");
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::io;
  }
  CHECK(threw);
}
