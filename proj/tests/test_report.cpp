#include <gtest/gtest.h>

#include <sstream>

#include "ptspec/report.hpp"

using namespace ptspec;
using namespace ptspec::report;

TEST(Report, FormatNumber) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1.9082645781707777), "1.90826457817");
  EXPECT_EQ(format_number(68.995653472031, 8), "68.995653");
  EXPECT_EQ(format_number(1e-12, 3), "1e-12");
}

TEST(Report, PiFraction) {
  EXPECT_EQ(pi_fraction(0.0, 28), "0");
  EXPECT_EQ(pi_fraction(pi / 2, 28), "pi/2");
  EXPECT_EQ(pi_fraction(pi, 28), "pi");
  EXPECT_EQ(pi_fraction(15 * pi / 14, 28), "15pi/14");
  EXPECT_EQ(pi_fraction(3 * pi / 2, 16), "3pi/2");
  EXPECT_EQ(pi_fraction(1.0, 28), std::nullopt);
  // Denominator beyond the limit is not reduced to a fraction.
  EXPECT_EQ(pi_fraction(pi / 29, 28), std::nullopt);
}

TEST(Report, ParseRange) {
  EXPECT_EQ(parse_range("0..3"), std::make_pair(0, 3));
  EXPECT_EQ(parse_range("5"), std::make_pair(5, 5));
  EXPECT_THROW(parse_range("3..1"), Error);
  EXPECT_THROW(parse_range("a..b"), Error);
  EXPECT_THROW(parse_range("1..2x"), Error);
}

TEST(Report, CsvAndJsonCarrySameDigits) {
  Table t;
  t.columns = {"n", "E", "method"};
  t.add({0L, 1.164770407964, std::string("shooting")});
  t.add({1L, 4.3637843676834, std::string("a,b")});
  std::ostringstream csv;
  t.write_csv(csv);
  EXPECT_EQ(csv.str(), "n,E,method\n0,1.16477040796,shooting\n1,4.36378436768,\"a,b\"\n");
  const auto j = t.to_json();
  EXPECT_EQ(j[0]["E"].dump(), "1.16477040796");
  EXPECT_EQ(j[1]["method"], "a,b");
  EXPECT_THROW(t.add({1L}), Error);
}
