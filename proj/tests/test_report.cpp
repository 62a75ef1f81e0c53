#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardylab/report.hpp"

using namespace hardylab::report;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}
}  // namespace

TEST(Report, NumberFormatting) {
  EXPECT_EQ(format_number(5.783185962946785), "5.78318596294678");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1e-12), "1e-12");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(NAN), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Report, CsvQuoting) {
  Table t({"name", "value"});
  t.add({std::string("a,b"), 1.5});
  t.add({std::string("say \"hi\""), 2LL});
  EXPECT_EQ(t.csv(), "name,value\n\"a,b\",1.5\n\"say \"\"hi\"\"\",2\n");
  EXPECT_THROW(t.add({1.0}), std::invalid_argument);
}

TEST(Report, ChecksAndJson) {
  Suite s("demo", 3);
  EXPECT_TRUE(s.near("close", 1.0, 1.0 + 1e-9, 1e-8));
  EXPECT_FALSE(s.near_rel("far", 1.0, 2.0, 0.1));
  EXPECT_FALSE(s.near("nan", NAN, 0.0, 1.0));
  EXPECT_TRUE(s.require("bound", 0.5, 0.5 < 1.0));
  EXPECT_FALSE(s.passed());
  auto j = s.json();
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["dimension"], 3);
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][1]["pass"], false);
  EXPECT_TRUE(j["rows"][3]["expected"].is_null());
}

TEST(Report, WritesDeterministicFiles) {
  auto dir = std::filesystem::temp_directory_path() / "hardylab_report_test";
  std::filesystem::remove_all(dir);
  auto make = [] {
    Suite s("x", 4);
    auto& t = s.table("rows", {"k", "v"});
    t.add({1LL, 1.0 / 3.0});
    s.near("one", 1.0, 1.0, 0.0);
    return s;
  };
  make().write(dir);
  const auto csv = slurp(dir / "x_rows.csv");
  const auto json = slurp(dir / "x.json");
  EXPECT_EQ(csv, "k,v\n1,0.333333333333333\n");
  EXPECT_EQ(slurp(dir / "x_checks.csv"), "name,value,expected,tolerance,pass\none,1,1,0,PASS\n");
  make().write(dir);
  EXPECT_EQ(slurp(dir / "x_rows.csv"), csv);
  EXPECT_EQ(slurp(dir / "x.json"), json);
  std::filesystem::remove_all(dir);
}
