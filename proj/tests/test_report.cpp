#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mrproj/errors.hpp"
#include "mrproj/report.hpp"

using namespace mrproj;

TEST_CASE("hash matches the published fnv-1a vectors") {
  CHECK_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  CHECK_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  CHECK_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  CHECK_EQ(hex16(0xcbf29ce484222325ULL), "cbf29ce484222325");
  CHECK_EQ(hex16(0x1ULL), "0000000000000001");
}

TEST_CASE("numeric strings round-trip doubles and keep integers plain") {
  CHECK_EQ(num_str(4.0), "4");
  CHECK_EQ(num_str(-2.5), "-2.5");
  const double v = 0.1;
  CHECK_EQ(std::stod(num_str(v)), v);
  const double tiny = 0x1.fffffffffffffp-1022;
  CHECK_EQ(std::stod(num_str(tiny)), tiny);
}

TEST_CASE("csv tables are arity-checked and newline-terminated") {
  CsvTable t;
  t.columns = {"p", "ratio"};
  t.add_row({"2", "1.000"});
  t.add_row({"4", "0.917"});
  CHECK_THROWS_AS(t.add_row({"only-one"}), structural_error);
  CHECK_EQ(t.str(), "p,ratio\n2,1.000\n4,0.917\n");
}

TEST_CASE("atomic writes land complete and leave no temp files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mrproj_report_test";
  fs::create_directories(dir);
  const std::string target = (dir / "table.csv").string();

  write_atomic(target, "alpha\n1\n");
  std::ifstream in(target);
  std::stringstream got;
  got << in.rdbuf();
  CHECK_EQ(got.str(), "alpha\n1\n");

  write_atomic(target, "alpha\n2\n");  // overwrite through rename
  std::ifstream in2(target);
  std::stringstream got2;
  got2 << in2.rdbuf();
  CHECK_EQ(got2.str(), "alpha\n2\n");

  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++entries;
    CHECK_EQ(e.path().filename().string(), "table.csv");
  }
  CHECK_EQ(entries, 1);
  fs::remove_all(dir);
}

TEST_CASE("plots are self-contained svg with labeled series") {
  const SvgSeries s{"ratio-p2", {{0.0, 1.0}, {1.0, 1.5}, {2.0, 0.5}}};
  const std::string svg = svg_plot("norm ratios", "scale cap", "ratio", {s});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("ratio-p2") != std::string::npos);
  CHECK(svg.find("norm ratios") != std::string::npos);
}
