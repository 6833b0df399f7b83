#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace pmc::testing {

inline std::filesystem::path source_dir() { return PMC_SOURCE_DIR; }
inline std::filesystem::path fixtures() { return source_dir() / "tests" / "fixtures" / "policies"; }
inline std::filesystem::path default_schema() { return source_dir() / "data" / "default_schema.json"; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << content;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pmc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Table 7 as printed: one column per year 2008..2024, rows P1..P10, PMC, G.
struct GoldenColumn {
  int year;
  std::array<const char*, 10> main;
  const char* pmc;
  const char* g;
};

inline const std::vector<GoldenColumn>& table7() {
  static const std::vector<GoldenColumn> columns{
      {2008, {"0.33", "1.00", "0.20", "0.75", "0.20", "0.60", "0.40", "0.25", "0.60", "1.00"}, "5.33", "4.67"},
      {2009, {"0.50", "1.00", "0.40", "0.75", "0.40", "0.40", "0.40", "0.50", "0.80", "1.00"}, "6.15", "3.85"},
      {2010, {"0.17", "1.00", "0.20", "1.00", "0.00", "0.60", "0.20", "0.50", "0.80", "1.00"}, "5.47", "4.53"},
      {2011, {"0.17", "0.67", "0.20", "0.75", "0.20", "0.40", "0.40", "0.50", "0.60", "1.00"}, "4.88", "5.12"},
      {2012, {"0.33", "0.67", "0.20", "0.75", "0.20", "0.40", "0.40", "0.25", "0.60", "1.00"}, "4.80", "5.20"},
      {2013, {"0.33", "1.00", "0.20", "0.75", "0.20", "0.40", "0.40", "0.25", "0.60", "1.00"}, "5.13", "4.87"},
      {2014, {"0.50", "1.00", "0.60", "1.00", "0.20", "0.40", "0.40", "0.25", "0.80", "1.00"}, "6.15", "3.85"},
      {2015, {"0.67", "0.67", "0.60", "1.00", "0.60", "0.80", "0.60", "0.75", "0.80", "1.00"}, "7.48", "2.52"},
      {2016, {"0.67", "1.00", "0.60", "0.75", "0.60", "0.80", "0.80", "0.75", "0.80", "1.00"}, "7.77", "2.23"},
      {2017, {"0.67", "1.00", "0.00", "0.75", "0.00", "1.00", "1.00", "0.75", "0.80", "1.00"}, "6.97", "3.03"},
      {2018, {"0.67", "0.67", "0.20", "0.75", "0.40", "1.00", "0.40", "0.50", "0.80", "1.00"}, "6.38", "3.62"},
      {2019, {"0.33", "0.67", "0.40", "1.00", "0.60", "0.60", "0.60", "0.50", "0.80", "1.00"}, "6.50", "3.50"},
      {2020, {"0.50", "1.00", "0.40", "0.75", "0.60", "0.60", "0.60", "0.50", "0.80", "1.00"}, "6.75", "3.25"},
      {2021, {"0.83", "1.00", "0.60", "1.00", "0.40", "0.80", "0.40", "0.75", "0.80", "1.00"}, "7.58", "2.42"},
      {2022, {"0.67", "1.00", "0.60", "1.00", "0.40", "0.60", "0.80", "0.50", "0.80", "1.00"}, "7.37", "2.63"},
      {2023, {"0.67", "0.67", "0.60", "1.00", "0.40", "0.60", "0.20", "0.75", "0.80", "1.00"}, "6.68", "3.32"},
      {2024, {"0.67", "0.67", "0.60", "1.00", "0.40", "0.80", "0.80", "0.50", "0.80", "1.00"}, "7.23", "2.77"},
  };
  return columns;
}

}  // namespace pmc::testing
