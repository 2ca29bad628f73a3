#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cml {

inline constexpr const char* kVersion = "0.3.0";

// Everything a run depends on. Round-trips through "key = value" text.
struct RunConfig {
  std::string command;
  // moments
  double x = 100000;
  int grid = 1;
  std::string f = "bump";
  std::string mode = "first";
  double theta = 0.1;
  double afe_T = 6.0;
  // constants
  unsigned long long bound = 1000000;
  // bias
  std::string k = "1,0";
  long long tmax = 1000000;
  // sieve-probe
  long long a = 500;
  long long b = 500;
  int trials = 20;
  // poisson
  std::string q = "1,0";
  std::string c = "1,0";
  double m = 400;
  // suite
  std::string level = "fast";
  std::string only;  // comma separated criterion ids
  int workers = 1;
  std::string cache_dir;
  unsigned long long seed = 1;
  std::string csv;

  std::vector<std::pair<std::string, std::string>> items() const;
  void set(const std::string& key, const std::string& value);  // throws Config on unknown keys
  std::string serialize() const;
  static RunConfig parse(const std::string& text);
};

std::string fmt17(double v);  // %.17g
std::string fmt(double v, int digits = 12);

// CSV with '#' comment lines ahead of the column header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void comment(const std::string& line) { comments_.push_back(line); }
  void embed(const RunConfig& cfg);
  void row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  void write(std::ostream& os) const;
  // Writes to `path`, or to `fallback` when path is empty.
  void save(const std::string& path, std::ostream& fallback) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

// Reads back a CsvTable file: comment lines, header, rows.
struct CsvData {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
CsvData read_csv(const std::string& path);

}  // namespace cml
