#include "cml/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cml/errors.hpp"

namespace cml {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_num(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  is >> out;
  if (!is || !is.eof()) {
    // accept things like 1e5 for integer fields
    double d = 0;
    std::istringstream js(v);
    js >> d;
    if (!js || !js.eof() || d != static_cast<double>(static_cast<T>(d)))
      throw Error(ErrorKind::Config, "bad value for " + key + ": '" + v + "'");
    return static_cast<T>(d);
  }
  return out;
}

}  // namespace

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> RunConfig::items() const {
  return {{"command", command},
          {"x", fmt17(x)},
          {"grid", std::to_string(grid)},
          {"f", f},
          {"mode", mode},
          {"theta", fmt17(theta)},
          {"afe_T", fmt17(afe_T)},
          {"bound", std::to_string(bound)},
          {"k", k},
          {"tmax", std::to_string(tmax)},
          {"a", std::to_string(a)},
          {"b", std::to_string(b)},
          {"trials", std::to_string(trials)},
          {"q", q},
          {"c", c},
          {"m", fmt17(m)},
          {"level", level},
          {"only", only},
          {"workers", std::to_string(workers)},
          {"cache_dir", cache_dir},
          {"seed", std::to_string(seed)},
          {"csv", csv}};
}

void RunConfig::set(const std::string& key, const std::string& v) {
  static const std::map<std::string, std::function<void(RunConfig&, const std::string&)>> setters = {
      {"command", [](RunConfig& r, const std::string& s) { r.command = s; }},
      {"x", [](RunConfig& r, const std::string& s) { r.x = parse_num<double>("x", s); }},
      {"grid", [](RunConfig& r, const std::string& s) { r.grid = parse_num<int>("grid", s); }},
      {"f", [](RunConfig& r, const std::string& s) { r.f = s; }},
      {"mode", [](RunConfig& r, const std::string& s) { r.mode = s; }},
      {"theta", [](RunConfig& r, const std::string& s) { r.theta = parse_num<double>("theta", s); }},
      {"afe_T", [](RunConfig& r, const std::string& s) { r.afe_T = parse_num<double>("afe_T", s); }},
      {"bound", [](RunConfig& r, const std::string& s) { r.bound = parse_num<unsigned long long>("bound", s); }},
      {"k", [](RunConfig& r, const std::string& s) { r.k = s; }},
      {"tmax", [](RunConfig& r, const std::string& s) { r.tmax = parse_num<long long>("tmax", s); }},
      {"a", [](RunConfig& r, const std::string& s) { r.a = parse_num<long long>("a", s); }},
      {"b", [](RunConfig& r, const std::string& s) { r.b = parse_num<long long>("b", s); }},
      {"trials", [](RunConfig& r, const std::string& s) { r.trials = parse_num<int>("trials", s); }},
      {"q", [](RunConfig& r, const std::string& s) { r.q = s; }},
      {"c", [](RunConfig& r, const std::string& s) { r.c = s; }},
      {"m", [](RunConfig& r, const std::string& s) { r.m = parse_num<double>("m", s); }},
      {"level", [](RunConfig& r, const std::string& s) { r.level = s; }},
      {"only", [](RunConfig& r, const std::string& s) { r.only = s; }},
      {"workers", [](RunConfig& r, const std::string& s) { r.workers = parse_num<int>("workers", s); }},
      {"cache_dir", [](RunConfig& r, const std::string& s) { r.cache_dir = s; }},
      {"seed", [](RunConfig& r, const std::string& s) { r.seed = parse_num<unsigned long long>("seed", s); }},
      {"csv", [](RunConfig& r, const std::string& s) { r.csv = s; }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
  it->second(*this, v);
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : items()) out += k + " = " + v + "\n";
  return out;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig r;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Config, "expected key = value, got '" + line + "'");
    r.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return r;
}

void CsvTable::embed(const RunConfig& cfg) {
  comments_.push_back("cml " + std::string(kVersion));
  for (const auto& [k, v] : cfg.items()) comments_.push_back("config " + k + " = " + v);
}

void CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw Error(ErrorKind::Config, "csv row width mismatch");
  rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& os) const {
  for (const auto& c : comments_) os << "# " << c << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
}

void CsvTable::save(const std::string& path, std::ostream& fallback) const {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Config, "cannot open " + path + " for writing");
  write(os);
}

CsvData read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Config, "cannot read " + path);
  CsvData d;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      d.comments.push_back(trim(line.substr(1)));
    } else if (d.columns.empty()) {
      d.columns = split(line);
    } else {
      d.rows.push_back(split(line));
    }
  }
  return d;
}

}  // namespace cml
