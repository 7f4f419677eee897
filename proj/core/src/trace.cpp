#include "bregcd/trace.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "bregcd/errors.hpp"

namespace bregcd {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double SolverTrace::final_objective() const {
  if (records.empty()) return std::nan("");
  return records.back().objective;
}

double SolverTrace::initial_objective() const {
  if (records.empty()) return std::nan("");
  return records.front().objective;
}

void write_trace_csv(const SolverTrace& trace, const std::string& path, bool include_timing) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "epoch,iterations,objective,stationarity,elapsed_s,diverged\n";
  for (const auto& r : trace.records) {
    out << r.epoch << ',' << r.iterations << ',' << fmt17(r.objective) << ','
        << fmt17(r.stationarity) << ',' << fmt17(include_timing ? r.elapsed_seconds : 0.0) << ','
        << (r.diverged ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

// strtod handles the "nan"/"inf" spellings that stream extraction rejects.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s, const std::string& path) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw IoError("bad numeric field '" + s + "' in " + path);
  return v;
}

}  // namespace

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trace file: " + path);
  std::vector<TraceRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 6) throw IoError("bad trace row in " + path + ": " + line);
    TraceRecord r;
    r.epoch = static_cast<int>(parse_double(fields[0], path));
    r.iterations = static_cast<long>(parse_double(fields[1], path));
    r.objective = parse_double(fields[2], path);
    r.stationarity = parse_double(fields[3], path);
    r.elapsed_seconds = parse_double(fields[4], path);
    r.diverged = parse_double(fields[5], path) != 0.0;
    records.push_back(r);
  }
  return records;
}

}  // namespace bregcd
