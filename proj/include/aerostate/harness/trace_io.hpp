#pragma once

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "aerostate/core/errors.hpp"
#include "aerostate/flight_log.hpp"

namespace aerostate::harness {

inline constexpr const char* kTraceHeader = "timestamp,x,y,theta,n_landmarks,log_weight";

inline void write_trace(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << kTraceHeader << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : trace) {
    out << p.t << ',' << p.pose.x << ',' << p.pose.y << ',' << p.pose.theta << ',' << p.n_landmarks << ','
        << p.log_weight << '\n';
  }
}

inline void write_trace(const std::string& path, const std::vector<TracePoint>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace: cannot open " + path);
  write_trace(out, trace);
}

inline std::vector<TracePoint> read_trace(std::istream& in) {
  std::vector<TracePoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("timestamp", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() < 4) throw MalformedInput("trace line " + std::to_string(line_no) + ": expected at least 4 columns");
    try {
      TracePoint p;
      p.t = std::stod(cells[0]);
      p.pose = {std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3])};
      if (cells.size() > 4) p.n_landmarks = std::stoul(cells[4]);
      if (cells.size() > 5) p.log_weight = std::stod(cells[5]);
      out.push_back(p);
    } catch (const std::logic_error&) {
      throw MalformedInput("trace line " + std::to_string(line_no) + ": invalid number");
    }
  }
  return out;
}

inline std::vector<TracePoint> read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("read_trace: cannot open " + path);
  return read_trace(in);
}

}  // namespace aerostate::harness
