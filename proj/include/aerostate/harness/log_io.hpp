#pragma once

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/flight_log.hpp"

namespace aerostate::harness {

inline constexpr int kLogVersion = 1;

using nlohmann::json;

namespace detail {

inline json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

inline json record_to_json(const LogRecord& record) {
  json j;
  j["v"] = kLogVersion;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, ImuRecord>) {
          j["type"] = "imu";
          j["t"] = r.t;
          j["accel"] = vec3(r.accel_body);
          j["attitude"] = json::array({r.attitude.roll, r.attitude.pitch, r.attitude.yaw});
        } else if constexpr (std::is_same_v<R, RangeRecord>) {
          j["type"] = "range";
          j["t"] = r.t;
          j["r"] = r.range;
        } else if constexpr (std::is_same_v<R, FrameRecord>) {
          j["type"] = "frame";
          j["t"] = r.t;
          j["height"] = r.frame.height;
          j["delta"] = json::array({r.delta.dx, r.delta.dy, r.delta.dtheta});
          json obs = json::array();
          for (const auto& o : r.frame.observations) {
            obs.push_back(json::array({o.offset.x(), o.offset.y(), to_hex(o.descriptor)}));
          }
          j["obs"] = std::move(obs);
        } else {
          j["type"] = "truth";
          j["t"] = r.t;
          j["pose"] = json::array({r.pose.x, r.pose.y, r.pose.theta});
          j["height"] = r.height;
        }
      },
      record);
  return j;
}

inline double number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

template <std::size_t N>
std::array<double, N> numbers(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != N) {
    throw std::invalid_argument(std::string("field '") + key + "' must be an array of " + std::to_string(N));
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number()) throw std::invalid_argument(std::string("field '") + key + "' must hold numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

inline LogRecord record_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const double t = number(j, "t");
  if (type == "imu") {
    const auto a = numbers<3>(j, "accel");
    const auto att = numbers<3>(j, "attitude");
    return ImuRecord{t, {a[0], a[1], a[2]}, {att[0], att[1], att[2]}};
  }
  if (type == "range") return RangeRecord{t, number(j, "r")};
  if (type == "frame") {
    FrameRecord r;
    r.t = t;
    r.frame.timestamp = t;
    r.frame.height = number(j, "height");
    const auto d = numbers<3>(j, "delta");
    r.delta = {d[0], d[1], d[2]};
    const json& obs = j.at("obs");
    if (!obs.is_array()) throw std::invalid_argument("field 'obs' must be an array");
    r.frame.observations.reserve(obs.size());
    for (const auto& o : obs) {
      if (!o.is_array() || o.size() != 3 || !o[0].is_number() || !o[1].is_number() || !o[2].is_string()) {
        throw std::invalid_argument("observations must be [x, y, \"descriptor hex\"]");
      }
      r.frame.observations.push_back(
          {{o[0].get<double>(), o[1].get<double>()}, descriptor_from_hex(o[2].get<std::string>())});
    }
    return r;
  }
  if (type == "truth") {
    const auto p = numbers<3>(j, "pose");
    return TruthRecord{t, {p[0], p[1], p[2]}, number(j, "height")};
  }
  throw std::invalid_argument("unknown record type '" + type + "'");
}

}  // namespace detail

/// Serializes one record per line. Doubles are written with round-trip
/// precision, so reading the output back reproduces the log exactly.
inline void write_log(std::ostream& out, const FlightLog& log) {
  for (const auto& r : log.records) out << detail::record_to_json(r).dump() << '\n';
  if (!out) throw std::runtime_error("write_log: stream error");
}

inline void write_log(const std::string& path, const FlightLog& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_log: cannot open " + path);
  write_log(out, log);
}

/// Blank lines are skipped. Errors report the 1-based line number.
inline FlightLog read_log(std::istream& in) {
  FlightLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw MalformedLog(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedLog(line_no, "record must be a JSON object");
    if (!j.contains("v") || !j["v"].is_number_integer()) throw MalformedLog(line_no, "missing schema version 'v'");
    if (j["v"].get<long long>() != kLogVersion) {
      throw VersionMismatch(line_no, "unsupported schema version " + j["v"].dump());
    }
    try {
      log.records.push_back(detail::record_from_json(j));
    } catch (const json::exception& e) {
      throw MalformedLog(line_no, e.what());
    } catch (const std::invalid_argument& e) {
      throw MalformedLog(line_no, e.what());
    }
  }
  return log;
}

inline FlightLog read_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("read_log: cannot open " + path);
  return read_log(in);
}

}  // namespace aerostate::harness
