#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "aerostate/core/descriptor.hpp"
#include "aerostate/core/errors.hpp"
#include "aerostate/mcl/feature_map.hpp"

namespace aerostate::harness {

/// {"bounds":[w,h], "origin":[x0,y0], "features":[{"id","x","y","descriptor"}]}
inline nlohmann::json map_to_json(const mcl::FeatureMap& map) {
  nlohmann::json j;
  const auto& b = map.bounds();
  j["bounds"] = {b.width, b.height};
  j["origin"] = {b.origin_x, b.origin_y};
  auto features = nlohmann::json::array();
  for (const auto& f : map.features()) {
    features.push_back(
        {{"id", f.id}, {"x", f.position.x()}, {"y", f.position.y()}, {"descriptor", to_hex(f.descriptor)}});
  }
  j["features"] = std::move(features);
  return j;
}

inline mcl::FeatureMap map_from_json(const nlohmann::json& j) {
  try {
    mcl::Bounds b;
    const auto& bounds = j.at("bounds");
    if (!bounds.is_array() || bounds.size() != 2) throw MalformedInput("map: 'bounds' must be [width, height]");
    b.width = bounds[0].get<double>();
    b.height = bounds[1].get<double>();
    if (j.contains("origin")) {
      const auto& origin = j["origin"];
      if (!origin.is_array() || origin.size() != 2) throw MalformedInput("map: 'origin' must be [x, y]");
      b.origin_x = origin[0].get<double>();
      b.origin_y = origin[1].get<double>();
    }
    std::vector<mcl::MapFeature> features;
    for (const auto& f : j.at("features")) {
      mcl::MapFeature m;
      m.id = f.at("id").get<std::uint32_t>();
      m.position = {f.at("x").get<double>(), f.at("y").get<double>()};
      m.descriptor = descriptor_from_hex(f.at("descriptor").get<std::string>());
      features.push_back(m);
    }
    return mcl::FeatureMap(b, std::move(features));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("map: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw MalformedInput(std::string("map: ") + e.what());
  }
}

inline void write_map(const std::string& path, const mcl::FeatureMap& map) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_map: cannot open " + path);
  out << map_to_json(map).dump() << '\n';
}

inline mcl::FeatureMap read_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("read_map: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("map: invalid JSON: ") + e.what());
  }
  return map_from_json(j);
}

}  // namespace aerostate::harness
