#pragma once

#include <string>

#include <json.hpp>

#include "ren/datagen.hpp"
#include "ren/types.hpp"

// JSON mirrors of the core types. Finite floating-point values survive a
// dump/parse cycle bit-exactly (shortest round-trip rendering).

namespace nlohmann {

template <>
struct adl_serializer<ren::Matrix> {
  static void to_json(json& j, const ren::Matrix& m);
  static void from_json(const json& j, ren::Matrix& m);
};

template <>
struct adl_serializer<ren::Vector> {
  static void to_json(json& j, const ren::Vector& v);
  static void from_json(const json& j, ren::Vector& v);
};

}  // namespace nlohmann

namespace ren {

void to_json(nlohmann::json& j, const GroundTruth& t);
void from_json(const nlohmann::json& j, GroundTruth& t);

void to_json(nlohmann::json& j, const Dataset& d);
void from_json(const nlohmann::json& j, Dataset& d);

void to_json(nlohmann::json& j, const TrimmedSurrogates& s);
void from_json(const nlohmann::json& j, TrimmedSurrogates& s);

void to_json(nlohmann::json& j, const SolverConfig& c);
void from_json(const nlohmann::json& j, SolverConfig& c);

void to_json(nlohmann::json& j, const Solution& s);
void from_json(const nlohmann::json& j, Solution& s);

void to_json(nlohmann::json& j, const GeneratorSpec& g);
void from_json(const nlohmann::json& j, GeneratorSpec& g);

void save_dataset(const Dataset& data, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace ren
