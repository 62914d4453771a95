#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iorsp/model.hpp"
#include "iorsp/rng.hpp"

namespace iorsp {

// Inclusive integer range for a uniform draw.
struct MinuteRange {
  Duration lo = 0;
  Duration hi = 0;
};

struct StageSpec {
  MinuteRange duration;
  MinuteRange moving;
  MinuteRange cleaning;
};

struct EquipmentNeed {
  std::string type;
  double probability = 1.0;
};

// One surgery type. Chains are bed -> OR -> optional recovery -> same bed.
struct SurgeryType {
  std::string name;
  double weight = 1.0;
  StageSpec pre_op;
  StageSpec operation;
  double recovery_probability = 0.0;
  StageSpec recovery;
  StageSpec post_op;
  std::vector<EquipmentNeed> equipment;
};

struct EquipmentPool {
  std::string type;
  int units = 1;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int surgeries = 30;
  int horizon_days = 14;
  double surgeon_presence = 0.70;
  double saturday_or = 0.35;
  double jitter = 0.15;
  Duration blocking_limit = kDefaultBlockingLimit;
  int beds = 8;
  int operating_rooms = 3;
  int recovery_rooms = 2;
  int surgeons = 6;
  std::vector<EquipmentPool> equipment;
  std::vector<SurgeryType> catalog;
};

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a generator config document; absent fields keep their defaults.
GeneratorConfig load_generator_config(std::string_view document);

// Small catalog for demos and tests. Its numbers are illustrative only.
GeneratorConfig default_generator_config();

// Daily windows used by the generator (minutes after midnight).
inline constexpr Duration kDayOpen = 7 * 60;
inline constexpr Duration kDayClose = 22 * 60;
inline constexpr Duration kSaturdayClose = 13 * 60;

// Day index (0-based) to weekday, 0 = Monday ... 6 = Sunday.
inline int weekday(int day) { return day % 7; }

Instance generate_instance(const GeneratorConfig& cfg);

// One surgery drawn from the catalog against the resources of inst.
Surgery generate_surgery(const GeneratorConfig& cfg, const Instance& inst, Rng& rng, std::string id);

}  // namespace iorsp
