#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soc_cascade/graph.hpp"

namespace soc_cascade {

/// HDA: degree; HCA: closeness; HIA: log registered capital; kRandom:
/// uniform baseline.
enum class AttackStrategy { kHighDegree, kHighCloseness, kHighImportance, kRandom };

std::string_view to_string(AttackStrategy s);
AttackStrategy parse_attack_strategy(std::string_view text);  // "HDA", "HCA", "HIA", "RANDOM"

struct SeedFraction {
  double value = 0.0;  // in (0, 1]
};
struct SeedCount {
  std::size_t value = 0;  // positive
};

struct AttackPlan {
  AttackStrategy strategy = AttackStrategy::kHighDegree;
  std::variant<SeedFraction, SeedCount> size = SeedFraction{0.01};
  std::uint64_t rng_seed = 0;

  /// ceil(p * n) for a fraction, n for a count. Throws
  /// std::invalid_argument when out of range for a network of `firms`.
  std::size_t seed_count(std::size_t firms) const;
};

/// Ranked seeds; ties go to the smaller FirmId. Seeds are chosen once
/// before the cascade starts.
std::vector<FirmId> select_seeds(const SupplyNetwork& net, const AttackPlan& plan);

}  // namespace soc_cascade
