#include "soc_cascade/attack.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "soc_cascade/rng.hpp"
#include "soc_cascade/topology.hpp"

namespace soc_cascade {

std::string_view to_string(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::kHighDegree: return "HDA";
    case AttackStrategy::kHighCloseness: return "HCA";
    case AttackStrategy::kHighImportance: return "HIA";
    case AttackStrategy::kRandom: return "RANDOM";
  }
  return "?";
}

AttackStrategy parse_attack_strategy(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "HDA") return AttackStrategy::kHighDegree;
  if (upper == "HCA") return AttackStrategy::kHighCloseness;
  if (upper == "HIA") return AttackStrategy::kHighImportance;
  if (upper == "RANDOM") return AttackStrategy::kRandom;
  throw std::invalid_argument("unknown attack strategy '" + std::string(text) + "'");
}

std::size_t AttackPlan::seed_count(std::size_t firms) const {
  std::size_t count = 0;
  if (const auto* frac = std::get_if<SeedFraction>(&size)) {
    if (!(frac->value > 0.0 && frac->value <= 1.0)) {
      throw std::invalid_argument("seed fraction must lie in (0, 1]");
    }
    // The small slack keeps products such as 0.05 * 500 from rounding up.
    count = static_cast<std::size_t>(std::ceil(frac->value * static_cast<double>(firms) - 1e-9));
  } else {
    count = std::get<SeedCount>(size).value;
    if (count == 0) throw std::invalid_argument("seed count must be positive");
  }
  if (count > firms) {
    throw std::invalid_argument("requested " + std::to_string(count) + " seeds but the network has " +
                                std::to_string(firms) + " firms");
  }
  return count;
}

namespace {

std::vector<FirmId> top_by(const std::vector<double>& score, std::size_t count) {
  std::vector<FirmId> ids(score.size());
  std::iota(ids.begin(), ids.end(), FirmId{0});
  const auto ranked_before = [&](FirmId a, FirmId b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count), ids.end(),
                    ranked_before);
  ids.resize(count);
  return ids;
}

}  // namespace

std::vector<FirmId> select_seeds(const SupplyNetwork& net, const AttackPlan& plan) {
  const std::size_t count = plan.seed_count(net.size());
  switch (plan.strategy) {
    case AttackStrategy::kHighDegree: {
      std::vector<double> degree(net.size());
      for (FirmId v = 0; v < net.size(); ++v) degree[v] = static_cast<double>(net.degree(v));
      return top_by(degree, count);
    }
    case AttackStrategy::kHighCloseness:
      return top_by(closeness(net), count);
    case AttackStrategy::kHighImportance:
      return top_by(net.log_capitals(), count);
    case AttackStrategy::kRandom: {
      std::vector<FirmId> ids(net.size());
      std::iota(ids.begin(), ids.end(), FirmId{0});
      Rng rng(plan.rng_seed);
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
        std::swap(ids[i], ids[j]);
      }
      ids.resize(count);
      return ids;
    }
  }
  throw std::logic_error("select_seeds: unhandled strategy");
}

}  // namespace soc_cascade
