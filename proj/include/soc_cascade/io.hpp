#pragma once

// JSON forms of networks, model configs, attack plans and ingest reports.

#include <string>

#include <json.hpp>

#include "soc_cascade/attack.hpp"
#include "soc_cascade/graph.hpp"
#include "soc_cascade/ingest.hpp"
#include "soc_cascade/rc_idm.hpp"
#include "soc_cascade/rt_idm.hpp"

namespace soc_cascade {

using Json = nlohmann::ordered_json;

inline constexpr int kNetworkFormatVersion = 1;

/// {format_version, firms: [{name, capital, aliases}], edges: [[u, v], ...]}
Json network_to_json(const SupplyNetwork& net);
SupplyNetwork network_from_json(const Json& doc);

/// Throws std::runtime_error naming the path when it cannot be read or
/// written.
SupplyNetwork load_network(const std::string& path);
void save_network(const SupplyNetwork& net, const std::string& path);

Json rc_config_to_json(const RcConfig& cfg);
/// Missing fields keep their defaults; unknown fields are rejected.
RcConfig rc_config_from_json(const Json& doc);

Json rt_config_to_json(const RtConfig& cfg);
RtConfig rt_config_from_json(const Json& doc);

/// {strategy, p | n, rng_seed}
Json attack_plan_to_json(const AttackPlan& plan);
AttackPlan attack_plan_from_json(const Json& doc);

Json ingest_report_to_json(const IngestReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Two-space indent with a trailing newline.
std::string dump_json(const Json& doc);

}  // namespace soc_cascade
