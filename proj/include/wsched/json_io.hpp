#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wsched/instance.hpp"
#include "wsched/patterns.hpp"
#include "wsched/pipeline.hpp"
#include "wsched/stage1.hpp"
#include "wsched/stage2.hpp"

namespace wsched {

nlohmann::json patterns_to_json(const std::string& family,
                                int omega,
                                const std::vector<ShiftPattern>& patterns);
std::vector<ShiftPattern> patterns_from_json(const nlohmann::json& j, int* omega = nullptr);

nlohmann::json rules_to_json(const PatternRuleSet& rules);
PatternRuleSet rules_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Demand-only instance from a CSV of T integers (comma or newline separated).
Instance instance_from_csv(const std::string& text, int omega, Family family);

// Loads JSON or CSV depending on the file suffix.
Instance load_instance(const std::string& path);

nlohmann::json stage1_to_json(const Stage1Solution& sol);

nlohmann::json roster_to_json(const Roster& roster, const std::vector<ShiftSchedule>& schedules);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wsched
