#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsched/horizon.hpp"
#include "wsched/patterns.hpp"

namespace wsched {

struct Task {
	int id = 0;
	int window_lo = 1;  // earliest start TP
	int window_hi = 1;  // latest start TP
	int duration = 1;   // TPs
	std::vector<std::int64_t> resource;  // workers needed in each TP of the task

	bool operator==(const Task&) const = default;
};

enum class DaysOffPolicy {
	None,
	TwoConsecutive,  // one two-day block per worker, via dummy schedules
	TwoTotal,        // at least two days without work, not necessarily consecutive
};

enum class LoadKind { Shifts, Hours };

struct Stage2Policy {
	std::optional<int> max_shifts_b;
	int rest_gap_g = 0;               // min TPs between successive shifts of a worker
	std::optional<int> max_hours_H;   // max total TPs per worker
	DaysOffPolicy days_off = DaysOffPolicy::None;
	std::optional<int> max_workers_w;
	LoadKind load_constraint_kind = LoadKind::Shifts;
	bool symmetry_breaking = true;

	bool operator==(const Stage2Policy&) const = default;
};

enum class CostKind { Uniform, PerDuration, Matrix };

struct CostModel {
	CostKind kind = CostKind::PerDuration;
	std::map<int, double> per_duration;  // c(m) overrides; default c(m) = m
	std::vector<double> matrix;          // q*T row-major for kind == Matrix

	double cost(int pattern_index, int start_tp, const ShiftPattern& p, int T) const;
};

struct Instance {
	Horizon horizon;
	std::vector<Task> tasks;
	std::vector<std::pair<int, int>> precedence;  // (k, k') : k before k'
	std::optional<PeriodVector> fixed_demand;
	Family pattern_family = Family::FX29;
	std::optional<PatternRuleSet> custom_rules;   // for Family::Custom
	std::vector<ShiftPattern> explicit_patterns;  // overrides the family when nonempty
	CostModel costs;
	Stage2Policy policy;

	const Task* find_task(int id) const;
};

// All schema and invariant violations; empty means valid.
std::vector<std::string> validate(const Instance& inst);

// Pattern set the instance solves with.
std::vector<ShiftPattern> patterns_for(const Instance& inst);

// Demand induced by the given task starts plus any fixed demand.
// Throws std::invalid_argument when a start is missing or outside its window.
PeriodVector induced_demand(const Instance& inst, const std::map<int, int>& starts);

// Sum of all task resource requirements plus fixed demand, in half units.
// Invariant under the choice of starts.
std::int64_t total_demand_half(const Instance& inst);

}  // namespace wsched
