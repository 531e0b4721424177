#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsched/instance.hpp"
#include "wsched/ipcore.hpp"
#include "wsched/patterns.hpp"

namespace wsched {

enum class OverlapMode { Linear, Cyclic };

// Rest-period conflict: the later schedule starts before the earlier one ends
// plus g TPs. Linear mode is the sorted-by-start predicate; cyclic mode also
// catches spans that wrap past T.
bool schedules_overlap(const ShiftSchedule& a,
                       const ShiftSchedule& b,
                       const std::vector<ShiftPattern>& patterns,
                       int rest_gap,
                       int T,
                       OverlapMode mode);

// v < v' index pairs of conflicting schedules.
std::vector<std::pair<int, int>> overlap_pairs(const std::vector<ShiftSchedule>& schedules,
                                               const std::vector<ShiftPattern>& patterns,
                                               int rest_gap,
                                               int T,
                                               OverlapMode mode);

struct RosterWorker {
	int index = 0;                   // 1-based worker label u
	std::vector<int> schedule_ids;   // indices into U_1..U_tau (0-based)
	std::optional<int> day_off;      // day-off block anchor day, 1-based
};

struct Roster {
	std::vector<RosterWorker> workers;
	int workers_used = 0;
	std::vector<std::string> violations;

	bool feasible() const { return violations.empty(); }
};

// Day-off dummy blocks: two consecutive days anchored at each day start.
struct DayOffBlocks {
	int tps_per_day = 0;
	int days = 0;
	int count = 0;  // days in cyclic mode, days-1 in linear mode
	int start_tp(int block) const { return (block - 1) * tps_per_day + 1; }
	int span_tp() const { return 2 * tps_per_day; }
};
DayOffBlocks day_off_blocks(const Horizon& h, OverlapMode mode);

struct Stage2Model {
	ip::Model model;
	int w = 0;
	int tau = 0;
	int dummies = 0;
	int xi_var = -1;
	int z_base = 0;  // z(u,v) = z_base + (u-1)*(tau+dummies) + v  (v 0-based over real+dummy)
	int z_var(int u, int v) const { return z_base + (u - 1) * (tau + dummies) + v; }
};

// Eqs. 10-17 per active policy fields. Overlap and day-off pair rows are
// marked lazy so the engine separates them on demand. Throws
// BudgetExceededError when the projected row count exceeds row_budget.
Stage2Model build_stage2(const std::vector<ShiftSchedule>& schedules,
                         const std::vector<ShiftPattern>& patterns,
                         const Stage2Policy& policy,
                         int w,
                         const Horizon& horizon,
                         OverlapMode mode,
                         std::int64_t row_budget = 2'000'000);

// Lowest-index-worker first fit; provides the worker cap and a warm incumbent.
Roster greedy_first_fit(const std::vector<ShiftSchedule>& schedules,
                        const std::vector<ShiftPattern>& patterns,
                        const Stage2Policy& policy,
                        const Horizon& horizon,
                        OverlapMode mode);

struct Stage2SizeEstimate {
	std::int64_t variables = 0;
	std::int64_t constraints = 0;
};

struct Stage2PairCounts {
	std::int64_t overlap_pairs = 0;
	std::int64_t dayoff_pairs = 0;      // (real schedule, dummy block) conflicts
	std::int64_t day_incidences = 0;    // (schedule, day) touches, for the two-total variant
};

Stage2PairCounts count_stage2_pairs(const std::vector<ShiftSchedule>& schedules,
                                    const std::vector<ShiftPattern>& patterns,
                                    const Stage2Policy& policy,
                                    const Horizon& horizon,
                                    OverlapMode mode);

// Closed-form size of the stage-2 model as built by build_stage2.
Stage2SizeEstimate estimate_stage2_size(int tau,
                                        int w,
                                        const Stage2Policy& policy,
                                        const Stage2PairCounts& pairs,
                                        const Horizon& horizon,
                                        OverlapMode mode);

struct Stage2Options {
	OverlapMode overlap_mode = OverlapMode::Cyclic;
	std::int64_t row_budget = 2'000'000;
	ip::SolveOptions solve;
};

struct Stage2Outcome {
	Roster roster;
	double objective = 0;  // xi
	double lower_bound = 0;
	ip::SolveStatus status = ip::SolveStatus::Optimal;
	ip::SolveStats stats;
	Stage2SizeEstimate model_size;
};

// Assigns U_1..U_tau to workers minimizing the highest used worker index.
// The returned roster has passed the independent validator.
Stage2Outcome solve_stage2(const std::vector<ShiftSchedule>& schedules,
                           const std::vector<ShiftPattern>& patterns,
                           const Stage2Policy& policy,
                           const Horizon& horizon,
                           const Stage2Options& opts);

// Independent re-check of Eqs. 12-17 from raw schedule footprints.
std::vector<std::string> validate_roster(const Roster& roster,
                                         const std::vector<ShiftSchedule>& schedules,
                                         const std::vector<ShiftPattern>& patterns,
                                         const Stage2Policy& policy,
                                         const Horizon& horizon,
                                         OverlapMode mode);

}  // namespace wsched
