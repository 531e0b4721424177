#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsched/instance.hpp"
#include "wsched/split.hpp"
#include "wsched/stage1.hpp"
#include "wsched/stage2.hpp"

namespace wsched {

enum class RunObjective { Workers, Cost, Overcover };

struct RunOptions {
	RunObjective objective = RunObjective::Workers;
	int rho = 0;  // 0 = auto, 1 = force direct, >= 2 = force split
	double stage1_time_limit_s = 600;
	double stage2_time_limit_s = 600;
	OverlapMode overlap_mode = OverlapMode::Cyclic;
	std::int64_t row_budget = 2'000'000;
	// max-coverage lower-bound refinement for task instances (minimize max_j R_j,
	// then re-solve stage 1 under that cap)
	bool refine_bound = true;
	std::uint64_t seed = 0;
};

struct SubReport {
	double stage1_objective = 0;
	double stage1_bound = 0;
	int tau = 0;
	int workers = 0;
	double time_s = 0;
};

struct RunReport {
	// instance summary
	int T = 0;
	int K = 0;
	double total_demand_wh = 0;
	std::string method = "direct";  // or "split(rho)"
	int rho = 1;

	double stage1_objective = 0;
	double stage1_bound = 0;
	int tau = 0;
	double stage1_time_s = 0;
	std::string stage1_status;
	std::optional<int> coverage_bound;  // minimized max_j R_j, when computed

	int workers = 0;
	double stage2_time_s = 0;
	std::int64_t stage2_variables = 0;    // size of the un-split stage-2 model
	std::int64_t stage2_constraints = 0;
	std::optional<SubReport> split_sub1;
	std::optional<SubReport> split_sub2;

	std::optional<double> mu;         // final-roster optimality metric
	std::optional<double> stage1_mu;
	double utilization = 0;           // percent
	int worker_lower_bound_value = 0;
	double total_time_s = 0;
};

struct RunResult {
	RunReport report;
	Roster roster;
	std::vector<ShiftSchedule> schedules;  // the U list the roster indexes
	std::vector<ShiftPattern> patterns;
	Stage1Solution stage1;
};

// ceil(B/b): worker count lower bound from a stage-1 bound. Throws for b < 1.
int worker_lower_bound(double stage1_bound, int max_shifts);

// 100 - (O_S - O_L)/O_L * 100, rounded to one decimal. Throws for O_L <= 0.
double optimality_mu(double objective, double lower_bound);

// 100 * demand / supply in worker-hours. Throws for supply <= 0.
double utilization_percent(double demand_wh, double supply_wh);

// Full two-stage method with optional split, bound refinement, validation and
// metrics. Throws std::invalid_argument on validation failures, InfeasibleError
// when some stage is infeasible, BudgetExceededError when a forced direct solve
// exceeds the row budget.
RunResult run(const Instance& inst, const RunOptions& opts);

}  // namespace wsched
