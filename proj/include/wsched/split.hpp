#pragma once

#include <cstdint>
#include <vector>

#include "wsched/horizon.hpp"
#include "wsched/instance.hpp"
#include "wsched/stage1.hpp"
#include "wsched/stage2.hpp"

namespace wsched {

// R = (rho-1)*R1 + R2 with R1 = floor(R/rho).
struct SplitPlan {
	int rho = 2;
	PeriodVector r1;
	PeriodVector r2;
	int multiplicity() const { return rho - 1; }  // copies of the R1 roster
};

// Throws std::invalid_argument for rho < 2 or non-integer demand.
SplitPlan split_demand(const PeriodVector& demand, int rho);

struct SubproblemResult {
	Stage1Solution stage1;
	std::vector<ShiftSchedule> schedules;
	Stage2Outcome stage2;
};

struct CombinedRoster {
	SplitPlan plan;
	SubproblemResult sub1;
	SubproblemResult sub2;
	// sub1's roster replicated rho-1 times over disjoint worker blocks,
	// then sub2's roster appended.
	Roster roster;
	std::vector<ShiftSchedule> schedules;  // the combined U list the roster indexes
	int total_workers = 0;                 // (rho-1)*w1 + w2
	PeriodVector supply;
};

struct SplitOptions {
	Stage1Options stage1;
	Stage2Options stage2;
};

// Two-stage method on the R1 and R2 subproblems of a fixed demand vector,
// recombined into one roster over the original demand. The demand-side
// instance fields (horizon, patterns, costs, policy) come from `base`.
CombinedRoster solve_with_split(const Instance& base,
                                const PeriodVector& demand,
                                int rho,
                                const std::vector<ShiftPattern>& patterns,
                                const SplitOptions& opts);

// Smallest rho >= 1 whose per-subproblem stage-2 size fits the budget;
// 1 means no split. Assumes the row count shrinks roughly with the square
// of the demand scale (overlap pairs dominate).
int recommend_rho(std::int64_t estimated_rows, std::int64_t row_budget);

}  // namespace wsched
