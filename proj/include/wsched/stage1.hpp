#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wsched/instance.hpp"
#include "wsched/ipcore.hpp"

namespace wsched {

enum class Stage1Objective {
	Cost,         // sum of c_ij x_ij
	Overcover,    // total supply; equivalent to minimizing the over cover
	MaxCoverage,  // minimize max_j R_j (no shift variables)
};

struct Stage1Options {
	Stage1Objective objective = Stage1Objective::Cost;
	std::optional<int> coverage_cap;  // adds R_j <= cap for every TP
	ip::SolveOptions solve;
};

// The built model plus variable maps for extraction.
struct Stage1Model {
	ip::Model model;
	std::map<std::pair<int, int>, int> y_var;  // (task id, start) -> column
	std::map<std::pair<int, int>, int> x_var;  // (pattern, start) -> column
	int max_coverage_var = -1;
};

struct Stage1Solution {
	std::map<int, int> starts;                        // task id -> start TP
	std::map<std::pair<int, int>, int> schedule_counts;  // (pattern, start) -> count
	double objective_value = 0;
	double lower_bound = 0;
	PeriodVector demand;
	PeriodVector supply;
	int num_schedules = 0;  // tau
	ip::SolveStatus status = ip::SolveStatus::Optimal;
	ip::SolveStats stats;
};

Stage1Model build_stage1(const Instance& inst,
                         const std::vector<ShiftPattern>& patterns,
                         Stage1Objective objective,
                         std::optional<int> coverage_cap = std::nullopt);

// Solves via the built-in engine. Throws InfeasibleError when the instance
// admits no feasible task schedule / covering.
Stage1Solution solve_stage1(const Instance& inst,
                            const std::vector<ShiftPattern>& patterns,
                            const Stage1Options& opts);

// U_1..U_tau: each (i,j) repeated count times, sorted by start then pattern.
std::vector<ShiftSchedule> expand_schedules(const Stage1Solution& sol);

}  // namespace wsched
