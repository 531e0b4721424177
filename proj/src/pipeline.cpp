#include "wsched/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "wsched/errors.hpp"

namespace wsched {

int worker_lower_bound(double stage1_bound, int max_shifts) {
	if (max_shifts < 1) {
		throw std::invalid_argument("worker_lower_bound: max shifts must be >= 1");
	}
	if (stage1_bound <= 0) {
		return 0;
	}
	return static_cast<int>(std::ceil(stage1_bound / max_shifts - 1e-9));
}

double optimality_mu(double objective, double lower_bound) {
	if (lower_bound <= 0) {
		throw std::invalid_argument("optimality_mu: undefined for nonpositive lower bound");
	}
	objective = std::max(objective, lower_bound);
	double mu = 100.0 - (objective - lower_bound) / lower_bound * 100.0;
	return std::round(mu * 10.0) / 10.0;
}

double utilization_percent(double demand_wh, double supply_wh) {
	if (supply_wh <= 0) {
		throw std::invalid_argument("utilization: supply must be positive");
	}
	return 100.0 * demand_wh / supply_wh;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string status_name(ip::SolveStatus s) {
	switch (s) {
		case ip::SolveStatus::Optimal: return "optimal";
		case ip::SolveStatus::Feasible: return "feasible";
		case ip::SolveStatus::Infeasible: return "infeasible";
		case ip::SolveStatus::LimitReached: return "limit_reached";
	}
	return "?";
}

PeriodVector roster_supply(const std::vector<ShiftSchedule>& schedules,
                           const std::vector<ShiftPattern>& patterns,
                           const Horizon& horizon) {
	PeriodVector supply(horizon.T);
	for (const auto& s : schedules) {
		supply = add_scaled(
		    supply,
		    pattern_supply_footprint(patterns[static_cast<std::size_t>(s.pattern_id)], s.start_tp,
		                             horizon),
		    1);
	}
	return supply;
}

}  // namespace

RunResult run(const Instance& inst, const RunOptions& opts) {
	auto violations = validate(inst);
	if (!violations.empty()) {
		std::string msg = "invalid instance:";
		for (const auto& v : violations) {
			msg += "\n  - " + v;
		}
		throw std::invalid_argument(msg);
	}
	auto t_run = std::chrono::steady_clock::now();

	RunResult out;
	out.patterns = patterns_for(inst);
	RunReport& rep = out.report;
	rep.T = inst.horizon.T;
	rep.K = static_cast<int>(inst.tasks.size());
	rep.total_demand_wh =
	    static_cast<double>(total_demand_half(inst)) / 2.0 * inst.horizon.omega / 60.0;

	// stage 1: count objective when minimizing workers, cost table otherwise
	Instance work = inst;
	if (opts.objective == RunObjective::Workers) {
		work.costs.kind = CostKind::Uniform;
	}
	Stage1Options s1_opts;
	s1_opts.objective = opts.objective == RunObjective::Overcover ? Stage1Objective::Overcover
	                                                              : Stage1Objective::Cost;
	s1_opts.solve.time_limit_s = opts.stage1_time_limit_s;
	s1_opts.solve.seed = opts.seed;

	auto t0 = std::chrono::steady_clock::now();
	out.stage1 = solve_stage1(work, out.patterns, s1_opts);
	rep.stage1_time_s = seconds_since(t0);
	rep.stage1_objective = out.stage1.objective_value;
	rep.stage1_bound = out.stage1.lower_bound;
	rep.tau = out.stage1.num_schedules;
	rep.stage1_status = status_name(out.stage1.status);
	if (out.stage1.lower_bound > 0) {
		rep.stage1_mu = optimality_mu(out.stage1.objective_value, out.stage1.lower_bound);
	}

	// worker lower bound per the active load constraint
	int worker_lb = 0;
	if (opts.objective == RunObjective::Workers) {
		if (inst.policy.load_constraint_kind == LoadKind::Shifts && inst.policy.max_shifts_b) {
			worker_lb = worker_lower_bound(out.stage1.lower_bound, *inst.policy.max_shifts_b);
		} else if (inst.policy.max_hours_H) {
			double hours_cap = *inst.policy.max_hours_H * inst.horizon.omega / 60.0;
			worker_lb = static_cast<int>(std::ceil(rep.total_demand_wh / hours_cap - 1e-9));
		}
		// a TP where R_j workers are needed at once requires R_j distinct workers
		if (inst.tasks.empty() && inst.fixed_demand) {
			worker_lb = std::max(worker_lb,
			                     static_cast<int>(inst.fixed_demand->max_half() / 2));
		}
	}

	// max-coverage refinement (minimize max_j R_j, then re-solve under the cap)
	if (opts.objective == RunObjective::Workers && opts.refine_bound && !inst.tasks.empty()) {
		t0 = std::chrono::steady_clock::now();
		Stage1Options cover_opts = s1_opts;
		cover_opts.objective = Stage1Objective::MaxCoverage;
		Stage1Solution cover = solve_stage1(work, out.patterns, cover_opts);
		int min_max_cover = static_cast<int>(std::llround(cover.objective_value));
		rep.coverage_bound = min_max_cover;
		double refine_time = seconds_since(t0);
		rep.stage1_time_s += refine_time;
		if (min_max_cover > worker_lb) {
			worker_lb = min_max_cover;
			t0 = std::chrono::steady_clock::now();
			Stage1Options capped = s1_opts;
			capped.coverage_cap = min_max_cover;
			try {
				Stage1Solution refined = solve_stage1(work, out.patterns, capped);
				rep.stage1_time_s += seconds_since(t0);
				if (refined.objective_value <= out.stage1.objective_value + 1e-9) {
					out.stage1 = std::move(refined);
					rep.stage1_objective = out.stage1.objective_value;
					rep.stage1_bound = std::max(rep.stage1_bound, out.stage1.lower_bound);
					rep.tau = out.stage1.num_schedules;
				}
			} catch (const InfeasibleError&) {
				rep.stage1_time_s += seconds_since(t0);  // keep the uncapped solution
			}
		}
	}
	rep.worker_lower_bound_value = worker_lb;

	// split decision on the realized demand vector
	out.schedules = expand_schedules(out.stage1);
	Stage2Options s2_opts;
	s2_opts.overlap_mode = opts.overlap_mode;
	s2_opts.row_budget = opts.row_budget;
	s2_opts.solve.time_limit_s = opts.stage2_time_limit_s;
	s2_opts.solve.seed = opts.seed;

	Stage2SizeEstimate direct_size{1, 0};
	if (!out.schedules.empty()) {
		Roster greedy = greedy_first_fit(out.schedules, out.patterns, inst.policy, inst.horizon,
		                                 opts.overlap_mode);
		int w = greedy.workers_used;
		if (inst.policy.max_workers_w) {
			w = std::min(w, *inst.policy.max_workers_w);
		}
		Stage2PairCounts pairs = count_stage2_pairs(out.schedules, out.patterns, inst.policy,
		                                            inst.horizon, opts.overlap_mode);
		direct_size = estimate_stage2_size(static_cast<int>(out.schedules.size()), w, inst.policy,
		                                   pairs, inst.horizon, opts.overlap_mode);
	}
	rep.stage2_variables = direct_size.variables;
	rep.stage2_constraints = direct_size.constraints;

	int rho = opts.rho;
	if (rho <= 0) {
		rho = recommend_rho(direct_size.constraints, opts.row_budget);
	}

	t0 = std::chrono::steady_clock::now();
	if (rho <= 1) {
		Stage2Outcome s2 = solve_stage2(out.schedules, out.patterns, inst.policy, inst.horizon,
		                                s2_opts);
		rep.stage2_time_s = seconds_since(t0);
		out.roster = std::move(s2.roster);
		rep.workers = out.roster.workers_used;
		rep.method = "direct";
		rep.rho = 1;
	} else {
		SplitOptions split_opts;
		split_opts.stage1 = s1_opts;
		split_opts.stage1.objective = Stage1Objective::Cost;
		split_opts.stage1.coverage_cap.reset();
		split_opts.stage2 = s2_opts;
		CombinedRoster combined =
		    solve_with_split(inst, out.stage1.demand, rho, out.patterns, split_opts);
		rep.stage2_time_s = seconds_since(t0);
		out.roster = std::move(combined.roster);
		out.schedules = std::move(combined.schedules);
		rep.workers = combined.total_workers;
		rep.method = "split(" + std::to_string(rho) + ")";
		rep.rho = rho;
		SubReport s1;
		s1.stage1_objective = combined.sub1.stage1.objective_value;
		s1.stage1_bound = combined.sub1.stage1.lower_bound;
		s1.tau = combined.sub1.stage1.num_schedules;
		s1.workers = combined.sub1.stage2.roster.workers_used;
		rep.split_sub1 = s1;
		SubReport s2;
		s2.stage1_objective = combined.sub2.stage1.objective_value;
		s2.stage1_bound = combined.sub2.stage1.lower_bound;
		s2.tau = combined.sub2.stage1.num_schedules;
		s2.workers = combined.sub2.stage2.roster.workers_used;
		rep.split_sub2 = s2;
	}

	// final validation: the emitted roster must satisfy the independent checker
	auto roster_violations = validate_roster(out.roster, out.schedules, out.patterns, inst.policy,
	                                         inst.horizon, opts.overlap_mode);
	if (!roster_violations.empty()) {
		throw std::runtime_error("pipeline: final roster failed validation: " +
		                         roster_violations.front());
	}

	PeriodVector supply = roster_supply(out.schedules, out.patterns, inst.horizon);
	if (!dominates(supply, out.stage1.demand) && rho <= 1) {
		throw std::runtime_error("pipeline: roster supply does not cover the demand");
	}
	double supply_wh = supply.total_worker_hours(inst.horizon.omega);
	rep.utilization = supply_wh > 0 ? utilization_percent(rep.total_demand_wh, supply_wh) : 0.0;
	if (opts.objective == RunObjective::Workers && worker_lb > 0) {
		rep.mu = optimality_mu(rep.workers, worker_lb);
	} else if (opts.objective != RunObjective::Workers && rep.stage1_bound > 0) {
		rep.mu = rep.stage1_mu;  // Theorem 1: stage 2 never changes the stage-1 objective
	}
	rep.total_time_s = seconds_since(t_run);
	return out;
}

}  // namespace wsched
