#include "wsched/split.hpp"

#include <stdexcept>
#include <string>

namespace wsched {

SplitPlan split_demand(const PeriodVector& demand, int rho) {
	if (rho < 2) {
		throw std::invalid_argument("split_demand: rho must be >= 2");
	}
	if (!demand.is_integral()) {
		throw std::invalid_argument("split_demand: demand must be integral");
	}
	SplitPlan plan;
	plan.rho = rho;
	plan.r1 = PeriodVector(demand.size());
	plan.r2 = PeriodVector(demand.size());
	for (int j = 1; j <= demand.size(); ++j) {
		std::int64_t r = demand.half_at(j) / 2;
		if (r < 0) {
			throw std::invalid_argument("split_demand: negative demand");
		}
		std::int64_t r1 = r / rho;
		std::int64_t r2 = r - static_cast<std::int64_t>(rho - 1) * r1;
		plan.r1.set_half(j, 2 * r1);
		plan.r2.set_half(j, 2 * r2);
	}
	return plan;
}

namespace {

SubproblemResult solve_subproblem(const Instance& base,
                                  const PeriodVector& demand,
                                  const std::vector<ShiftPattern>& patterns,
                                  const SplitOptions& opts) {
	Instance sub = base;
	sub.tasks.clear();
	sub.precedence.clear();
	sub.fixed_demand = demand;
	SubproblemResult res;
	res.stage1 = solve_stage1(sub, patterns, opts.stage1);
	res.schedules = expand_schedules(res.stage1);
	res.stage2 = solve_stage2(res.schedules, patterns, sub.policy, sub.horizon, opts.stage2);
	return res;
}

}  // namespace

CombinedRoster solve_with_split(const Instance& base,
                                const PeriodVector& demand,
                                int rho,
                                const std::vector<ShiftPattern>& patterns,
                                const SplitOptions& opts) {
	CombinedRoster out;
	out.plan = split_demand(demand, rho);
	out.sub1 = solve_subproblem(base, out.plan.r1, patterns, opts);
	out.sub2 = solve_subproblem(base, out.plan.r2, patterns, opts);

	const int copies = out.plan.multiplicity();
	const int w1 = out.sub1.stage2.roster.workers_used;
	const int tau1 = static_cast<int>(out.sub1.schedules.size());

	for (int c = 0; c < copies; ++c) {
		for (const auto& s : out.sub1.schedules) {
			out.schedules.push_back(s);
		}
	}
	for (const auto& s : out.sub2.schedules) {
		out.schedules.push_back(s);
	}
	// copy c of the R1 roster uses worker labels (c-1)*w1+1 .. c*w1
	for (int c = 0; c < copies; ++c) {
		for (const auto& worker : out.sub1.stage2.roster.workers) {
			RosterWorker shifted = worker;
			shifted.index += c * w1;
			for (auto& v : shifted.schedule_ids) {
				v += c * tau1;
			}
			out.roster.workers.push_back(std::move(shifted));
		}
	}
	for (const auto& worker : out.sub2.stage2.roster.workers) {
		RosterWorker shifted = worker;
		shifted.index += copies * w1;
		for (auto& v : shifted.schedule_ids) {
			v += copies * tau1;
		}
		out.roster.workers.push_back(std::move(shifted));
	}
	out.total_workers = copies * w1 + out.sub2.stage2.roster.workers_used;
	out.roster.workers_used = out.total_workers;

	out.supply = add_scaled(out.sub2.stage1.supply, out.sub1.stage1.supply, copies);
	if (!dominates(out.supply, demand)) {
		throw std::runtime_error("solve_with_split: combined supply does not cover the demand");
	}
	auto violations = validate_roster(out.roster, out.schedules, patterns, base.policy,
	                                  base.horizon, opts.stage2.overlap_mode);
	if (!violations.empty()) {
		throw std::runtime_error("solve_with_split: combined roster invalid: " + violations.front());
	}
	return out;
}

int recommend_rho(std::int64_t estimated_rows, std::int64_t row_budget) {
	if (row_budget < 1) {
		throw std::invalid_argument("recommend_rho: budget must be positive");
	}
	if (estimated_rows <= row_budget) {
		return 1;
	}
	// conservative linear shrink: per-subproblem size ~ size/rho
	int rho = static_cast<int>((estimated_rows + row_budget - 1) / row_budget);
	return std::max(rho, 2);
}

}  // namespace wsched
