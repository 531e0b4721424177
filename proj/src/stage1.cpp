#include "wsched/stage1.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wsched/errors.hpp"

namespace wsched {

namespace {

// Upper bound on any achievable R_j, in whole workers.
std::int64_t max_demand_bound(const Instance& inst) {
	std::int64_t fixed_max = 0;
	if (inst.fixed_demand) {
		fixed_max = inst.fixed_demand->max_half() / 2;
	}
	std::int64_t task_sum = 0;
	for (const auto& t : inst.tasks) {
		task_sum += *std::max_element(t.resource.begin(), t.resource.end());
	}
	return fixed_max + task_sum;
}

}  // namespace

Stage1Model build_stage1(const Instance& inst,
                         const std::vector<ShiftPattern>& patterns,
                         Stage1Objective objective,
                         std::optional<int> coverage_cap) {
	if (inst.pattern_family != Family::Custom && inst.explicit_patterns.empty()) {
		if (family_rules(inst.pattern_family).omega != inst.horizon.omega) {
			throw std::invalid_argument("stage1: pattern family omega differs from horizon omega");
		}
	}
	const int T = inst.horizon.T;
	const bool with_shifts = objective != Stage1Objective::MaxCoverage;
	Stage1Model out;
	ip::Model& m = out.model;

	for (const auto& task : inst.tasks) {
		for (int j = task.window_lo; j <= task.window_hi; ++j) {
			int v = m.add_binary("y_" + std::to_string(task.id) + "_" + std::to_string(j));
			out.y_var[{task.id, j}] = v;
		}
	}

	std::int64_t max_r = max_demand_bound(inst);
	if (with_shifts) {
		// one schedule covers a TP at most once, with 0.5 from tea-break cells,
		// so 2*max_j R_j copies of a single schedule always suffice
		double ub_x = static_cast<double>(2 * max_r + 1);
		for (std::size_t i = 0; i < patterns.size(); ++i) {
			int last_start = inst.horizon.cyclic ? T : T - patterns[i].length() + 1;
			for (int j = 1; j <= last_start; ++j) {
				int v = m.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j),
				                       ip::VarKind::Integer, 0, ub_x);
				out.x_var[{static_cast<int>(i), j}] = v;
			}
		}
	} else {
		out.max_coverage_var =
		    m.add_variable("max_cover", ip::VarKind::Integer, 0, static_cast<double>(max_r));
	}

	// per-TP terms of S_j - R_j (demand side negative)
	std::vector<std::vector<ip::LinTerm>> net(static_cast<std::size_t>(T));
	for (const auto& [key, var] : out.x_var) {
		const ShiftPattern& p = patterns[static_cast<std::size_t>(key.first)];
		for (int t = 1; t <= p.length(); ++t) {
			double cell = p.cell(t);
			if (cell > 0) {
				net[static_cast<std::size_t>(wrap(key.second + t - 1, T) - 1)].push_back(
				    {var, cell});
			}
		}
	}
	std::vector<std::vector<ip::LinTerm>> demand_terms(static_cast<std::size_t>(T));
	for (const auto& task : inst.tasks) {
		for (int j = task.window_lo; j <= task.window_hi; ++j) {
			int var = out.y_var.at({task.id, j});
			for (int i = 1; i <= task.duration; ++i) {
				auto r = task.resource[static_cast<std::size_t>(i - 1)];
				if (r > 0) {
					demand_terms[static_cast<std::size_t>(wrap(j + i - 1, T) - 1)].push_back(
					    {var, static_cast<double>(r)});
				}
			}
		}
	}

	if (with_shifts) {
		for (int j = 1; j <= T; ++j) {
			auto terms = net[static_cast<std::size_t>(j - 1)];
			for (const auto& t : demand_terms[static_cast<std::size_t>(j - 1)]) {
				terms.push_back({t.var, -t.coeff});
			}
			double rhs = inst.fixed_demand ? inst.fixed_demand->at(j) : 0.0;
			m.add_constraint(std::move(terms), ip::Sense::GE, rhs);
		}
	} else {
		for (int j = 1; j <= T; ++j) {
			auto terms = demand_terms[static_cast<std::size_t>(j - 1)];
			terms.push_back({out.max_coverage_var, -1.0});
			double fixed = inst.fixed_demand ? inst.fixed_demand->at(j) : 0.0;
			m.add_constraint(std::move(terms), ip::Sense::LE, -fixed);
		}
	}

	for (const auto& [k, k2] : inst.precedence) {
		const Task* a = inst.find_task(k);
		const Task* b = inst.find_task(k2);
		std::vector<ip::LinTerm> terms;
		for (int j = a->window_lo; j <= a->window_hi; ++j) {
			terms.push_back({out.y_var.at({k, j}), static_cast<double>(j + a->duration - 1)});
		}
		for (int j = b->window_lo; j <= b->window_hi; ++j) {
			terms.push_back({out.y_var.at({k2, j}), static_cast<double>(-j)});
		}
		m.add_constraint(std::move(terms), ip::Sense::LE, 0);
	}

	for (const auto& task : inst.tasks) {
		std::vector<ip::LinTerm> terms;
		for (int j = task.window_lo; j <= task.window_hi; ++j) {
			terms.push_back({out.y_var.at({task.id, j}), 1.0});
		}
		m.add_constraint(std::move(terms), ip::Sense::EQ, 1);
	}

	if (coverage_cap && with_shifts) {
		for (int j = 1; j <= T; ++j) {
			auto terms = demand_terms[static_cast<std::size_t>(j - 1)];
			double fixed = inst.fixed_demand ? inst.fixed_demand->at(j) : 0.0;
			if (terms.empty()) {
				if (fixed > *coverage_cap) {
					throw InfeasibleError("stage1: fixed demand exceeds coverage cap");
				}
				continue;
			}
			m.add_constraint(std::move(terms), ip::Sense::LE, *coverage_cap - fixed);
		}
	}

	std::vector<ip::LinTerm> obj;
	switch (objective) {
		case Stage1Objective::Cost:
			for (const auto& [key, var] : out.x_var) {
				obj.push_back({var, inst.costs.cost(key.first, key.second,
				                                    patterns[static_cast<std::size_t>(key.first)], T)});
			}
			break;
		case Stage1Objective::Overcover:
			for (const auto& [key, var] : out.x_var) {
				obj.push_back({var, patterns[static_cast<std::size_t>(key.first)].work_tps()});
			}
			break;
		case Stage1Objective::MaxCoverage:
			obj.push_back({out.max_coverage_var, 1.0});
			break;
	}
	m.set_objective(std::move(obj));
	return out;
}

Stage1Solution solve_stage1(const Instance& inst,
                            const std::vector<ShiftPattern>& patterns,
                            const Stage1Options& opts) {
	Stage1Model built = build_stage1(inst, patterns, opts.objective, opts.coverage_cap);
	ip::SolveResult res = ip::solve(built.model, opts.solve);
	if (res.status == ip::SolveStatus::Infeasible) {
		throw InfeasibleError("stage1: integer program infeasible (task windows, precedence or cap)");
	}
	if (!res.incumbent) {
		throw InfeasibleError("stage1: no feasible solution found within limits");
	}
	const auto& x = res.incumbent->values;

	Stage1Solution sol;
	sol.status = res.status;
	sol.stats = res.stats;
	sol.objective_value = res.incumbent->objective;
	sol.lower_bound = std::min(res.best_bound, sol.objective_value);
	for (const auto& task : inst.tasks) {
		for (int j = task.window_lo; j <= task.window_hi; ++j) {
			if (std::llround(x[static_cast<std::size_t>(built.y_var.at({task.id, j}))]) == 1) {
				sol.starts[task.id] = j;
				break;
			}
		}
	}
	sol.demand = induced_demand(inst, sol.starts);
	sol.supply = PeriodVector(inst.horizon.T);
	sol.num_schedules = 0;
	for (const auto& [key, var] : built.x_var) {
		auto count = std::llround(x[static_cast<std::size_t>(var)]);
		if (count > 0) {
			sol.schedule_counts[key] = static_cast<int>(count);
			sol.num_schedules += static_cast<int>(count);
			sol.supply = add_scaled(
			    sol.supply,
			    pattern_supply_footprint(patterns[static_cast<std::size_t>(key.first)], key.second,
			                             inst.horizon),
			    count);
		}
	}
	if (opts.objective != Stage1Objective::MaxCoverage && !dominates(sol.supply, sol.demand)) {
		throw std::runtime_error("stage1: solver returned a non-covering solution");
	}
	return sol;
}

std::vector<ShiftSchedule> expand_schedules(const Stage1Solution& sol) {
	std::vector<std::pair<std::pair<int, int>, int>> items(sol.schedule_counts.begin(),
	                                                       sol.schedule_counts.end());
	std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
		if (a.first.second != b.first.second) {
			return a.first.second < b.first.second;  // ascending start TP
		}
		return a.first.first < b.first.first;  // then pattern index
	});
	std::vector<ShiftSchedule> out;
	for (const auto& [key, count] : items) {
		for (int c = 0; c < count; ++c) {
			out.push_back({key.first, key.second});
		}
	}
	return out;
}

}  // namespace wsched
