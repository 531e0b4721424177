#include "wsched/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wsched {

double CostModel::cost(int pattern_index, int start_tp, const ShiftPattern& p, int T) const {
	switch (kind) {
		case CostKind::Uniform:
			return 1.0;
		case CostKind::PerDuration: {
			auto it = per_duration.find(p.length());
			return it != per_duration.end() ? it->second : static_cast<double>(p.length());
		}
		case CostKind::Matrix: {
			std::size_t idx = static_cast<std::size_t>(pattern_index) * static_cast<std::size_t>(T) +
			                  static_cast<std::size_t>(start_tp - 1);
			return matrix.at(idx);
		}
	}
	return 1.0;
}

const Task* Instance::find_task(int id) const {
	for (const auto& t : tasks) {
		if (t.id == id) {
			return &t;
		}
	}
	return nullptr;
}

namespace {

bool precedence_has_cycle(const Instance& inst) {
	// Kahn's algorithm over task ids that appear in precedence pairs.
	std::map<int, std::vector<int>> adj;
	std::map<int, int> indeg;
	for (const auto& [a, b] : inst.precedence) {
		adj[a].push_back(b);
		indeg[a];
		++indeg[b];
	}
	std::vector<int> queue;
	for (const auto& [id, d] : indeg) {
		if (d == 0) {
			queue.push_back(id);
		}
	}
	std::size_t seen = 0;
	while (!queue.empty()) {
		int v = queue.back();
		queue.pop_back();
		++seen;
		for (int w : adj[v]) {
			if (--indeg[w] == 0) {
				queue.push_back(w);
			}
		}
	}
	return seen != indeg.size();
}

}  // namespace

std::vector<std::string> validate(const Instance& inst) {
	std::vector<std::string> v = horizon_violations(inst.horizon);
	const int T = inst.horizon.T;

	std::set<int> ids;
	for (const auto& t : inst.tasks) {
		std::string tag = "task " + std::to_string(t.id) + ": ";
		if (!ids.insert(t.id).second) {
			v.push_back(tag + "duplicate id");
		}
		if (t.window_hi < t.window_lo) {
			v.push_back(tag + "window inverted (u < l)");
		}
		if (t.window_lo < 1 || t.window_hi > T) {
			v.push_back(tag + "window outside horizon");
		}
		if (t.duration < 1) {
			v.push_back(tag + "duration must be >= 1 TP");
		}
		if (static_cast<int>(t.resource.size()) != t.duration) {
			v.push_back(tag + "resource profile length != duration");
		}
		bool any_pos = false;
		for (auto r : t.resource) {
			if (r < 0) {
				v.push_back(tag + "negative resource level");
				break;
			}
			any_pos = any_pos || r > 0;
		}
		if (!t.resource.empty() && !any_pos) {
			v.push_back(tag + "resource profile is all zero");
		}
	}

	for (const auto& [a, b] : inst.precedence) {
		if (ids.find(a) == ids.end() || ids.find(b) == ids.end()) {
			v.push_back("precedence (" + std::to_string(a) + "," + std::to_string(b) +
			            "): unknown task id");
		}
	}
	if (precedence_has_cycle(inst)) {
		v.push_back("precedence cycle");
	}

	if (inst.tasks.empty() && !inst.fixed_demand) {
		v.push_back("instance: no tasks and no fixed demand");
	}
	if (inst.fixed_demand) {
		if (inst.fixed_demand->size() != T) {
			v.push_back("fixed_demand: length != T");
		}
		for (int j = 1; j <= inst.fixed_demand->size(); ++j) {
			if (inst.fixed_demand->half_at(j) < 0) {
				v.push_back("fixed_demand: negative entry at TP " + std::to_string(j));
				break;
			}
		}
		if (!inst.fixed_demand->is_integral()) {
			v.push_back("fixed_demand: entries must be integers");
		}
	}

	if (inst.pattern_family == Family::Custom && !inst.custom_rules &&
	    inst.explicit_patterns.empty()) {
		v.push_back("patterns: CUSTOM family needs rules or an explicit pattern list");
	}
	if (inst.costs.kind == CostKind::Matrix && inst.costs.matrix.empty()) {
		v.push_back("costs: matrix kind with empty matrix");
	}

	const auto& pol = inst.policy;
	if (pol.max_shifts_b && *pol.max_shifts_b < 1) {
		v.push_back("policy: max_shifts must be >= 1");
	}
	if (pol.max_hours_H && *pol.max_hours_H < 1) {
		v.push_back("policy: max_hours must be >= 1");
	}
	if (pol.rest_gap_g < 0) {
		v.push_back("policy: rest_gap must be >= 0");
	}
	if (pol.max_workers_w && *pol.max_workers_w < 1) {
		v.push_back("policy: max_workers must be >= 1");
	}
	if (pol.days_off != DaysOffPolicy::None) {
		if (!pol.max_shifts_b && !pol.max_hours_H) {
			v.push_back("policy: days off require a shift or hour cap");
		}
		if (inst.horizon.days() < 0) {
			v.push_back("policy: days off require a day-aligned horizon");
		}
	}
	return v;
}

std::vector<ShiftPattern> patterns_for(const Instance& inst) {
	if (!inst.explicit_patterns.empty()) {
		return inst.explicit_patterns;
	}
	if (inst.pattern_family == Family::Custom) {
		if (!inst.custom_rules) {
			throw std::invalid_argument("patterns_for: CUSTOM family without rules");
		}
		return generate_patterns(*inst.custom_rules);
	}
	return generate_family(inst.pattern_family);
}

PeriodVector induced_demand(const Instance& inst, const std::map<int, int>& starts) {
	PeriodVector demand(inst.horizon.T);
	for (const auto& t : inst.tasks) {
		auto it = starts.find(t.id);
		if (it == starts.end()) {
			throw std::invalid_argument("induced_demand: no start for task " + std::to_string(t.id));
		}
		int s = it->second;
		if (s < t.window_lo || s > t.window_hi) {
			throw std::invalid_argument("induced_demand: start outside window for task " +
			                            std::to_string(t.id));
		}
		for (int i = 1; i <= t.duration; ++i) {
			demand.add_half(wrap(s + i - 1, inst.horizon.T),
			                2 * t.resource[static_cast<std::size_t>(i - 1)]);
		}
	}
	if (inst.fixed_demand) {
		demand = add_scaled(demand, *inst.fixed_demand, 1);
	}
	return demand;
}

std::int64_t total_demand_half(const Instance& inst) {
	std::int64_t total = 0;
	for (const auto& t : inst.tasks) {
		for (auto r : t.resource) {
			total += 2 * r;
		}
	}
	if (inst.fixed_demand) {
		total += inst.fixed_demand->total_half();
	}
	return total;
}

}  // namespace wsched
