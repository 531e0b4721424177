#include "wsched/stage2.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "wsched/errors.hpp"

namespace wsched {

namespace {

int pos_mod(int a, int T) {
	int r = a % T;
	return r < 0 ? r + T : r;
}

// circular spans [s1, s1+len1-1], [s2, s2+len2-1] on Z_T
bool circular_intersect(int s1, int len1, int s2, int len2, int T) {
	return pos_mod(s2 - s1, T) <= len1 - 1 || pos_mod(s1 - s2, T) <= len2 - 1;
}

bool linear_intersect(int s1, int len1, int s2, int len2) {
	return s1 <= s2 + len2 - 1 && s2 <= s1 + len1 - 1;
}

}  // namespace

bool schedules_overlap(const ShiftSchedule& a,
                       const ShiftSchedule& b,
                       const std::vector<ShiftPattern>& patterns,
                       int rest_gap,
                       int T,
                       OverlapMode mode) {
	int ma = patterns[static_cast<std::size_t>(a.pattern_id)].length();
	int mb = patterns[static_cast<std::size_t>(b.pattern_id)].length();
	if (mode == OverlapMode::Linear) {
		const ShiftSchedule& first = a.start_tp <= b.start_tp ? a : b;
		const ShiftSchedule& second = a.start_tp <= b.start_tp ? b : a;
		int mf = patterns[static_cast<std::size_t>(first.pattern_id)].length();
		return second.start_tp <= first.start_tp + mf - 1 + rest_gap;
	}
	return pos_mod(b.start_tp - a.start_tp, T) <= ma - 1 + rest_gap ||
	       pos_mod(a.start_tp - b.start_tp, T) <= mb - 1 + rest_gap;
}

std::vector<std::pair<int, int>> overlap_pairs(const std::vector<ShiftSchedule>& schedules,
                                               const std::vector<ShiftPattern>& patterns,
                                               int rest_gap,
                                               int T,
                                               OverlapMode mode) {
	std::vector<std::pair<int, int>> pairs;
	for (std::size_t v = 0; v < schedules.size(); ++v) {
		for (std::size_t v2 = v + 1; v2 < schedules.size(); ++v2) {
			if (schedules_overlap(schedules[v], schedules[v2], patterns, rest_gap, T, mode)) {
				pairs.emplace_back(static_cast<int>(v), static_cast<int>(v2));
			}
		}
	}
	return pairs;
}

DayOffBlocks day_off_blocks(const Horizon& h, OverlapMode mode) {
	DayOffBlocks b;
	b.tps_per_day = h.tps_per_day();
	b.days = h.days();
	if (b.days < 2) {
		throw std::invalid_argument("day_off_blocks: horizon shorter than two days");
	}
	b.count = mode == OverlapMode::Cyclic ? b.days : b.days - 1;
	return b;
}

Stage2PairCounts count_stage2_pairs(const std::vector<ShiftSchedule>& schedules,
                                    const std::vector<ShiftPattern>& patterns,
                                    const Stage2Policy& policy,
                                    const Horizon& horizon,
                                    OverlapMode mode) {
	Stage2PairCounts out;
	out.overlap_pairs = static_cast<std::int64_t>(
	    overlap_pairs(schedules, patterns, policy.rest_gap_g, horizon.T, mode).size());
	if (policy.days_off == DaysOffPolicy::TwoConsecutive) {
		DayOffBlocks blocks = day_off_blocks(horizon, mode);
		for (const auto& s : schedules) {
			int m = patterns[static_cast<std::size_t>(s.pattern_id)].length();
			for (int d = 1; d <= blocks.count; ++d) {
				bool hit = mode == OverlapMode::Cyclic
				               ? circular_intersect(s.start_tp, m, blocks.start_tp(d),
				                                    blocks.span_tp(), horizon.T)
				               : linear_intersect(s.start_tp, m, blocks.start_tp(d), blocks.span_tp());
				if (hit) {
					++out.dayoff_pairs;
				}
			}
		}
	}
	if (policy.days_off == DaysOffPolicy::TwoTotal) {
		int tpd = horizon.tps_per_day();
		for (const auto& s : schedules) {
			int m = patterns[static_cast<std::size_t>(s.pattern_id)].length();
			std::set<int> days;
			for (int t = 0; t < m; ++t) {
				days.insert((wrap(s.start_tp + t, horizon.T) - 1) / tpd);
			}
			out.day_incidences += static_cast<std::int64_t>(days.size());
		}
	}
	return out;
}

Stage2SizeEstimate estimate_stage2_size(int tau,
                                        int w,
                                        const Stage2Policy& policy,
                                        const Stage2PairCounts& pairs,
                                        const Horizon& horizon,
                                        OverlapMode mode) {
	Stage2SizeEstimate e;
	int dummies = 0;
	if (policy.days_off == DaysOffPolicy::TwoConsecutive && tau > 0) {
		dummies = day_off_blocks(horizon, mode).count;
	}
	int days = horizon.days();
	e.variables = static_cast<std::int64_t>(w) * (tau + dummies) + 1;
	if (policy.days_off == DaysOffPolicy::TwoTotal) {
		e.variables += static_cast<std::int64_t>(w) * days;
	}
	e.constraints = 2LL * tau;  // Eq. 11 and Eq. 12
	if (policy.max_shifts_b) {
		e.constraints += w;
	}
	if (policy.max_hours_H) {
		e.constraints += w;
	}
	e.constraints += static_cast<std::int64_t>(w) * pairs.overlap_pairs;
	if (policy.days_off == DaysOffPolicy::TwoConsecutive && tau > 0) {
		e.constraints += w;  // Eq. 16
		e.constraints += static_cast<std::int64_t>(w) * pairs.dayoff_pairs;
	}
	if (policy.days_off == DaysOffPolicy::TwoTotal) {
		e.constraints += static_cast<std::int64_t>(w) * pairs.day_incidences + w;
	}
	if (policy.symmetry_breaking && w > 1 && tau > 0) {
		e.constraints += w - 1;
	}
	return e;
}

Stage2Model build_stage2(const std::vector<ShiftSchedule>& schedules,
                         const std::vector<ShiftPattern>& patterns,
                         const Stage2Policy& policy,
                         int w,
                         const Horizon& horizon,
                         OverlapMode mode,
                         std::int64_t row_budget) {
	const int tau = static_cast<int>(schedules.size());
	if (tau < 1 || w < 1) {
		throw std::invalid_argument("build_stage2: need tau >= 1 and w >= 1");
	}
	Stage2PairCounts pairs = count_stage2_pairs(schedules, patterns, policy, horizon, mode);
	Stage2SizeEstimate size = estimate_stage2_size(tau, w, policy, pairs, horizon, mode);
	if (size.constraints > row_budget) {
		throw BudgetExceededError("stage2 model too large: " + std::to_string(size.constraints) +
		                          " rows exceed budget " + std::to_string(row_budget) +
		                          " (w=" + std::to_string(w) + ", tau=" + std::to_string(tau) + ")");
	}

	Stage2Model out;
	out.w = w;
	out.tau = tau;
	DayOffBlocks blocks{};
	if (policy.days_off == DaysOffPolicy::TwoConsecutive) {
		blocks = day_off_blocks(horizon, mode);
		out.dummies = blocks.count;
	}
	ip::Model& m = out.model;
	out.z_base = 0;
	for (int u = 1; u <= w; ++u) {
		for (int v = 0; v < tau + out.dummies; ++v) {
			m.add_binary("z_" + std::to_string(u) + "_" + std::to_string(v + 1));
		}
	}
	out.xi_var = m.add_variable("xi", ip::VarKind::Integer, 0, w);

	// Eq. 11: the worker label carrying schedule v is at most xi
	for (int v = 0; v < tau; ++v) {
		std::vector<ip::LinTerm> terms;
		for (int u = 1; u <= w; ++u) {
			terms.push_back({out.z_var(u, v), static_cast<double>(u)});
		}
		terms.push_back({out.xi_var, -1.0});
		m.add_constraint(std::move(terms), ip::Sense::LE, 0);
	}
	// Eq. 12: each schedule assigned exactly once
	for (int v = 0; v < tau; ++v) {
		std::vector<ip::LinTerm> terms;
		for (int u = 1; u <= w; ++u) {
			terms.push_back({out.z_var(u, v), 1.0});
		}
		m.add_constraint(std::move(terms), ip::Sense::EQ, 1);
	}
	// Eq. 13: at most b shifts per worker
	if (policy.max_shifts_b) {
		for (int u = 1; u <= w; ++u) {
			std::vector<ip::LinTerm> terms;
			for (int v = 0; v < tau; ++v) {
				terms.push_back({out.z_var(u, v), 1.0});
			}
			m.add_constraint(std::move(terms), ip::Sense::LE, *policy.max_shifts_b);
		}
	}
	// Eq. 14: rest-period conflicts
	auto ov = overlap_pairs(schedules, patterns, policy.rest_gap_g, horizon.T, mode);
	for (int u = 1; u <= w; ++u) {
		for (const auto& [v, v2] : ov) {
			m.add_constraint({{out.z_var(u, v), 1.0}, {out.z_var(u, v2), 1.0}}, ip::Sense::LE, 1,
			                 /*lazy=*/true);
		}
	}
	// Eq. 15: total TPs per worker
	if (policy.max_hours_H) {
		for (int u = 1; u <= w; ++u) {
			std::vector<ip::LinTerm> terms;
			for (int v = 0; v < tau; ++v) {
				terms.push_back(
				    {out.z_var(u, v),
				     static_cast<double>(
				         patterns[static_cast<std::size_t>(schedules[static_cast<std::size_t>(v)]
				                                               .pattern_id)]
				             .length())});
			}
			m.add_constraint(std::move(terms), ip::Sense::LE, *policy.max_hours_H);
		}
	}
	if (policy.days_off == DaysOffPolicy::TwoConsecutive) {
		// Eq. 16: exactly one two-day off block per worker
		for (int u = 1; u <= w; ++u) {
			std::vector<ip::LinTerm> terms;
			for (int d = 0; d < out.dummies; ++d) {
				terms.push_back({out.z_var(u, tau + d), 1.0});
			}
			m.add_constraint(std::move(terms), ip::Sense::EQ, 1);
		}
		// Eq. 17: no shift inside the off block (plain span intersection)
		for (int u = 1; u <= w; ++u) {
			for (int v = 0; v < tau; ++v) {
				int mv = patterns[static_cast<std::size_t>(
				                      schedules[static_cast<std::size_t>(v)].pattern_id)]
				             .length();
				for (int d = 1; d <= out.dummies; ++d) {
					bool hit =
					    mode == OverlapMode::Cyclic
					        ? circular_intersect(schedules[static_cast<std::size_t>(v)].start_tp, mv,
					                             blocks.start_tp(d), blocks.span_tp(), horizon.T)
					        : linear_intersect(schedules[static_cast<std::size_t>(v)].start_tp, mv,
					                           blocks.start_tp(d), blocks.span_tp());
					if (hit) {
						m.add_constraint(
						    {{out.z_var(u, v), 1.0}, {out.z_var(u, tau + d - 1), 1.0}},
						    ip::Sense::LE, 1, /*lazy=*/true);
					}
				}
			}
		}
	}
	if (policy.days_off == DaysOffPolicy::TwoTotal) {
		int days = horizon.days();
		int tpd = horizon.tps_per_day();
		int d_base = m.num_vars();
		for (int u = 1; u <= w; ++u) {
			for (int d = 0; d < days; ++d) {
				m.add_binary("dayuse_" + std::to_string(u) + "_" + std::to_string(d + 1));
			}
		}
		for (int u = 1; u <= w; ++u) {
			for (int v = 0; v < tau; ++v) {
				const auto& s = schedules[static_cast<std::size_t>(v)];
				int mv = patterns[static_cast<std::size_t>(s.pattern_id)].length();
				std::set<int> touched;
				for (int t = 0; t < mv; ++t) {
					touched.insert((wrap(s.start_tp + t, horizon.T) - 1) / tpd);
				}
				for (int d : touched) {
					m.add_constraint({{out.z_var(u, v), 1.0},
					                  {d_base + (u - 1) * days + d, -1.0}},
					                 ip::Sense::LE, 0, /*lazy=*/true);
				}
			}
			std::vector<ip::LinTerm> terms;
			for (int d = 0; d < days; ++d) {
				terms.push_back({d_base + (u - 1) * days + d, 1.0});
			}
			m.add_constraint(std::move(terms), ip::Sense::LE, days - 2);
		}
	}
	// interchangeable workers: nonincreasing shift counts
	if (policy.symmetry_breaking && w > 1) {
		for (int u = 1; u < w; ++u) {
			std::vector<ip::LinTerm> terms;
			for (int v = 0; v < tau; ++v) {
				terms.push_back({out.z_var(u, v), 1.0});
				terms.push_back({out.z_var(u + 1, v), -1.0});
			}
			m.add_constraint(std::move(terms), ip::Sense::GE, 0);
		}
	}
	m.set_objective({{out.xi_var, 1.0}});
	return out;
}

namespace {

// Occupied TPs of a schedule plus `pad` trailing TPs, as a boolean mask.
std::vector<char> footprint_mask(const ShiftSchedule& s, const std::vector<ShiftPattern>& patterns,
                                 int pad, const Horizon& h, OverlapMode mode) {
	std::vector<char> mask(static_cast<std::size_t>(h.T), 0);
	int m = patterns[static_cast<std::size_t>(s.pattern_id)].length();
	for (int t = 0; t < m + pad; ++t) {
		if (mode == OverlapMode::Cyclic) {
			mask[static_cast<std::size_t>(wrap(s.start_tp + t, h.T) - 1)] = 1;
		} else {
			int tp = s.start_tp + t;
			if (tp >= 1 && tp <= h.T) {
				mask[static_cast<std::size_t>(tp - 1)] = 1;
			}
		}
	}
	return mask;
}

bool worker_can_take(const RosterWorker& worker,
                     int candidate,
                     const std::vector<ShiftSchedule>& schedules,
                     const std::vector<ShiftPattern>& patterns,
                     const Stage2Policy& policy,
                     const Horizon& horizon,
                     OverlapMode mode,
                     const DayOffBlocks* blocks) {
	if (policy.max_shifts_b &&
	    static_cast<int>(worker.schedule_ids.size()) + 1 > *policy.max_shifts_b) {
		return false;
	}
	if (policy.max_hours_H) {
		int total = patterns[static_cast<std::size_t>(
		                         schedules[static_cast<std::size_t>(candidate)].pattern_id)]
		                .length();
		for (int v : worker.schedule_ids) {
			total += patterns[static_cast<std::size_t>(
			                      schedules[static_cast<std::size_t>(v)].pattern_id)]
			             .length();
		}
		if (total > *policy.max_hours_H) {
			return false;
		}
	}
	for (int v : worker.schedule_ids) {
		if (schedules_overlap(schedules[static_cast<std::size_t>(v)],
		                      schedules[static_cast<std::size_t>(candidate)], patterns,
		                      policy.rest_gap_g, horizon.T, mode)) {
			return false;
		}
	}
	if (policy.days_off == DaysOffPolicy::TwoConsecutive && blocks) {
		// some off block must stay clear of every schedule
		for (int d = 1; d <= blocks->count; ++d) {
			bool clear = true;
			for (std::size_t i = 0; i <= worker.schedule_ids.size() && clear; ++i) {
				int v = i < worker.schedule_ids.size() ? worker.schedule_ids[i] : candidate;
				const auto& s = schedules[static_cast<std::size_t>(v)];
				int mv = patterns[static_cast<std::size_t>(s.pattern_id)].length();
				bool hit = mode == OverlapMode::Cyclic
				               ? circular_intersect(s.start_tp, mv, blocks->start_tp(d),
				                                    blocks->span_tp(), horizon.T)
				               : linear_intersect(s.start_tp, mv, blocks->start_tp(d),
				                                  blocks->span_tp());
				clear = !hit;
			}
			if (clear) {
				return true;
			}
		}
		return false;
	}
	if (policy.days_off == DaysOffPolicy::TwoTotal) {
		int tpd = horizon.tps_per_day();
		std::set<int> days;
		for (std::size_t i = 0; i <= worker.schedule_ids.size(); ++i) {
			int v = i < worker.schedule_ids.size() ? worker.schedule_ids[i] : candidate;
			const auto& s = schedules[static_cast<std::size_t>(v)];
			int mv = patterns[static_cast<std::size_t>(s.pattern_id)].length();
			for (int t = 0; t < mv; ++t) {
				days.insert((wrap(s.start_tp + t, horizon.T) - 1) / tpd);
			}
		}
		if (static_cast<int>(days.size()) > horizon.days() - 2) {
			return false;
		}
	}
	return true;
}

}  // namespace

Roster greedy_first_fit(const std::vector<ShiftSchedule>& schedules,
                        const std::vector<ShiftPattern>& patterns,
                        const Stage2Policy& policy,
                        const Horizon& horizon,
                        OverlapMode mode) {
	Roster roster;
	DayOffBlocks blocks{};
	const DayOffBlocks* blocks_ptr = nullptr;
	if (policy.days_off == DaysOffPolicy::TwoConsecutive) {
		blocks = day_off_blocks(horizon, mode);
		blocks_ptr = &blocks;
	}
	for (std::size_t v = 0; v < schedules.size(); ++v) {
		bool placed = false;
		for (auto& worker : roster.workers) {
			if (worker_can_take(worker, static_cast<int>(v), schedules, patterns, policy, horizon,
			                    mode, blocks_ptr)) {
				worker.schedule_ids.push_back(static_cast<int>(v));
				placed = true;
				break;
			}
		}
		if (!placed) {
			RosterWorker fresh;
			fresh.index = static_cast<int>(roster.workers.size()) + 1;
			if (!worker_can_take(fresh, static_cast<int>(v), schedules, patterns, policy, horizon,
			                     mode, blocks_ptr)) {
				throw InfeasibleError("greedy_first_fit: schedule " + std::to_string(v + 1) +
				                      " violates the policy even on a fresh worker");
			}
			fresh.schedule_ids.push_back(static_cast<int>(v));
			roster.workers.push_back(std::move(fresh));
		}
	}
	if (blocks_ptr) {
		for (auto& worker : roster.workers) {
			for (int d = 1; d <= blocks.count && !worker.day_off; ++d) {
				bool clear = true;
				for (int v : worker.schedule_ids) {
					const auto& s = schedules[static_cast<std::size_t>(v)];
					int mv = patterns[static_cast<std::size_t>(s.pattern_id)].length();
					bool hit = mode == OverlapMode::Cyclic
					               ? circular_intersect(s.start_tp, mv, blocks.start_tp(d),
					                                    blocks.span_tp(), horizon.T)
					               : linear_intersect(s.start_tp, mv, blocks.start_tp(d),
					                                  blocks.span_tp());
					if (hit) {
						clear = false;
						break;
					}
				}
				if (clear) {
					worker.day_off = d;
				}
			}
		}
	}
	roster.workers_used = static_cast<int>(roster.workers.size());
	return roster;
}

Stage2Outcome solve_stage2(const std::vector<ShiftSchedule>& schedules,
                           const std::vector<ShiftPattern>& patterns,
                           const Stage2Policy& policy,
                           const Horizon& horizon,
                           const Stage2Options& opts) {
	Stage2Outcome out;
	if (schedules.empty()) {
		return out;
	}
	Roster greedy = greedy_first_fit(schedules, patterns, policy, horizon, opts.overlap_mode);
	// nonincreasing load order keeps the greedy roster valid under the
	// symmetry-breaking rows
	std::stable_sort(greedy.workers.begin(), greedy.workers.end(),
	                 [](const RosterWorker& a, const RosterWorker& b) {
		                 return a.schedule_ids.size() > b.schedule_ids.size();
	                 });
	for (std::size_t i = 0; i < greedy.workers.size(); ++i) {
		greedy.workers[i].index = static_cast<int>(i) + 1;
	}

	int w = static_cast<int>(greedy.workers.size());
	if (policy.max_workers_w) {
		w = std::min(w, *policy.max_workers_w);
	}
	Stage2Model built = build_stage2(schedules, patterns, policy, w, horizon, opts.overlap_mode,
	                                 opts.row_budget);
	Stage2PairCounts pairs =
	    count_stage2_pairs(schedules, patterns, policy, horizon, opts.overlap_mode);
	out.model_size =
	    estimate_stage2_size(built.tau, w, policy, pairs, horizon, opts.overlap_mode);

	ip::SolveOptions solve_opts = opts.solve;
	if (static_cast<int>(greedy.workers.size()) <= w) {
		std::vector<double> warm(static_cast<std::size_t>(built.model.num_vars()), 0.0);
		for (const auto& worker : greedy.workers) {
			for (int v : worker.schedule_ids) {
				warm[static_cast<std::size_t>(built.z_var(worker.index, v))] = 1.0;
			}
			if (worker.day_off) {
				warm[static_cast<std::size_t>(
				    built.z_var(worker.index, built.tau + *worker.day_off - 1))] = 1.0;
			}
		}
		// unused workers still need their day-off dummy under Eq. 16
		if (built.dummies > 0) {
			for (int u = static_cast<int>(greedy.workers.size()) + 1; u <= w; ++u) {
				warm[static_cast<std::size_t>(built.z_var(u, built.tau))] = 1.0;
			}
		}
		warm[static_cast<std::size_t>(built.xi_var)] = greedy.workers_used;
		solve_opts.warm_values = std::move(warm);
	}

	ip::SolveResult res = ip::solve(built.model, solve_opts);
	if (res.status == ip::SolveStatus::Infeasible || !res.incumbent) {
		std::string hint;
		if (policy.max_shifts_b &&
		    static_cast<std::int64_t>(*policy.max_shifts_b) * w < built.tau) {
			hint = " (b*w < tau: the worker cap cannot carry all schedules)";
		}
		throw InfeasibleError("stage2: assignment infeasible" + hint);
	}
	const auto& x = res.incumbent->values;
	Roster roster;
	for (int u = 1; u <= w; ++u) {
		RosterWorker worker;
		worker.index = u;
		for (int v = 0; v < built.tau; ++v) {
			if (std::llround(x[static_cast<std::size_t>(built.z_var(u, v))]) == 1) {
				worker.schedule_ids.push_back(v);
			}
		}
		for (int d = 0; d < built.dummies; ++d) {
			if (std::llround(x[static_cast<std::size_t>(built.z_var(u, built.tau + d))]) == 1) {
				worker.day_off = d + 1;
			}
		}
		if (!worker.schedule_ids.empty()) {
			roster.workers.push_back(std::move(worker));
		}
	}
	roster.workers_used = 0;
	for (const auto& worker : roster.workers) {
		roster.workers_used = std::max(roster.workers_used, worker.index);
	}
	roster.violations =
	    validate_roster(roster, schedules, patterns, policy, horizon, opts.overlap_mode);
	if (!roster.violations.empty()) {
		throw std::runtime_error("stage2: solver produced an invalid roster: " +
		                         roster.violations.front());
	}
	out.roster = std::move(roster);
	out.objective = res.incumbent->objective;
	out.lower_bound = std::min(res.best_bound, out.objective);
	out.status = res.status;
	out.stats = res.stats;
	return out;
}

std::vector<std::string> validate_roster(const Roster& roster,
                                         const std::vector<ShiftSchedule>& schedules,
                                         const std::vector<ShiftPattern>& patterns,
                                         const Stage2Policy& policy,
                                         const Horizon& horizon,
                                         OverlapMode mode) {
	std::vector<std::string> out;
	std::vector<int> used(schedules.size(), 0);
	std::set<int> indices;
	for (const auto& worker : roster.workers) {
		if (worker.index < 1 || !indices.insert(worker.index).second) {
			out.push_back("worker " + std::to_string(worker.index) + ": bad or duplicate index");
		}
		for (int v : worker.schedule_ids) {
			if (v < 0 || v >= static_cast<int>(schedules.size())) {
				out.push_back("worker " + std::to_string(worker.index) + ": unknown schedule " +
				              std::to_string(v));
			} else {
				++used[static_cast<std::size_t>(v)];
			}
		}
	}
	for (std::size_t v = 0; v < used.size(); ++v) {
		if (used[v] != 1) {
			out.push_back("schedule " + std::to_string(v + 1) + " assigned " +
			              std::to_string(used[v]) + " times");
		}
	}

	DayOffBlocks blocks{};
	bool with_blocks = policy.days_off == DaysOffPolicy::TwoConsecutive;
	if (with_blocks) {
		blocks = day_off_blocks(horizon, mode);
	}
	for (const auto& worker : roster.workers) {
		std::string tag = "worker " + std::to_string(worker.index) + ": ";
		if (policy.max_shifts_b &&
		    static_cast<int>(worker.schedule_ids.size()) > *policy.max_shifts_b) {
			out.push_back(tag + "more than b shifts");
		}
		if (policy.max_hours_H) {
			int total = 0;
			for (int v : worker.schedule_ids) {
				total += patterns[static_cast<std::size_t>(
				                      schedules[static_cast<std::size_t>(v)].pattern_id)]
				             .length();
			}
			if (total > *policy.max_hours_H) {
				out.push_back(tag + "total TPs exceed H");
			}
		}
		// rest period, from padded footprints rather than the index arithmetic
		for (std::size_t i = 0; i < worker.schedule_ids.size(); ++i) {
			for (std::size_t j = i + 1; j < worker.schedule_ids.size(); ++j) {
				const auto& a = schedules[static_cast<std::size_t>(worker.schedule_ids[i])];
				const auto& b = schedules[static_cast<std::size_t>(worker.schedule_ids[j])];
				auto mask_a = footprint_mask(a, patterns, policy.rest_gap_g, horizon, mode);
				auto mask_b = footprint_mask(b, patterns, policy.rest_gap_g, horizon, mode);
				bool clash = false;
				if (b.start_tp >= 1 && b.start_tp <= horizon.T) {
					clash = mask_a[static_cast<std::size_t>(b.start_tp - 1)] != 0;
				}
				if (a.start_tp >= 1 && a.start_tp <= horizon.T) {
					clash = clash || mask_b[static_cast<std::size_t>(a.start_tp - 1)] != 0;
				}
				if (clash) {
					out.push_back(tag + "rest gap violated between schedules " +
					              std::to_string(worker.schedule_ids[i] + 1) + " and " +
					              std::to_string(worker.schedule_ids[j] + 1));
				}
			}
		}
		if (with_blocks) {
			if (!worker.day_off) {
				out.push_back(tag + "no day-off block");
			} else if (*worker.day_off < 1 || *worker.day_off > blocks.count) {
				out.push_back(tag + "day-off block out of range");
			} else {
				std::vector<char> block_mask(static_cast<std::size_t>(horizon.T), 0);
				for (int t = 0; t < blocks.span_tp(); ++t) {
					int tp = blocks.start_tp(*worker.day_off) + t;
					if (mode == OverlapMode::Cyclic) {
						block_mask[static_cast<std::size_t>(wrap(tp, horizon.T) - 1)] = 1;
					} else if (tp >= 1 && tp <= horizon.T) {
						block_mask[static_cast<std::size_t>(tp - 1)] = 1;
					}
				}
				for (int v : worker.schedule_ids) {
					auto mask = footprint_mask(schedules[static_cast<std::size_t>(v)], patterns, 0,
					                           horizon, mode);
					for (int tp = 0; tp < horizon.T; ++tp) {
						if (mask[static_cast<std::size_t>(tp)] && block_mask[static_cast<std::size_t>(tp)]) {
							out.push_back(tag + "schedule " + std::to_string(v + 1) +
							              " overlaps the day-off block");
							break;
						}
					}
				}
			}
		}
		if (policy.days_off == DaysOffPolicy::TwoTotal) {
			int tpd = horizon.tps_per_day();
			std::set<int> days;
			for (int v : worker.schedule_ids) {
				auto mask = footprint_mask(schedules[static_cast<std::size_t>(v)], patterns, 0,
				                           horizon, mode);
				for (int tp = 0; tp < horizon.T; ++tp) {
					if (mask[static_cast<std::size_t>(tp)]) {
						days.insert(tp / tpd);
					}
				}
			}
			if (static_cast<int>(days.size()) > horizon.days() - 2) {
				out.push_back(tag + "fewer than two days off");
			}
		}
	}
	int max_index = 0;
	for (const auto& worker : roster.workers) {
		max_index = std::max(max_index, worker.index);
	}
	if (roster.workers_used != max_index) {
		out.push_back("workers_used != max assigned worker index");
	}
	return out;
}

}  // namespace wsched
