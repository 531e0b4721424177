#include "wsched/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wsched {

namespace {

constexpr int kSimT = 672;
constexpr int kSimOmega = 15;
constexpr int kTpsPerDay = 96;

int rand_int(std::mt19937_64& rng, int lo, int hi) {
	return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double task_hours(std::int64_t level_sum, int omega) {
	return static_cast<double>(level_sum) * omega / 60.0;
}

struct Generated {
	Task task;
	double hours;
};

// flat resource profile
Generated make_task(int id, int duration, int level, int window_lo, int window_hi) {
	Generated g;
	g.task.id = id;
	g.task.duration = duration;
	g.task.resource.assign(static_cast<std::size_t>(duration), level);
	g.task.window_lo = window_lo;
	g.task.window_hi = window_hi;
	g.hours = task_hours(static_cast<std::int64_t>(duration) * level, kSimOmega);
	return g;
}

// start window around a nominal start, clipped to keep the window linear
std::pair<int, int> window_around(int nominal, int width, int T) {
	int lo = std::max(1, nominal - width / 2);
	int hi = std::min(T, lo + width);
	lo = std::min(lo, hi);
	return {lo, hi};
}

int clustered_nominal(std::mt19937_64& rng, bool peak) {
	int day = rand_int(rng, 0, 6);
	int tp_in_day;
	if (peak) {
		// rush anchors around 10:00 and 16:00
		int anchor = rand_int(rng, 0, 1) == 0 ? 40 : 64;
		tp_in_day = std::clamp(anchor + rand_int(rng, -6, 6), 1, kTpsPerDay);
	} else {
		tp_in_day = rand_int(rng, 28, 60);  // business hours 7:00..15:00
	}
	return day * kTpsPerDay + tp_in_day;
}

int uniform_nominal(std::mt19937_64& rng) { return rand_int(rng, 1, kSimT); }

}  // namespace

MixSpec mix_spec(SimMix mix) {
	switch (mix) {
		case SimMix::S1: return {{81, 17, 2}, false};
		case SimMix::S2: return {{79, 17, 4}, false};
		case SimMix::S3: return {{72, 16, 12}, false};
		case SimMix::S4: return {{81, 17, 2}, true};
		case SimMix::S5: return {{79, 17, 4}, true};
		case SimMix::S6: return {{72, 16, 12}, true};
	}
	throw std::invalid_argument("mix_spec: unknown mix");
}

double sim_target_hours(SimSize size) {
	switch (size) {
		case SimSize::Small: return 600;
		case SimSize::Medium: return 1000;
		case SimSize::Large: return 1400;
	}
	throw std::invalid_argument("sim_target_hours: unknown size");
}

Instance simulate(const SimConfig& config) {
	const MixSpec mix = mix_spec(config.mix);
	const SimKnobs& k = config.knobs;
	WindowMode mode = config.window_mode.value_or(
	    mix.by_tasks ? WindowMode::UniformAcrossDays : WindowMode::Clustered);
	const double target = sim_target_hours(config.size);
	const double tol = k.demand_tolerance;

	std::mt19937_64 rng(config.seed);
	Instance inst;
	inst.horizon = {kSimT, kSimOmega, true};
	inst.pattern_family = Family::FX29;
	inst.policy.max_shifts_b = 5;
	inst.policy.rest_gap_g = 4 * 60 / kSimOmega;  // 4 hours between shifts

	auto nominal_for = [&](bool peak) {
		return mode == WindowMode::Clustered ? clustered_nominal(rng, peak) : uniform_nominal(rng);
	};

	int next_id = 1;
	double total = 0;
	std::array<double, 3> type_hours{0, 0, 0};
	std::array<int, 3> type_counts{0, 0, 0};

	// expected hours per task of each type under the knob defaults, used to
	// convert count shares into a task budget
	auto avg_hours = [&](int type) {
		switch (type) {
			case 0:
				return (k.day_duration_min + k.day_duration_max) / 2.0 *
				       (k.day_level_min + k.day_level_max) / 2.0 * kSimOmega / 60.0;
			case 1:
				return (k.peak_duration_min + k.peak_duration_max) / 2.0 *
				       (k.peak_level_min + k.peak_level_max) / 2.0 * kSimOmega / 60.0;
			default:
				return (k.prec_duration_min + k.prec_duration_max) / 2.0 *
				       (k.prec_level_min + k.prec_level_max) / 2.0 * kSimOmega / 60.0;
		}
	};
	std::array<double, 3> budget_hours;
	if (!mix.by_tasks) {
		for (int t = 0; t < 3; ++t) {
			budget_hours[static_cast<std::size_t>(t)] =
			    target * mix.percent[static_cast<std::size_t>(t)] / 100.0;
		}
	} else {
		double weighted = 0;
		for (int t = 0; t < 3; ++t) {
			weighted += mix.percent[static_cast<std::size_t>(t)] / 100.0 * avg_hours(t);
		}
		double n_tasks = target / weighted;
		for (int t = 0; t < 3; ++t) {
			budget_hours[static_cast<std::size_t>(t)] =
			    n_tasks * mix.percent[static_cast<std::size_t>(t)] / 100.0 * avg_hours(t);
		}
	}

	auto add_day_or_peak = [&](int type) {
		bool peak = type == 1;
		int dur = peak ? rand_int(rng, k.peak_duration_min, k.peak_duration_max)
		               : rand_int(rng, k.day_duration_min, k.day_duration_max);
		int lvl = peak ? rand_int(rng, k.peak_level_min, k.peak_level_max)
		               : rand_int(rng, k.day_level_min, k.day_level_max);
		// shrink the last task of a type so its budget is not overshot
		double remaining = budget_hours[static_cast<std::size_t>(type)] -
		                   type_hours[static_cast<std::size_t>(type)];
		int max_dur = static_cast<int>(remaining * 60 / kSimOmega / lvl);
		int min_dur = peak ? k.peak_duration_min : k.day_duration_min;
		if (max_dur < min_dur) {
			return false;
		}
		dur = std::min(dur, max_dur);
		auto [lo, hi] = window_around(nominal_for(peak),
		                              rand_int(rng, k.window_width_min, k.window_width_max), kSimT);
		Generated g = make_task(next_id++, dur, lvl, lo, hi);
		inst.tasks.push_back(g.task);
		type_hours[static_cast<std::size_t>(type)] += g.hours;
		type_counts[static_cast<std::size_t>(type)] += 1;
		total += g.hours;
		return true;
	};

	auto add_chain = [&]() {
		double remaining = budget_hours[2] - type_hours[2];
		int len = rand_int(rng, k.chain_len_min, k.chain_len_max);
		int nominal = nominal_for(false);
		int cursor = std::min(nominal, kSimT / 2);  // room for the whole chain
		std::vector<Task> chain;
		double chain_hours = 0;
		for (int i = 0; i < len; ++i) {
			int dur = rand_int(rng, k.prec_duration_min, k.prec_duration_max);
			int lvl = rand_int(rng, k.prec_level_min, k.prec_level_max);
			if (chain_hours + static_cast<double>(dur) * lvl * kSimOmega / 60.0 >
			        remaining + 1e-9 &&
			    i >= k.chain_len_min) {
				break;
			}
			auto [lo, hi] = window_around(
			    cursor, rand_int(rng, k.window_width_min, k.window_width_max), kSimT);
			// keep the nominal start inside the window and after the predecessor
			lo = std::min(lo, cursor);
			hi = std::max(hi, cursor);
			Generated g = make_task(next_id++, dur, lvl, lo, hi);
			g.task.window_lo = lo;
			g.task.window_hi = hi;
			chain.push_back(g.task);
			chain_hours += g.hours;
			cursor += dur + rand_int(rng, 0, 4);  // nominal successor start
			if (cursor > kSimT) {
				break;
			}
		}
		if (chain.size() < 2) {
			next_id -= static_cast<int>(chain.size());
			return false;
		}
		for (std::size_t i = 0; i < chain.size(); ++i) {
			inst.tasks.push_back(chain[i]);
			if (i > 0) {
				inst.precedence.emplace_back(chain[i - 1].id, chain[i].id);
			}
		}
		type_hours[2] += chain_hours;
		type_counts[2] += static_cast<int>(chain.size());
		total += chain_hours;
		return true;
	};

	// precedence chains first (their budget is smallest), then peaks, then
	// day-long tasks fill the bulk
	while (type_hours[2] + 0.5 < budget_hours[2]) {
		if (!add_chain()) {
			break;
		}
	}
	while (type_hours[1] + 0.25 < budget_hours[1]) {
		if (!add_day_or_peak(1)) {
			break;
		}
	}
	while (type_hours[0] + 0.25 < budget_hours[0]) {
		if (!add_day_or_peak(0)) {
			break;
		}
	}
	// top up with small day-long tasks until the grand total is inside tolerance
	while (total < target * (1 - tol) + 1) {
		int dur = k.day_duration_min;
		int lvl = k.day_level_min;
		auto [lo, hi] = window_around(nominal_for(false),
		                              rand_int(rng, k.window_width_min, k.window_width_max), kSimT);
		Generated g = make_task(next_id++, dur, lvl, lo, hi);
		inst.tasks.push_back(g.task);
		type_hours[0] += g.hours;
		total += g.hours;
	}
	if (total > target * (1 + tol)) {
		throw std::runtime_error("simulate: generated demand overshoots the tolerance");
	}
	auto violations = validate(inst);
	if (!violations.empty()) {
		throw std::runtime_error("simulate: generated instance invalid: " + violations.front());
	}
	return inst;
}

Instance emergency_like(double scale) {
	if (!(scale > 0) || scale > 1) {
		throw std::invalid_argument("emergency_like: scale must be in (0, 1]");
	}
	const int K = static_cast<int>(std::floor(588 * scale));
	int chain_tasks = static_cast<int>(std::floor(116 * scale));
	std::mt19937_64 rng(108);

	Instance inst;
	inst.horizon = {kSimT, kSimOmega, true};
	inst.pattern_family = Family::FX29;
	inst.policy.max_shifts_b = 5;
	inst.policy.rest_gap_g = 4 * 60 / kSimOmega;

	// arrivals lean towards daytime
	auto arrival = [&]() {
		int day = rand_int(rng, 0, 6);
		int tp;
		if (rand_int(rng, 0, 9) < 7) {
			tp = rand_int(rng, 25, 88);  // 6:00..22:00
		} else {
			tp = rand_int(rng, 1, 96);
		}
		return day * kTpsPerDay + tp;
	};

	int n_chains = chain_tasks >= 2 ? std::min(3, chain_tasks / 2) : 0;
	std::vector<int> chain_sizes;
	if (n_chains > 0) {
		int base = chain_tasks / n_chains;
		for (int c = 0; c < n_chains; ++c) {
			chain_sizes.push_back(base + (c < chain_tasks % n_chains ? 1 : 0));
		}
	} else {
		chain_tasks = 0;
	}

	int next_id = 1;
	for (int size : chain_sizes) {
		int cursor = std::min(arrival(), kSimT - size * 16);
		cursor = std::max(cursor, 1);
		int prev_id = -1;
		for (int i = 0; i < size; ++i) {
			int dur = rand_int(rng, 4, 12);
			Task t;
			t.id = next_id++;
			t.duration = dur;
			t.resource.assign(static_cast<std::size_t>(dur), 1);
			int width = rand_int(rng, 4, 16);
			t.window_lo = std::max(1, cursor - width / 2);
			t.window_hi = std::min(kSimT, std::max(cursor, t.window_lo + width));
			t.window_lo = std::min(t.window_lo, cursor);
			t.window_hi = std::max(t.window_hi, cursor);
			inst.tasks.push_back(t);
			if (prev_id > 0) {
				inst.precedence.emplace_back(prev_id, t.id);
			}
			prev_id = t.id;
			cursor += dur + rand_int(rng, 0, 3);
			if (cursor > kSimT) {
				cursor = kSimT;
			}
		}
	}
	for (int i = chain_tasks; i < K; ++i) {
		int dur = rand_int(rng, 4, 12);
		Task t;
		t.id = next_id++;
		t.duration = dur;
		t.resource.assign(static_cast<std::size_t>(dur), 1);
		int start = arrival();
		int width = rand_int(rng, 0, 4);  // live-data shape: narrow windows
		t.window_lo = std::max(1, std::min(start, kSimT));
		t.window_hi = std::min(kSimT, t.window_lo + width);
		inst.tasks.push_back(t);
	}
	auto violations = validate(inst);
	if (!violations.empty()) {
		throw std::runtime_error("emergency_like: generated instance invalid: " +
		                         violations.front());
	}
	return inst;
}

}  // namespace wsched
