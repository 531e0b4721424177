#include "wsched/patterns.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wsched {

namespace {

struct PlacedBreak {
	BreakKind kind;
	int pos;   // first cell, 1-based
	int span;  // cells
	bool half;
};

struct TimeSpan {
	double begin;
	double end;
};

// Break intervals in minutes for a given tea placement choice. `late[i]`
// selects the last half of the TP for the i-th half break (in position order).
std::vector<TimeSpan> break_spans(const std::vector<PlacedBreak>& placed,
                                  int omega,
                                  const std::vector<bool>& late) {
	std::vector<TimeSpan> spans;
	spans.reserve(placed.size());
	std::size_t half_idx = 0;
	const double w = omega;
	for (const auto& b : placed) {
		double begin = (b.pos - 1) * w;
		double end = (b.pos + b.span - 1) * w;
		if (b.half) {
			if (late[half_idx]) {
				begin = end - w / 2.0;
			} else {
				end = begin + w / 2.0;
			}
			++half_idx;
		}
		spans.push_back({begin, end});
	}
	return spans;
}

bool gaps_ok(const std::vector<PlacedBreak>& placed,
             const std::vector<TimeSpan>& spans,
             const PatternRuleSet& rules) {
	// Group adjacent breaks of different kinds into blocks when merging is on;
	// the gap rule then applies between blocks only.
	std::vector<TimeSpan> blocks;
	for (std::size_t i = 0; i < placed.size(); ++i) {
		bool merged = false;
		if (!blocks.empty() && i > 0) {
			const auto& prev = placed[i - 1];
			bool adjacent = placed[i].pos == prev.pos + prev.span;
			if (adjacent && rules.merge_adjacent && placed[i].kind != prev.kind) {
				blocks.back().end = std::max(blocks.back().end, spans[i].end);
				merged = true;
			}
		}
		if (!merged) {
			blocks.push_back(spans[i]);
		}
	}
	for (std::size_t i = 1; i < blocks.size(); ++i) {
		if (blocks[i].begin - blocks[i - 1].end < rules.gap_minutes - 1e-9) {
			return false;
		}
	}
	return true;
}

bool placement_admissible(const std::vector<PlacedBreak>& placed, const PatternRuleSet& rules) {
	int n_half = static_cast<int>(std::count_if(
	    placed.begin(), placed.end(), [](const PlacedBreak& b) { return b.half; }));
	switch (rules.gap_mode) {
		case GapMode::WholeTp: {
			std::vector<bool> late;  // unused: spans stay whole-cell
			std::vector<TimeSpan> spans;
			spans.reserve(placed.size());
			for (const auto& b : placed) {
				spans.push_back({(b.pos - 1) * static_cast<double>(rules.omega),
				                 (b.pos + b.span - 1) * static_cast<double>(rules.omega)});
			}
			return gaps_ok(placed, spans, rules);
		}
		case GapMode::PairedHalf: {
			std::vector<bool> late(static_cast<std::size_t>(n_half), true);
			if (!late.empty()) {
				late.front() = false;  // earliest tea in the first 15 minutes of its TP
			}
			return gaps_ok(placed, break_spans(placed, rules.omega, late), rules);
		}
		case GapMode::FreeHalf: {
			int combos = 1 << n_half;
			for (int mask = 0; mask < combos; ++mask) {
				std::vector<bool> late(static_cast<std::size_t>(n_half));
				for (int i = 0; i < n_half; ++i) {
					late[static_cast<std::size_t>(i)] = (mask >> i) & 1;
				}
				if (gaps_ok(placed, break_spans(placed, rules.omega, late), rules)) {
					return true;
				}
			}
			return false;
		}
	}
	return false;
}

std::vector<std::int8_t> cells_of(int m, const std::vector<PlacedBreak>& placed) {
	std::vector<std::int8_t> cells(static_cast<std::size_t>(m), 2);
	for (const auto& b : placed) {
		if (b.half) {
			cells[static_cast<std::size_t>(b.pos - 1)] = 1;
		} else {
			for (int c = b.pos; c < b.pos + b.span; ++c) {
				cells[static_cast<std::size_t>(c - 1)] = 0;
			}
		}
	}
	return cells;
}

std::vector<BreakMeta> meta_of(std::vector<PlacedBreak> placed) {
	std::sort(placed.begin(), placed.end(),
	          [](const PlacedBreak& a, const PlacedBreak& b) { return a.pos < b.pos; });
	std::vector<BreakMeta> out;
	out.reserve(placed.size());
	for (const auto& b : placed) {
		out.push_back({b.kind, b.pos, b.span, b.half});
	}
	return out;
}

bool disjoint(const std::vector<PlacedBreak>& placed) {
	for (std::size_t i = 0; i < placed.size(); ++i) {
		for (std::size_t j = i + 1; j < placed.size(); ++j) {
			int a1 = placed[i].pos, a2 = placed[i].pos + placed[i].span - 1;
			int b1 = placed[j].pos, b2 = placed[j].pos + placed[j].span - 1;
			if (a1 <= b2 && b1 <= a2) {
				return false;
			}
		}
	}
	return true;
}

using PatternMap = std::map<std::vector<std::int8_t>, std::vector<BreakMeta>>;

void enumerate_placements(int m,
                          const std::vector<std::pair<BreakSpec, int>>& objs,  // spec + group id
                          std::size_t idx,
                          std::vector<PlacedBreak>& placed,
                          const PatternRuleSet& rules,
                          PatternMap& out) {
	if (idx == objs.size()) {
		if (disjoint(placed)) {
			auto sorted = placed;
			std::sort(sorted.begin(), sorted.end(),
			          [](const PlacedBreak& a, const PlacedBreak& b) { return a.pos < b.pos; });
			if (placement_admissible(sorted, rules)) {
				out.emplace(cells_of(m, sorted), meta_of(sorted));
			}
		}
		return;
	}
	const auto& [spec, group] = objs[idx];
	int lo = 1 + rules.head_protect;
	int hi = m - rules.tail_protect - spec.span_tp + 1;
	// identical breaks are interchangeable: force increasing positions inside a group
	if (idx > 0 && objs[idx - 1].second == group) {
		lo = std::max(lo, placed[idx - 1].pos + 1);
	}
	for (int p = lo; p <= hi; ++p) {
		placed.push_back({spec.kind, p, spec.span_tp, spec.half});
		enumerate_placements(m, objs, idx + 1, placed, rules, out);
		placed.pop_back();
	}
}

int centered(int a, int b) { return (a + b + 1) / 2; }

void place_centered(int m, const std::vector<BreakSpec>& specs, const PatternRuleSet& rules,
                    PatternMap& out) {
	std::vector<PlacedBreak> placed;
	std::vector<BreakSpec> halves;
	std::vector<BreakSpec> fulls;
	for (const auto& s : specs) {
		for (int c = 0; c < s.count; ++c) {
			(s.half ? halves : fulls).push_back(s);
		}
	}
	if (fulls.size() > 1 || halves.size() > 2) {
		throw std::invalid_argument("centered placement supports at most one full and two half breaks");
	}
	int main_pos = (m + 1) / 2;
	if (!fulls.empty()) {
		placed.push_back({fulls[0].kind, main_pos, fulls[0].span_tp, false});
		if (halves.size() == 2) {
			placed.push_back({halves[0].kind, centered(1, main_pos - 1), 1, true});
			placed.push_back(
			    {halves[1].kind, centered(main_pos + fulls[0].span_tp, m), 1, true});
		} else if (halves.size() == 1) {
			throw std::invalid_argument("centered placement: one full plus one half break is not supported");
		}
	} else if (halves.size() == 1) {
		placed.push_back({halves[0].kind, main_pos, 1, true});
	} else if (halves.size() == 2) {
		placed.push_back({halves[0].kind, centered(1, main_pos - 1), 1, true});
		placed.push_back({halves[1].kind, centered(main_pos + 1, m), 1, true});
	}
	for (const auto& b : placed) {
		if (b.pos <= rules.head_protect || b.pos + b.span - 1 > m - rules.tail_protect) {
			return;  // contradictory rules: skip, not an error
		}
	}
	if (!disjoint(placed)) {
		return;
	}
	out.emplace(cells_of(m, placed), meta_of(placed));
}

void validate_rules(const PatternRuleSet& rules) {
	if (!horizon_violations({1, rules.omega, true}).empty()) {
		throw std::invalid_argument("pattern rules: bad omega");
	}
	if (rules.classes.empty()) {
		throw std::invalid_argument("pattern rules: no length classes");
	}
	if (rules.head_protect < 0 || rules.tail_protect < 0 || rules.gap_minutes < 0) {
		throw std::invalid_argument("pattern rules: negative protection or gap");
	}
	for (const auto& cls : rules.classes) {
		if (cls.sl_min < 1 || cls.sl_min > cls.sl_max) {
			throw std::invalid_argument("pattern rules: sl_min must satisfy 1 <= sl_min <= sl_max");
		}
		for (const auto& b : cls.breaks) {
			if (b.count < 0 || b.span_tp < 1) {
				throw std::invalid_argument("pattern rules: break count/span out of range");
			}
			if (b.half && b.span_tp != 1) {
				throw std::invalid_argument("pattern rules: half breaks span exactly one TP");
			}
		}
	}
}

}  // namespace

std::int64_t ShiftPattern::work_half() const {
	return std::accumulate(cells_half.begin(), cells_half.end(), std::int64_t{0});
}

std::optional<Family> family_from_string(const std::string& name) {
	if (name == "FX260") return Family::FX260;
	if (name == "FL15") return Family::FL15;
	if (name == "FL135") return Family::FL135;
	if (name == "FX29") return Family::FX29;
	if (name == "CUSTOM") return Family::Custom;
	return std::nullopt;
}

std::string family_name(Family f) {
	switch (f) {
		case Family::FX260: return "FX260";
		case Family::FL15: return "FL15";
		case Family::FL135: return "FL135";
		case Family::FX29: return "FX29";
		case Family::Custom: return "CUSTOM";
	}
	return "?";
}

PatternRuleSet fx260_rules() {
	PatternRuleSet r;
	r.omega = 30;
	r.classes = {{18, 18,
	              {{BreakKind::Lunch, 1, 2, false}, {BreakKind::Tea, 2, 1, true}}}};
	r.head_protect = 3;   // no break in the first 90 minutes
	r.tail_protect = 1;   // a shift ends with work
	r.gap_minutes = 90;
	r.gap_mode = GapMode::WholeTp;
	r.merge_adjacent = true;
	r.placement = BreakPlacement::EnumerateAll;
	r.doc =
	    "9h shifts of 18 half-hour TPs, one 60-min lunch (two 0 cells) and two "
	    "15-min teas (0.5 cells). Calibrated interpretation: >=90 min between "
	    "successive break blocks with whole-TP accounting for teas, and a tea "
	    "directly adjacent to the lunch merges with it into one block. This is "
	    "the only interpretation among the exposed gap/tail options that yields "
	    "exactly 260 patterns; it is a calibration choice, not a stated rule.";
	return r;
}

PatternRuleSet fl15_rules() {
	PatternRuleSet r;
	r.omega = 30;
	r.classes = {
	    {6, 10, {}},
	    {11, 12, {{BreakKind::Relief, 1, 1, true}}},
	    {13, 16, {{BreakKind::Relief, 1, 1, false}}},
	    {17, 20, {{BreakKind::Relief, 1, 1, false}, {BreakKind::Relief, 2, 1, true}}},
	};
	r.head_protect = 1;
	r.tail_protect = 1;
	r.placement = BreakPlacement::Centered;
	r.doc =
	    "One pattern per length from 3h to 10h. Relief breaks grow with the "
	    "shift (none / one 15-min / one 30-min / two 15-min plus one 30-min) "
	    "and are placed at segment centers.";
	return r;
}

PatternRuleSet fl135_rules() {
	PatternRuleSet r;
	r.omega = 30;
	r.classes = {{6, 20, {{BreakKind::Lunch, 1, 1, false}}}};
	r.head_protect = 2;  // no break in the first hour
	r.tail_protect = 2;  // nor in the last hour
	r.placement = BreakPlacement::EnumerateAll;
	r.doc = "3h to 10h shifts with exactly one 30-min break, no break in the first or last hour.";
	return r;
}

PatternRuleSet fx29_rules() {
	PatternRuleSet r;
	r.omega = 15;
	r.classes = {{12, 40, {}}};
	r.placement = BreakPlacement::EnumerateAll;
	r.doc = "Break-free shifts of 3h to 10h on a 15-min grid, one pattern per length.";
	return r;
}

PatternRuleSet family_rules(Family f) {
	switch (f) {
		case Family::FX260: return fx260_rules();
		case Family::FL15: return fl15_rules();
		case Family::FL135: return fl135_rules();
		case Family::FX29: return fx29_rules();
		case Family::Custom: break;
	}
	throw std::invalid_argument("family_rules: CUSTOM requires an explicit rule set");
}

std::vector<ShiftPattern> generate_patterns(const PatternRuleSet& rules) {
	validate_rules(rules);
	int lo = rules.classes.front().sl_min;
	int hi = rules.classes.front().sl_max;
	for (const auto& cls : rules.classes) {
		lo = std::min(lo, cls.sl_min);
		hi = std::max(hi, cls.sl_max);
	}
	std::vector<ShiftPattern> out;
	for (int m = lo; m <= hi; ++m) {
		PatternMap of_len;
		for (const auto& cls : rules.classes) {
			if (m < cls.sl_min || m > cls.sl_max) {
				continue;
			}
			std::vector<std::pair<BreakSpec, int>> objs;
			int group = 0;
			for (const auto& spec : cls.breaks) {
				for (int c = 0; c < spec.count; ++c) {
					objs.emplace_back(spec, group);
				}
				++group;
			}
			if (rules.placement == BreakPlacement::Centered) {
				place_centered(m, cls.breaks, rules, of_len);
			} else if (objs.empty()) {
				of_len.emplace(cells_of(m, {}), std::vector<BreakMeta>{});
			} else {
				std::vector<PlacedBreak> placed;
				enumerate_placements(m, objs, 0, placed, rules, of_len);
			}
		}
		for (auto& [cells, meta] : of_len) {
			ShiftPattern p;
			p.cells_half = cells;
			p.breaks = meta;
			out.push_back(std::move(p));
		}
	}
	return out;
}

std::vector<ShiftPattern> generate_family(Family f) { return generate_patterns(family_rules(f)); }

std::vector<DailySchedule> enumerate_daily_schedules(const std::vector<ShiftPattern>& patterns,
                                                     int start_lo,
                                                     int start_hi,
                                                     int day_length,
                                                     std::optional<int> latest_end_tp) {
	if (day_length < 1 || start_lo < 1 || start_hi > day_length) {
		throw std::invalid_argument("enumerate_daily_schedules: bad start window");
	}
	std::vector<DailySchedule> out;
	for (int start = start_lo; start <= start_hi; ++start) {
		for (std::size_t i = 0; i < patterns.size(); ++i) {
			int end = start + patterns[i].length() - 1;
			if (latest_end_tp && end > *latest_end_tp) {
				continue;
			}
			out.push_back({static_cast<int>(i), start});
		}
	}
	return out;
}

DailyPreset stolletz_preset() {
	PatternRuleSet r;
	r.omega = 30;
	r.classes = {{6, 20, {}}};
	r.doc = "Break-free shifts of 3h to 10h on a 30-min grid; shifts start and end between 4 am and 9 pm.";
	DailyPreset preset;
	preset.patterns = generate_patterns(r);
	preset.start_lo = 9;    // 4:00
	preset.start_hi = 42;
	preset.day_length = 48;
	preset.latest_end_tp = 42;  // last TP ends 21:00
	return preset;
}

PeriodVector pattern_supply_footprint(const ShiftPattern& s, int start_tp, const Horizon& h) {
	if (start_tp < 1 || start_tp > h.T) {
		throw std::invalid_argument("pattern_supply_footprint: start outside horizon");
	}
	if (!h.cyclic && start_tp + s.length() - 1 > h.T) {
		throw std::invalid_argument("pattern_supply_footprint: pattern exceeds linear horizon");
	}
	PeriodVector out(h.T);
	for (int t = 1; t <= s.length(); ++t) {
		out.add_half(wrap(start_tp + t - 1, h.T), s.cells_half[static_cast<std::size_t>(t - 1)]);
	}
	return out;
}

}  // namespace wsched
