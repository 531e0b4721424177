#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsched/horizon.hpp"

namespace wsched {

enum class BreakKind { Lunch, Tea, Relief };

struct BreakMeta {
	BreakKind kind;
	int position;  // first cell of the break, 1-based within the pattern
	int span_tp;   // cells occupied
	bool half;     // true: break takes half the TP (cell value 0.5)

	bool operator==(const BreakMeta&) const = default;
};

// Availability vector over consecutive TPs. Cells are stored in half units:
// 0 = break, 1 = half-TP tea break (worker available 0.5), 2 = work.
struct ShiftPattern {
	std::vector<std::int8_t> cells_half;
	std::vector<BreakMeta> breaks;

	int length() const { return static_cast<int>(cells_half.size()); }
	double cell(int t) const { return cells_half[static_cast<std::size_t>(t - 1)] / 2.0; }
	std::int64_t work_half() const;  // sum of cells, half units
	// Work content in TPs (e.g. 15.0 for an FX260 pattern).
	double work_tps() const { return static_cast<double>(work_half()) / 2.0; }

	bool operator==(const ShiftPattern&) const = default;
};

// A pattern anchored at a start TP of the horizon.
struct ShiftSchedule {
	int pattern_id = 0;  // index into a pattern set, 0-based
	int start_tp = 1;

	bool operator==(const ShiftSchedule&) const = default;
};

struct BreakSpec {
	BreakKind kind;
	int count;    // how many of these per shift
	int span_tp;  // cells occupied by one break
	bool half;    // cell value 0.5 instead of 0
};

// Breaks may depend on shift length, so a rule set is a list of length classes.
struct LengthClass {
	int sl_min;
	int sl_max;
	std::vector<BreakSpec> breaks;
};

// How the inter-break gap is measured when tea breaks occupy half a TP.
enum class GapMode {
	WholeTp,     // a tea blocks its whole TP for gap purposes
	PairedHalf,  // earlier tea sits in the first 15 min of its TP, later tea in the last
	FreeHalf,    // each tea may sit in either half; a pattern is admissible if some placement works
};

enum class BreakPlacement {
	EnumerateAll,  // every admissible placement yields a pattern
	Centered,      // breaks are placed deterministically at segment centers
};

struct PatternRuleSet {
	int omega = 30;
	std::vector<LengthClass> classes;
	int head_protect = 0;   // min work TPs before the first break
	int tail_protect = 0;   // min work TPs after the last break
	int gap_minutes = 0;    // min gap between successive break blocks
	GapMode gap_mode = GapMode::WholeTp;
	// When true, a break directly adjacent to another merges with it into a
	// single block and the gap rule applies between blocks only.
	bool merge_adjacent = false;
	BreakPlacement placement = BreakPlacement::EnumerateAll;
	std::string doc;
};

enum class Family { FX260, FL15, FL135, FX29, Custom };

std::optional<Family> family_from_string(const std::string& name);
std::string family_name(Family f);

// Built-in rule sets. The FX260 configuration is the one calibrated to
// reproduce the 260-pattern count; its doc string records the interpretation.
PatternRuleSet fx260_rules();
PatternRuleSet fl15_rules();
PatternRuleSet fl135_rules();
PatternRuleSet fx29_rules();
PatternRuleSet family_rules(Family f);

// All distinct patterns satisfying the rules, ordered shorter-first then
// lexicographically on cells. Contradictory rules give an empty list; invalid
// rule fields (sl_min > sl_max, nonpositive spans) throw std::invalid_argument.
std::vector<ShiftPattern> generate_patterns(const PatternRuleSet& rules);
std::vector<ShiftPattern> generate_family(Family f);

struct DailySchedule {
	int pattern_index;  // 0-based
	int start;          // daily start TP in [1, day_length]
};

// All (pattern, daily start) pairs with start in [start_lo, start_hi]; when
// latest_end_tp is set, the shift must also end within the day by that TP.
std::vector<DailySchedule> enumerate_daily_schedules(const std::vector<ShiftPattern>& patterns,
                                                     int start_lo,
                                                     int start_hi,
                                                     int day_length,
                                                     std::optional<int> latest_end_tp = std::nullopt);

// Check-in counter preset: shifts of 6..20 TPs without breaks that must start
// and end between 4 am and 9 pm of a 48-TP day. Yields 330 daily schedules.
struct DailyPreset {
	std::vector<ShiftPattern> patterns;
	int start_lo;
	int start_hi;
	int day_length;
	std::optional<int> latest_end_tp;
};
DailyPreset stolletz_preset();

// Supply contribution of pattern s anchored at start_tp (Eq. wrap placement).
PeriodVector pattern_supply_footprint(const ShiftPattern& s, int start_tp, const Horizon& h);

}  // namespace wsched
