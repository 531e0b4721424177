#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wsched {

// Planning horizon: T time periods (TPs) of omega minutes each, cyclic by default.
struct Horizon {
	int T = 0;
	int omega = 30;
	bool cyclic = true;

	int tps_per_day() const { return 1440 / omega; }
	// Whole days in the horizon; -1 if T is not day-aligned.
	int days() const { return T % tps_per_day() == 0 ? T / tps_per_day() : -1; }

	bool operator==(const Horizon&) const = default;
};

// Empty when well-formed.
std::vector<std::string> horizon_violations(const Horizon& h);

// Maps any integer onto [1,T]: wrap(0)=T, wrap(T+1)=1.
int wrap(int j, int T);

// Per-TP quantities stored in half units (factor 2) so that tea-break
// contributions of 0.5 stay exact and dominance checks never see a float.
class PeriodVector {
public:
	PeriodVector() = default;
	explicit PeriodVector(int T) : half_(static_cast<std::size_t>(T), 0) {}

	static PeriodVector from_ints(const std::vector<std::int64_t>& v);
	static PeriodVector from_halves(std::vector<std::int64_t> halves);

	int size() const { return static_cast<int>(half_.size()); }

	// 1-based accessors.
	std::int64_t half_at(int j) const { return half_[static_cast<std::size_t>(j - 1)]; }
	void set_half(int j, std::int64_t h) { half_[static_cast<std::size_t>(j - 1)] = h; }
	void add_half(int j, std::int64_t h) { half_[static_cast<std::size_t>(j - 1)] += h; }

	double at(int j) const { return static_cast<double>(half_at(j)) / 2.0; }

	std::int64_t total_half() const;
	double total() const { return static_cast<double>(total_half()) / 2.0; }
	// Total expressed in worker-hours given the TP length.
	double total_worker_hours(int omega) const { return total() * omega / 60.0; }

	std::int64_t max_half() const;
	bool is_integral() const;
	// Rounds entries to integers; requires is_integral().
	std::vector<std::int64_t> to_ints() const;
	const std::vector<std::int64_t>& halves() const { return half_; }

	bool operator==(const PeriodVector&) const = default;

private:
	std::vector<std::int64_t> half_;
};

// a + m*b coordinatewise. Throws std::invalid_argument on length mismatch.
PeriodVector add_scaled(const PeriodVector& a, const PeriodVector& b, std::int64_t m);

// true iff supply_j >= demand_j for all j. Throws on length mismatch.
bool dominates(const PeriodVector& supply, const PeriodVector& demand);

}  // namespace wsched
