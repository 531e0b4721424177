#include "wsched/horizon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wsched {

std::vector<std::string> horizon_violations(const Horizon& h) {
	std::vector<std::string> out;
	if (h.T < 1) {
		out.push_back("horizon: T must be >= 1");
	}
	static const int allowed[] = {5, 10, 15, 20, 30, 60};
	if (std::find(std::begin(allowed), std::end(allowed), h.omega) == std::end(allowed)) {
		out.push_back("horizon: omega must be one of 5,10,15,20,30,60 minutes");
	}
	return out;
}

int wrap(int j, int T) {
	int r = (j - 1) % T;
	if (r < 0) {
		r += T;
	}
	return r + 1;
}

PeriodVector PeriodVector::from_ints(const std::vector<std::int64_t>& v) {
	PeriodVector p(static_cast<int>(v.size()));
	for (std::size_t i = 0; i < v.size(); ++i) {
		p.half_[i] = 2 * v[i];
	}
	return p;
}

PeriodVector PeriodVector::from_halves(std::vector<std::int64_t> halves) {
	PeriodVector p;
	p.half_ = std::move(halves);
	return p;
}

std::int64_t PeriodVector::total_half() const {
	return std::accumulate(half_.begin(), half_.end(), std::int64_t{0});
}

std::int64_t PeriodVector::max_half() const {
	if (half_.empty()) {
		return 0;
	}
	return *std::max_element(half_.begin(), half_.end());
}

bool PeriodVector::is_integral() const {
	return std::all_of(half_.begin(), half_.end(), [](std::int64_t h) { return h % 2 == 0; });
}

std::vector<std::int64_t> PeriodVector::to_ints() const {
	if (!is_integral()) {
		throw std::logic_error("PeriodVector: entries are not all integral");
	}
	std::vector<std::int64_t> out(half_.size());
	for (std::size_t i = 0; i < half_.size(); ++i) {
		out[i] = half_[i] / 2;
	}
	return out;
}

PeriodVector add_scaled(const PeriodVector& a, const PeriodVector& b, std::int64_t m) {
	if (a.size() != b.size()) {
		throw std::invalid_argument("add_scaled: length mismatch");
	}
	PeriodVector out(a.size());
	for (int j = 1; j <= a.size(); ++j) {
		out.set_half(j, a.half_at(j) + m * b.half_at(j));
	}
	return out;
}

bool dominates(const PeriodVector& supply, const PeriodVector& demand) {
	if (supply.size() != demand.size()) {
		throw std::invalid_argument("dominates: length mismatch");
	}
	for (int j = 1; j <= supply.size(); ++j) {
		if (supply.half_at(j) < demand.half_at(j)) {
			return false;
		}
	}
	return true;
}

}  // namespace wsched
