#include "lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsched::ip::detail {

namespace {
constexpr int kRefactorEvery = 64;
constexpr int kBlandAfter = 400;  // consecutive degenerate pivots before Bland's rule
}  // namespace

void LpProblem::add_row(const std::vector<LinTerm>& terms, Sense sense, double rhs_value) {
	int r = rows();
	for (const auto& t : terms) {
		struct_cols[static_cast<std::size_t>(t.var)].push_back({r, t.coeff});
	}
	switch (sense) {
		case Sense::LE:
			slack_lb.push_back(0);
			slack_ub.push_back(kInf);
			break;
		case Sense::GE:
			slack_lb.push_back(-kInf);
			slack_ub.push_back(0);
			break;
		case Sense::EQ:
			slack_lb.push_back(0);
			slack_ub.push_back(0);
			break;
	}
	rhs.push_back(rhs_value);
}

LpProblem build_lp(const Model& model, const std::vector<bool>& active, std::vector<int>* row_ids) {
	LpProblem lp;
	lp.n_struct = model.num_vars();
	lp.struct_cols.resize(static_cast<std::size_t>(lp.n_struct));
	lp.struct_lb.resize(static_cast<std::size_t>(lp.n_struct));
	lp.struct_ub.resize(static_cast<std::size_t>(lp.n_struct));
	lp.struct_obj.assign(static_cast<std::size_t>(lp.n_struct), 0.0);
	for (int i = 0; i < lp.n_struct; ++i) {
		lp.struct_lb[static_cast<std::size_t>(i)] = model.var(i).lower;
		lp.struct_ub[static_cast<std::size_t>(i)] = model.var(i).upper;
	}
	for (const auto& t : model.objective()) {
		lp.struct_obj[static_cast<std::size_t>(t.var)] += t.coeff;
	}
	for (int r = 0; r < model.num_constraints(); ++r) {
		if (!active[static_cast<std::size_t>(r)]) {
			continue;
		}
		if (row_ids) {
			row_ids->push_back(r);
		}
		lp.add_row(model.row(r).terms, model.row(r).sense, model.row(r).rhs);
	}
	return lp;
}

Simplex::Simplex(const LpProblem& lp) : lp_(&lp) {
	m_ = lp.rows();
	n_ = lp.cols();
	art_base_ = n_;
	lb_.resize(static_cast<std::size_t>(n_));
	ub_.resize(static_cast<std::size_t>(n_));
	obj_.assign(static_cast<std::size_t>(n_), 0.0);
	for (int j = 0; j < lp.n_struct; ++j) {
		lb_[static_cast<std::size_t>(j)] = lp.struct_lb[static_cast<std::size_t>(j)];
		ub_[static_cast<std::size_t>(j)] = lp.struct_ub[static_cast<std::size_t>(j)];
		obj_[static_cast<std::size_t>(j)] = lp.struct_obj[static_cast<std::size_t>(j)];
	}
	for (int r = 0; r < m_; ++r) {
		lb_[static_cast<std::size_t>(lp.n_struct + r)] = lp.slack_lb[static_cast<std::size_t>(r)];
		ub_[static_cast<std::size_t>(lp.n_struct + r)] = lp.slack_ub[static_cast<std::size_t>(r)];
	}
	x_.assign(static_cast<std::size_t>(n_), 0.0);
	basic_row_of_.assign(static_cast<std::size_t>(n_), -1);
}

void Simplex::set_struct_bounds(const std::vector<double>& lb, const std::vector<double>& ub) {
	for (int j = 0; j < lp_->n_struct; ++j) {
		lb_[static_cast<std::size_t>(j)] = lb[static_cast<std::size_t>(j)];
		ub_[static_cast<std::size_t>(j)] = ub[static_cast<std::size_t>(j)];
	}
}

void Simplex::set_objective(const std::vector<double>& struct_obj) {
	for (int j = 0; j < lp_->n_struct; ++j) {
		obj_[static_cast<std::size_t>(j)] = struct_obj[static_cast<std::size_t>(j)];
	}
}

const std::vector<Entry>& Simplex::column(int j) const {
	if (j < lp_->n_struct) {
		return lp_->struct_cols[static_cast<std::size_t>(j)];
	}
	if (j < n_) {
		// slack unit column, materialized lazily
		static thread_local std::vector<Entry> unit;
		unit.assign(1, {j - lp_->n_struct, 1.0});
		return unit;
	}
	return art_cols_[static_cast<std::size_t>(j - art_base_)];
}

void Simplex::factorize() {
	Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
	for (int r = 0; r < m_; ++r) {
		for (const auto& e : column(basic_[static_cast<std::size_t>(r)])) {
			B(e.row, r) = e.value;
		}
	}
	lu_.compute(B);
	etas_.clear();
	double min_diag = kInf;
	for (int i = 0; i < m_; ++i) {
		min_diag = std::min(min_diag, std::abs(lu_.matrixLU()(i, i)));
	}
	if (!(min_diag > 1e-12)) {
		throw std::runtime_error("simplex: singular basis");
	}
}

Eigen::VectorXd Simplex::ftran(Eigen::VectorXd v) const {
	Eigen::VectorXd x = lu_.solve(v);
	for (const auto& eta : etas_) {
		double xp = x(eta.pivot_row);
		if (xp != 0.0) {
			x += eta.u * xp;
		}
	}
	return x;
}

Eigen::VectorXd Simplex::btran(Eigen::VectorXd v) const {
	for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
		v(it->pivot_row) += it->u.dot(v);
	}
	return lu_.transpose().solve(v);
}

void Simplex::compute_basic_values() {
	Eigen::VectorXd r = Eigen::VectorXd::Zero(m_);
	for (int i = 0; i < m_; ++i) {
		r(i) = lp_->rhs[static_cast<std::size_t>(i)];
	}
	for (int j = 0; j < total_cols(); ++j) {
		if (status_[static_cast<std::size_t>(j)] == ColStatus::Basic) {
			continue;
		}
		double v = status_[static_cast<std::size_t>(j)] == ColStatus::AtLower ? col_lb(j) : col_ub(j);
		if (!std::isfinite(v)) {
			throw std::runtime_error("simplex: nonbasic column at infinite bound");
		}
		x_[static_cast<std::size_t>(j)] = v;
		if (v != 0.0) {
			for (const auto& e : column(j)) {
				r(e.row) -= e.value * v;
			}
		}
	}
	Eigen::VectorXd xb = ftran(r);
	for (int i = 0; i < m_; ++i) {
		x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] = xb(i);
	}
}

Eigen::VectorXd Simplex::dual_values(const std::vector<double>& costs) const {
	Eigen::VectorXd cb(m_);
	for (int i = 0; i < m_; ++i) {
		cb(i) = costs[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])];
	}
	return btran(std::move(cb));
}

double Simplex::reduced_cost(int j, const Eigen::VectorXd& y,
                             const std::vector<double>& costs) const {
	double d = costs[static_cast<std::size_t>(j)];
	for (const auto& e : column(j)) {
		d -= y(e.row) * e.value;
	}
	return d;
}

void Simplex::install_slack_basis() {
	basic_.resize(static_cast<std::size_t>(m_));
	status_.assign(static_cast<std::size_t>(total_cols()), ColStatus::AtLower);
	basic_row_of_.assign(static_cast<std::size_t>(total_cols()), -1);
	for (int j = 0; j < total_cols(); ++j) {
		if (std::isfinite(col_lb(j))) {
			status_[static_cast<std::size_t>(j)] = ColStatus::AtLower;
		} else {
			status_[static_cast<std::size_t>(j)] = ColStatus::AtUpper;
		}
	}
	for (int r = 0; r < m_; ++r) {
		int slack = lp_->n_struct + r;
		basic_[static_cast<std::size_t>(r)] = slack;
		status_[static_cast<std::size_t>(slack)] = ColStatus::Basic;
		basic_row_of_[static_cast<std::size_t>(slack)] = r;
	}
}

bool Simplex::setup_phase_one() {
	art_cols_.clear();
	factorize();
	compute_basic_values();
	bool any = false;
	for (int r = 0; r < m_; ++r) {
		int slack = lp_->n_struct + r;
		double v = x_[static_cast<std::size_t>(slack)];
		double lo = col_lb(slack), hi = col_ub(slack);
		if (v >= lo - kFeasTol && v <= hi + kFeasTol) {
			continue;
		}
		any = true;
		double clamped = std::clamp(v, lo, hi);
		if (!std::isfinite(clamped)) {
			clamped = std::isfinite(lo) ? lo : hi;
		}
		double resid = v - clamped;
		int art = art_base_ + static_cast<int>(art_cols_.size());
		art_cols_.push_back({{r, resid > 0 ? 1.0 : -1.0}});
		lb_.push_back(0.0);
		ub_.push_back(kInf);
		obj_.push_back(0.0);
		x_.push_back(std::abs(resid));
		status_.push_back(ColStatus::Basic);
		basic_row_of_.push_back(r);
		// slack leaves the basis at its nearest bound
		status_[static_cast<std::size_t>(slack)] =
		    clamped == lo ? ColStatus::AtLower : ColStatus::AtUpper;
		basic_row_of_[static_cast<std::size_t>(slack)] = -1;
		x_[static_cast<std::size_t>(slack)] = clamped;
		basic_[static_cast<std::size_t>(r)] = art;
	}
	if (any) {
		factorize();
		compute_basic_values();
	}
	return any;
}

LpOutcome Simplex::solve_from_scratch() {
	install_slack_basis();
	bool needed_artificials = setup_phase_one();
	if (needed_artificials) {
		std::vector<double> phase1(static_cast<std::size_t>(total_cols()), 0.0);
		for (std::size_t a = 0; a < art_cols_.size(); ++a) {
			phase1[static_cast<std::size_t>(art_base_) + a] = 1.0;
		}
		LpOutcome out = primal_loop(phase1, true);
		if (out != LpOutcome::Optimal) {
			return out;
		}
		double infeas = 0;
		for (std::size_t a = 0; a < art_cols_.size(); ++a) {
			infeas += x_[static_cast<std::size_t>(art_base_) + a];
		}
		if (infeas > kFeasTol * std::max(1, m_)) {
			return LpOutcome::Infeasible;
		}
		// pin artificials at zero for phase 2
		for (std::size_t a = 0; a < art_cols_.size(); ++a) {
			lb_[static_cast<std::size_t>(art_base_) + a] = 0.0;
			ub_[static_cast<std::size_t>(art_base_) + a] = 0.0;
		}
	}
	std::vector<double> costs(obj_.begin(), obj_.end());
	return primal_loop(costs, false);
}

LpOutcome Simplex::primal_loop(const std::vector<double>& costs, bool phase_one) {
	const std::int64_t iter_cap = 20000 + 60LL * m_ + 2LL * n_;
	std::int64_t iters_here = 0;
	degenerate_streak_ = 0;
	int repair_rounds = 0;
	while (true) {
		if (++iters_here > iter_cap) {
			return LpOutcome::IterationLimit;
		}
		++iterations_;
		if (static_cast<int>(etas_.size()) >= kRefactorEvery) {
			factorize();
			compute_basic_values();
		}
		Eigen::VectorXd y = dual_values(costs);
		bool bland = degenerate_streak_ > kBlandAfter;
		int entering = -1;
		int dir_sign = 0;
		double best_score = kDualTol;
		for (int j = 0; j < total_cols(); ++j) {
			ColStatus st = status_[static_cast<std::size_t>(j)];
			if (st == ColStatus::Basic) {
				continue;
			}
			if (col_ub(j) - col_lb(j) <= 1e-15) {
				continue;  // fixed
			}
			if (!phase_one && j >= art_base_) {
				continue;
			}
			double d = reduced_cost(j, y, costs);
			double score = 0;
			int sign = 0;
			if (st == ColStatus::AtLower && d < -kDualTol) {
				score = -d;
				sign = +1;
			} else if (st == ColStatus::AtUpper && d > kDualTol) {
				score = d;
				sign = -1;
			} else {
				continue;
			}
			if (bland) {
				entering = j;
				dir_sign = sign;
				break;
			}
			if (score > best_score) {
				best_score = score;
				entering = j;
				dir_sign = sign;
			}
		}
		if (entering < 0) {
			// optimal for this phase; guard against accumulated drift
			if (repair_rounds < 3 && !etas_.empty()) {
				factorize();
				compute_basic_values();
				++repair_rounds;
				continue;
			}
			return LpOutcome::Optimal;
		}

		Eigen::VectorXd alpha_col = Eigen::VectorXd::Zero(m_);
		{
			Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
			for (const auto& e : column(entering)) {
				a(e.row) = e.value;
			}
			alpha_col = ftran(std::move(a));
		}
		// entering moves by t >= 0 in direction dir_sign; basic values move by -t*dir
		double t_bound = col_ub(entering) - col_lb(entering);
		double theta = std::isfinite(t_bound) ? t_bound : kInf;
		int leave_row = -1;
		double leave_pivot = 0;
		ColStatus leave_target = ColStatus::AtLower;
		for (int i = 0; i < m_; ++i) {
			double a = dir_sign * alpha_col(i);
			int bcol = basic_[static_cast<std::size_t>(i)];
			double xv = x_[static_cast<std::size_t>(bcol)];
			double cand;
			ColStatus target;
			if (a > kPivotTol) {
				double lo = col_lb(bcol);
				if (!std::isfinite(lo)) {
					continue;
				}
				cand = (xv - lo) / a;
				target = ColStatus::AtLower;
			} else if (a < -kPivotTol) {
				double hi = col_ub(bcol);
				if (!std::isfinite(hi)) {
					continue;
				}
				cand = (xv - hi) / a;
				target = ColStatus::AtUpper;
			} else {
				continue;
			}
			cand = std::max(cand, 0.0);
			bool better;
			if (bland) {
				better = cand < theta - 1e-12 ||
				         (cand <= theta + 1e-12 &&
				          (leave_row < 0 || bcol < basic_[static_cast<std::size_t>(leave_row)]));
			} else {
				better = cand < theta - 1e-12 ||
				         (cand <= theta + 1e-12 && std::abs(a) > std::abs(leave_pivot));
			}
			if (better) {
				theta = cand;
				leave_row = i;
				leave_pivot = a;
				leave_target = target;
			}
		}
		if (!std::isfinite(theta)) {
			return LpOutcome::Numerical;  // cannot happen for box-bounded objectives
		}
		if (leave_row < 0 || (std::isfinite(t_bound) && t_bound <= theta + 1e-12)) {
			// bound flip
			double t = t_bound;
			for (int i = 0; i < m_; ++i) {
				double a = dir_sign * alpha_col(i);
				if (a != 0.0) {
					x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] -= t * a;
				}
			}
			status_[static_cast<std::size_t>(entering)] =
			    status_[static_cast<std::size_t>(entering)] == ColStatus::AtLower
			        ? ColStatus::AtUpper
			        : ColStatus::AtLower;
			x_[static_cast<std::size_t>(entering)] =
			    status_[static_cast<std::size_t>(entering)] == ColStatus::AtLower
			        ? col_lb(entering)
			        : col_ub(entering);
			degenerate_streak_ = t < 1e-10 ? degenerate_streak_ + 1 : 0;
			continue;
		}
		double t = theta;
		for (int i = 0; i < m_; ++i) {
			double a = dir_sign * alpha_col(i);
			if (a != 0.0) {
				x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] -= t * a;
			}
		}
		int leaving = basic_[static_cast<std::size_t>(leave_row)];
		x_[static_cast<std::size_t>(leaving)] =
		    leave_target == ColStatus::AtLower ? col_lb(leaving) : col_ub(leaving);
		x_[static_cast<std::size_t>(entering)] =
		    (status_[static_cast<std::size_t>(entering)] == ColStatus::AtLower ? col_lb(entering)
		                                                                       : col_ub(entering)) +
		    dir_sign * t;
		status_[static_cast<std::size_t>(leaving)] = leave_target;
		basic_row_of_[static_cast<std::size_t>(leaving)] = -1;
		status_[static_cast<std::size_t>(entering)] = ColStatus::Basic;
		basic_row_of_[static_cast<std::size_t>(entering)] = leave_row;
		degenerate_streak_ = t < 1e-10 ? degenerate_streak_ + 1 : 0;
		pivot(entering, leave_row, alpha_col);
	}
}

void Simplex::pivot(int entering, int leaving_row, const Eigen::VectorXd& alpha) {
	double ap = alpha(leaving_row);
	if (std::abs(ap) < kPivotTol / 10) {
		throw std::runtime_error("simplex: pivot too small");
	}
	Eta eta;
	eta.u = -alpha / ap;
	eta.u(leaving_row) += 1.0 / ap + 1.0;  // (e_p - alpha)/ap has p-entry (1-ap)/ap
	eta.u(leaving_row) -= 1.0;
	eta.pivot_row = leaving_row;
	etas_.push_back(std::move(eta));
	basic_[static_cast<std::size_t>(leaving_row)] = entering;
}

LpOutcome Simplex::redual_inplace() {
	try {
		save_basis();  // artificial columns must leave the basis first
	} catch (const std::runtime_error&) {
		return LpOutcome::Numerical;
	}
	compute_basic_values();
	return dual_loop();
}

LpOutcome Simplex::resolve_dual(const Basis& start) {
	// unchanged basis: keep the current factorization
	bool same = !basic_.empty() && art_cols_.empty() &&
	            start.basic.size() == basic_.size() &&
	            std::equal(start.basic.begin(), start.basic.end(), basic_.begin()) &&
	            start.status.size() == static_cast<std::size_t>(n_) &&
	            std::equal(start.status.begin(), start.status.end(), status_.begin());
	if (same) {
		compute_basic_values();
		return dual_loop();
	}
	art_cols_.clear();
	lb_.resize(static_cast<std::size_t>(n_));
	ub_.resize(static_cast<std::size_t>(n_));
	obj_.resize(static_cast<std::size_t>(n_));
	x_.resize(static_cast<std::size_t>(n_));
	status_.assign(static_cast<std::size_t>(n_), ColStatus::AtLower);
	basic_row_of_.assign(static_cast<std::size_t>(n_), -1);
	basic_.resize(static_cast<std::size_t>(m_));

	int old_rows = static_cast<int>(start.basic.size());
	for (int r = 0; r < m_; ++r) {
		basic_[static_cast<std::size_t>(r)] =
		    r < old_rows ? start.basic[static_cast<std::size_t>(r)] : lp_->n_struct + r;
	}
	for (int j = 0; j < n_; ++j) {
		status_[static_cast<std::size_t>(j)] = j < static_cast<int>(start.status.size())
		                                           ? start.status[static_cast<std::size_t>(j)]
		                                           : ColStatus::Basic;
	}
	for (int j = 0; j < n_; ++j) {
		if (status_[static_cast<std::size_t>(j)] != ColStatus::Basic) {
			// bound may have moved past the stored side; snap to a finite one
			if (status_[static_cast<std::size_t>(j)] == ColStatus::AtLower && !std::isfinite(col_lb(j))) {
				status_[static_cast<std::size_t>(j)] = ColStatus::AtUpper;
			} else if (status_[static_cast<std::size_t>(j)] == ColStatus::AtUpper &&
			           !std::isfinite(col_ub(j))) {
				status_[static_cast<std::size_t>(j)] = ColStatus::AtLower;
			}
		}
	}
	for (int r = 0; r < m_; ++r) {
		int b = basic_[static_cast<std::size_t>(r)];
		status_[static_cast<std::size_t>(b)] = ColStatus::Basic;
		basic_row_of_[static_cast<std::size_t>(b)] = r;
	}
	try {
		factorize();
	} catch (const std::runtime_error&) {
		return LpOutcome::Numerical;
	}
	compute_basic_values();
	return dual_loop();
}

LpOutcome Simplex::dual_loop() {
	const std::vector<double>& costs = obj_;
	Eigen::VectorXd y = dual_values(costs);
	std::vector<double> d(static_cast<std::size_t>(n_), 0.0);
	auto refresh_duals = [&]() {
		y = dual_values(costs);
		for (int j = 0; j < n_; ++j) {
			d[static_cast<std::size_t>(j)] =
			    status_[static_cast<std::size_t>(j)] == ColStatus::Basic ? 0.0
			                                                             : reduced_cost(j, y, costs);
		}
	};
	refresh_duals();
	// restore dual feasibility by flipping nonbasic columns where possible
	bool flipped = false;
	for (int j = 0; j < n_; ++j) {
		ColStatus st = status_[static_cast<std::size_t>(j)];
		if (st == ColStatus::Basic || col_ub(j) - col_lb(j) <= 1e-15) {
			continue;
		}
		double dj = d[static_cast<std::size_t>(j)];
		if (st == ColStatus::AtLower && dj < -kDualTol * 10) {
			if (!std::isfinite(col_ub(j))) {
				return LpOutcome::Numerical;
			}
			status_[static_cast<std::size_t>(j)] = ColStatus::AtUpper;
			flipped = true;
		} else if (st == ColStatus::AtUpper && dj > kDualTol * 10) {
			if (!std::isfinite(col_lb(j))) {
				return LpOutcome::Numerical;
			}
			status_[static_cast<std::size_t>(j)] = ColStatus::AtLower;
			flipped = true;
		}
	}
	if (flipped) {
		compute_basic_values();
	}

	const std::int64_t iter_cap = 5000 + 40LL * m_ + n_;
	std::int64_t iters_here = 0;
	while (true) {
		if (++iters_here > iter_cap) {
			return LpOutcome::IterationLimit;
		}
		++iterations_;
		if (static_cast<int>(etas_.size()) >= kRefactorEvery) {
			factorize();
			compute_basic_values();
			refresh_duals();
		}
		// leaving: most violated basic variable
		int leave_row = -1;
		double worst = kFeasTol;
		bool below = false;
		for (int r = 0; r < m_; ++r) {
			int b = basic_[static_cast<std::size_t>(r)];
			double xv = x_[static_cast<std::size_t>(b)];
			double lo = col_lb(b), hi = col_ub(b);
			if (xv < lo - worst) {
				worst = lo - xv;
				leave_row = r;
				below = true;
			} else if (xv > hi + worst) {
				worst = xv - hi;
				leave_row = r;
				below = false;
			}
		}
		if (leave_row < 0) {
			return LpOutcome::Optimal;
		}
		Eigen::VectorXd rho = btran(Eigen::VectorXd::Unit(m_, leave_row));
		int leaving = basic_[static_cast<std::size_t>(leave_row)];
		double target = below ? col_lb(leaving) : col_ub(leaving);
		double delta = x_[static_cast<std::size_t>(leaving)] - target;

		int entering = -1;
		double best_ratio = kInf;
		double alpha_enter = 0;
		std::vector<double> alpha_row(static_cast<std::size_t>(n_), 0.0);
		for (int j = 0; j < n_; ++j) {
			ColStatus st = status_[static_cast<std::size_t>(j)];
			if (st == ColStatus::Basic || col_ub(j) - col_lb(j) <= 1e-15) {
				continue;
			}
			double a = 0;
			for (const auto& e : column(j)) {
				a += rho(e.row) * e.value;
			}
			alpha_row[static_cast<std::size_t>(j)] = a;
			if (std::abs(a) <= kPivotTol) {
				continue;
			}
			bool ok = below ? ((st == ColStatus::AtLower && a < 0) || (st == ColStatus::AtUpper && a > 0))
			                : ((st == ColStatus::AtLower && a > 0) || (st == ColStatus::AtUpper && a < 0));
			if (!ok) {
				continue;
			}
			double ratio = std::abs(d[static_cast<std::size_t>(j)]) / std::abs(a);
			if (ratio < best_ratio - 1e-12 ||
			    (ratio < best_ratio + 1e-12 &&
			     (entering < 0 || std::abs(a) > std::abs(alpha_enter)))) {
				best_ratio = ratio;
				entering = j;
				alpha_enter = a;
			}
		}
		if (entering < 0) {
			return LpOutcome::Infeasible;  // dual ray: no primal point satisfies the bounds
		}

		Eigen::VectorXd alpha_col;
		{
			Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
			for (const auto& e : column(entering)) {
				a(e.row) = e.value;
			}
			alpha_col = ftran(std::move(a));
		}
		if (std::abs(alpha_col(leave_row) - alpha_enter) >
		    1e-5 * std::max(1.0, std::abs(alpha_enter))) {
			return LpOutcome::Numerical;
		}
		double t = delta / alpha_col(leave_row);
		for (int i = 0; i < m_; ++i) {
			double a = alpha_col(i);
			if (a != 0.0) {
				x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] -= t * a;
			}
		}
		x_[static_cast<std::size_t>(entering)] += t;
		x_[static_cast<std::size_t>(leaving)] = target;

		double theta_dual = d[static_cast<std::size_t>(entering)] / alpha_enter;
		for (int j = 0; j < n_; ++j) {
			if (status_[static_cast<std::size_t>(j)] != ColStatus::Basic &&
			    alpha_row[static_cast<std::size_t>(j)] != 0.0) {
				d[static_cast<std::size_t>(j)] -= theta_dual * alpha_row[static_cast<std::size_t>(j)];
			}
		}
		d[static_cast<std::size_t>(leaving)] = -theta_dual;
		d[static_cast<std::size_t>(entering)] = 0.0;

		status_[static_cast<std::size_t>(leaving)] = below ? ColStatus::AtLower : ColStatus::AtUpper;
		basic_row_of_[static_cast<std::size_t>(leaving)] = -1;
		status_[static_cast<std::size_t>(entering)] = ColStatus::Basic;
		basic_row_of_[static_cast<std::size_t>(entering)] = leave_row;
		try {
			pivot(entering, leave_row, alpha_col);
		} catch (const std::runtime_error&) {
			return LpOutcome::Numerical;
		}
	}
}

double Simplex::objective_value() const {
	double v = 0;
	for (int j = 0; j < lp_->n_struct; ++j) {
		v += obj_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
	}
	return v;
}

std::vector<double> Simplex::struct_values() const {
	return std::vector<double>(x_.begin(), x_.begin() + lp_->n_struct);
}

Basis Simplex::save_basis() {
	// artificials must leave the basis before it can be reused
	for (int r = 0; r < m_; ++r) {
		int b = basic_[static_cast<std::size_t>(r)];
		if (b < art_base_) {
			continue;
		}
		Eigen::VectorXd rho = btran(Eigen::VectorXd::Unit(m_, r));
		int replacement = -1;
		double best = kPivotTol;
		int slack = lp_->n_struct + r;
		auto alpha_of = [&](int j) {
			double a = 0;
			for (const auto& e : column(j)) {
				a += rho(e.row) * e.value;
			}
			return a;
		};
		if (status_[static_cast<std::size_t>(slack)] != ColStatus::Basic &&
		    std::abs(alpha_of(slack)) > kPivotTol) {
			replacement = slack;
		} else {
			for (int j = 0; j < n_; ++j) {
				if (status_[static_cast<std::size_t>(j)] == ColStatus::Basic) {
					continue;
				}
				double a = std::abs(alpha_of(j));
				if (a > best) {
					best = a;
					replacement = j;
					break;  // lowest index with an acceptable pivot
				}
			}
		}
		if (replacement < 0) {
			throw std::runtime_error("simplex: cannot pivot artificial out of basis");
		}
		Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
		for (const auto& e : column(replacement)) {
			a(e.row) = e.value;
		}
		Eigen::VectorXd alpha_col = ftran(std::move(a));
		// degenerate swap: the artificial sits at zero
		status_[static_cast<std::size_t>(b)] = ColStatus::AtLower;
		basic_row_of_[static_cast<std::size_t>(b)] = -1;
		double keep = x_[static_cast<std::size_t>(replacement)];
		status_[static_cast<std::size_t>(replacement)] = ColStatus::Basic;
		basic_row_of_[static_cast<std::size_t>(replacement)] = r;
		x_[static_cast<std::size_t>(replacement)] = keep;
		pivot(replacement, r, alpha_col);
	}
	Basis out;
	out.basic = basic_;
	out.status.assign(status_.begin(), status_.begin() + n_);
	return out;
}

}  // namespace wsched::ip::detail
