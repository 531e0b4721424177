#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lp_core.hpp"
#include "wsched/ipcore.hpp"

namespace wsched::ip {

using detail::Basis;
using detail::kFeasTol;
using detail::kInf;
using detail::LpOutcome;
using detail::LpProblem;
using detail::Simplex;

int Model::add_variable(std::string name, VarKind kind, double lower, double upper) {
	if (kind == VarKind::Binary) {
		lower = std::max(lower, 0.0);
		upper = std::min(upper, 1.0);
	}
	vars_.push_back({std::move(name), kind, lower, upper});
	return static_cast<int>(vars_.size()) - 1;
}

int Model::add_constraint(std::vector<LinTerm> terms, Sense sense, double rhs, bool lazy) {
	// coalesce duplicate variables and drop explicit zeros
	std::sort(terms.begin(), terms.end(), [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
	std::vector<LinTerm> merged;
	for (const auto& t : terms) {
		if (!merged.empty() && merged.back().var == t.var) {
			merged.back().coeff += t.coeff;
		} else {
			merged.push_back(t);
		}
	}
	std::erase_if(merged, [](const LinTerm& t) { return t.coeff == 0.0; });
	rows_.push_back({std::move(merged), sense, rhs, lazy});
	return static_cast<int>(rows_.size()) - 1;
}

void Model::set_objective(std::vector<LinTerm> terms) {
	std::sort(terms.begin(), terms.end(), [](const LinTerm& a, const LinTerm& b) { return a.var < b.var; });
	objective_.clear();
	for (const auto& t : terms) {
		if (!objective_.empty() && objective_.back().var == t.var) {
			objective_.back().coeff += t.coeff;
		} else {
			objective_.push_back(t);
		}
	}
}

void Model::validate() const {
	std::set<std::string> names;
	for (const auto& v : vars_) {
		if (!names.insert(v.name).second) {
			throw std::invalid_argument("ip model: duplicate variable name " + v.name);
		}
		if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
			throw std::invalid_argument("ip model: integer variable " + v.name +
			                            " needs finite bounds");
		}
		if (v.lower > v.upper) {
			throw std::invalid_argument("ip model: empty domain for " + v.name);
		}
	}
	auto check_terms = [&](const std::vector<LinTerm>& terms, const std::string& where) {
		for (const auto& t : terms) {
			if (t.var < 0 || t.var >= num_vars()) {
				throw std::invalid_argument("ip model: bad variable index in " + where);
			}
			if (!std::isfinite(t.coeff)) {
				throw std::invalid_argument("ip model: non-finite coefficient in " + where);
			}
		}
	};
	for (std::size_t r = 0; r < rows_.size(); ++r) {
		check_terms(rows_[r].terms, "row " + std::to_string(r));
		if (!std::isfinite(rows_[r].rhs)) {
			throw std::invalid_argument("ip model: non-finite rhs");
		}
	}
	check_terms(objective_, "objective");
}

namespace {

struct PathDelta {
	int var;
	double lb;
	double ub;
	std::shared_ptr<PathDelta> parent;
};

struct Node {
	double bound;
	int depth;
	std::int64_t id;
	std::shared_ptr<Basis> basis;  // parent's optimal basis, shared across siblings
	std::shared_ptr<PathDelta> path;
};

struct NodeOrder {
	bool operator()(const Node& a, const Node& b) const {
		if (a.bound != b.bound) {
			return a.bound > b.bound;  // min-heap on bound
		}
		return a.id > b.id;
	}
};

double activity(const Constraint& row, const std::vector<double>& x) {
	double a = 0;
	for (const auto& t : row.terms) {
		a += t.coeff * x[static_cast<std::size_t>(t.var)];
	}
	return a;
}

bool row_satisfied(const Constraint& row, double act, double tol) {
	switch (row.sense) {
		case Sense::LE: return act <= row.rhs + tol;
		case Sense::GE: return act >= row.rhs - tol;
		case Sense::EQ: return std::abs(act - row.rhs) <= tol;
	}
	return false;
}

class BranchAndBound {
public:
	BranchAndBound(const Model& model, const SolveOptions& opts)
	    : model_(model), opts_(opts), rng_(opts.seed) {}

	SolveResult run();

private:
	const Model& model_;
	SolveOptions opts_;
	std::mt19937_64 rng_;
	std::chrono::steady_clock::time_point t0_;

	std::vector<bool> row_active_;
	LpProblem lp_;
	std::unique_ptr<Simplex> simplex_;
	std::int64_t iters_seen_ = 0;  // simplex_->iterations() already accounted for
	std::vector<double> root_lb_, root_ub_;
	double granularity_ = 0;

	std::optional<Incumbent> best_;
	double reported_bound_ = -kInf;
	SolveStats stats_;
	std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
	std::int64_t next_id_ = 0;

	double elapsed() const {
		return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
	}
	bool out_of_time() const { return elapsed() > opts_.time_limit_s; }

	void rebuild_lp();
	void account_iterations();
	double lift(double bound) const;
	double keep_margin() const;
	bool gap_closed() const;
	void note_bound(double b) { reported_bound_ = std::max(reported_bound_, b); }

	// Returns activated-row count; solution must be re-solved when > 0.
	int separate(const std::vector<double>& x);
	LpOutcome solve_node_lp(const std::vector<double>& lb, const std::vector<double>& ub,
	                        const std::shared_ptr<Basis>& warm);
	bool try_incumbent(const std::vector<double>& candidate);
	void run_heuristics(const std::vector<double>& x);
	// LP diving: fix fractional variables one at a time and repair with the
	// dual simplex. Clobbers the simplex state; callers must re-solve after.
	void dive(std::vector<double> lb, std::vector<double> ub);
	void branch(const Node& node, const std::vector<double>& x, double node_bound);
	void materialize_bounds(const std::shared_ptr<PathDelta>& path, std::vector<double>& lb,
	                        std::vector<double>& ub) const;
	SolveResult finish(SolveStatus status);
};

void BranchAndBound::rebuild_lp() {
	if (simplex_) {
		stats_.simplex_iterations += simplex_->iterations() - iters_seen_;
	}
	iters_seen_ = 0;
	lp_ = detail::build_lp(model_, row_active_, nullptr);
	simplex_ = std::make_unique<Simplex>(lp_);
}

void BranchAndBound::account_iterations() {
	stats_.simplex_iterations += simplex_->iterations() - iters_seen_;
	iters_seen_ = simplex_->iterations();
}

double BranchAndBound::lift(double bound) const {
	if (granularity_ <= 0) {
		return bound;
	}
	return granularity_ * std::ceil(bound / granularity_ - 1e-6);
}

double BranchAndBound::keep_margin() const {
	double margin = std::max(opts_.abs_gap, 1e-9);
	if (granularity_ > 0) {
		margin = std::max(margin, granularity_ * (1 - 1e-6));
	}
	if (best_ && opts_.rel_gap > 0) {
		margin = std::max(margin, opts_.rel_gap * std::abs(best_->objective));
	}
	return margin;
}

bool BranchAndBound::gap_closed() const {
	return best_ && best_->objective - reported_bound_ <= keep_margin() + 1e-12;
}

int BranchAndBound::separate(const std::vector<double>& x) {
	int added = 0;
	for (int r = 0; r < model_.num_constraints(); ++r) {
		if (row_active_[static_cast<std::size_t>(r)]) {
			continue;
		}
		const auto& row = model_.row(r);
		if (!row_satisfied(row, activity(row, x), kFeasTol)) {
			row_active_[static_cast<std::size_t>(r)] = true;
			++added;
		}
	}
	if (added > 0) {
		rebuild_lp();
	}
	return added;
}

LpOutcome BranchAndBound::solve_node_lp(const std::vector<double>& lb,
                                        const std::vector<double>& ub,
                                        const std::shared_ptr<Basis>& warm) {
	while (true) {
		simplex_->set_struct_bounds(lb, ub);
		LpOutcome out = LpOutcome::Numerical;
		if (warm && !warm->empty()) {
			out = simplex_->resolve_dual(*warm);
		}
		if (out == LpOutcome::Numerical || out == LpOutcome::IterationLimit) {
			out = simplex_->solve_from_scratch();
		}
		if (out == LpOutcome::IterationLimit) {
			throw std::runtime_error("ip solve: simplex iteration limit; model appears to cycle");
		}
		if (out != LpOutcome::Optimal) {
			return out;
		}
		std::vector<double> x = simplex_->struct_values();
		if (separate(x) == 0) {
			return LpOutcome::Optimal;
		}
		// rows were activated: re-solve against the extended problem
	}
}

bool BranchAndBound::try_incumbent(const std::vector<double>& candidate) {
	std::vector<double> x = candidate;
	for (int j = 0; j < model_.num_vars(); ++j) {
		double r = std::round(x[static_cast<std::size_t>(j)]);
		x[static_cast<std::size_t>(j)] = r == 0.0 ? 0.0 : r;  // normalize -0
		if (r < model_.var(j).lower - kFeasTol || r > model_.var(j).upper + kFeasTol) {
			return false;
		}
	}
	// exact re-check against every row, active or not
	for (int r = 0; r < model_.num_constraints(); ++r) {
		const auto& row = model_.row(r);
		if (!row_satisfied(row, activity(row, x), kFeasTol)) {
			return false;
		}
	}
	double obj = 0;
	for (const auto& t : model_.objective()) {
		obj += t.coeff * x[static_cast<std::size_t>(t.var)];
	}
	if (!best_ || obj < best_->objective - 1e-9) {
		best_ = Incumbent{std::move(x), obj};
		return true;
	}
	return false;
}

void BranchAndBound::run_heuristics(const std::vector<double>& x) {
	if (!opts_.rounding_heuristics) {
		return;
	}
	std::vector<double> cand = x;
	for (auto& v : cand) {
		v = std::round(v);
	}
	try_incumbent(cand);
	cand = x;
	for (auto& v : cand) {
		v = std::ceil(v - 1e-7);
	}
	try_incumbent(cand);
	for (int attempt = 0; attempt < 8; ++attempt) {
		cand = x;
		std::uniform_real_distribution<double> u(0.0, 1.0);
		for (auto& v : cand) {
			double fl = std::floor(v);
			double frac = v - fl;
			if (frac > 1e-7 && frac < 1 - 1e-7) {
				v = fl + (u(rng_) < frac ? 1.0 : 0.0);
			} else {
				v = std::round(v);
			}
		}
		try_incumbent(cand);
	}
}

void BranchAndBound::dive(std::vector<double> lb, std::vector<double> ub) {
	const int max_steps = model_.num_vars();
	for (int step = 0; step < max_steps && !out_of_time(); ++step) {
		std::vector<double> x = simplex_->struct_values();
		int var = -1;
		double best_dist = 0.5 + 1e-9;
		for (int j = 0; j < model_.num_vars(); ++j) {
			double frac =
			    std::abs(x[static_cast<std::size_t>(j)] - std::round(x[static_cast<std::size_t>(j)]));
			if (frac > 1e-6 && frac < best_dist) {
				best_dist = frac;
				var = j;
			}
		}
		if (var < 0) {
			try_incumbent(x);
			return;
		}
		double nearest = std::round(x[static_cast<std::size_t>(var)]);
		double target = nearest;
		if (target < lb[static_cast<std::size_t>(var)] - 1e-9 ||
		    target > ub[static_cast<std::size_t>(var)] + 1e-9) {
			target = nearest > x[static_cast<std::size_t>(var)] ? nearest - 1 : nearest + 1;
		}
		lb[static_cast<std::size_t>(var)] = target;
		ub[static_cast<std::size_t>(var)] = target;
		simplex_->set_struct_bounds(lb, ub);
		if (simplex_->redual_inplace() != LpOutcome::Optimal) {
			return;  // fixing made the dive LP infeasible or unstable; give up
		}
		if (best_ && lift(simplex_->objective_value()) >= best_->objective - keep_margin() + 1e-12) {
			return;  // the dive can no longer improve on the incumbent
		}
	}
}

void BranchAndBound::materialize_bounds(const std::shared_ptr<PathDelta>& path,
                                        std::vector<double>& lb, std::vector<double>& ub) const {
	lb = root_lb_;
	ub = root_ub_;
	for (const PathDelta* d = path.get(); d != nullptr; d = d->parent.get()) {
		lb[static_cast<std::size_t>(d->var)] = std::max(lb[static_cast<std::size_t>(d->var)], d->lb);
		ub[static_cast<std::size_t>(d->var)] = std::min(ub[static_cast<std::size_t>(d->var)], d->ub);
	}
}

void BranchAndBound::branch(const Node& node, const std::vector<double>& x, double node_bound) {
	int var = -1;
	double best_frac = 1e-6;
	for (int j = 0; j < model_.num_vars(); ++j) {
		double frac = std::abs(x[static_cast<std::size_t>(j)] - std::round(x[static_cast<std::size_t>(j)]));
		if (frac > best_frac) {
			best_frac = frac;
			var = j;
		}
	}
	if (var < 0) {
		return;  // integral; caller handled the incumbent
	}
	double fl = std::floor(x[static_cast<std::size_t>(var)]);
	std::shared_ptr<Basis> basis;
	try {
		basis = std::make_shared<Basis>(simplex_->save_basis());
	} catch (const std::runtime_error&) {
		basis = nullptr;
	}
	auto down = std::make_shared<PathDelta>(PathDelta{var, -kInf, fl, node.path});
	auto up = std::make_shared<PathDelta>(PathDelta{var, fl + 1, kInf, node.path});
	open_.push({node_bound, node.depth + 1, next_id_++, basis, down});
	open_.push({node_bound, node.depth + 1, next_id_++, basis, up});
}

SolveResult BranchAndBound::finish(SolveStatus status) {
	SolveResult res;
	res.status = status;
	res.incumbent = best_;
	if (status == SolveStatus::Optimal && best_) {
		reported_bound_ = best_->objective;
	}
	if (best_) {
		reported_bound_ = std::min(reported_bound_, best_->objective);
	}
	res.best_bound = reported_bound_;
	res.stats = stats_;
	res.stats.wall_time_s = elapsed();
	return res;
}

SolveResult BranchAndBound::run() {
	t0_ = std::chrono::steady_clock::now();
	model_.validate();

	row_active_.assign(static_cast<std::size_t>(model_.num_constraints()), true);
	for (int r = 0; r < model_.num_constraints(); ++r) {
		if (model_.row(r).lazy) {
			row_active_[static_cast<std::size_t>(r)] = false;
		}
	}

	root_lb_.resize(static_cast<std::size_t>(model_.num_vars()));
	root_ub_.resize(static_cast<std::size_t>(model_.num_vars()));
	for (int j = 0; j < model_.num_vars(); ++j) {
		root_lb_[static_cast<std::size_t>(j)] = std::ceil(model_.var(j).lower - 1e-9);
		root_ub_[static_cast<std::size_t>(j)] = std::floor(model_.var(j).upper + 1e-9);
		if (root_lb_[static_cast<std::size_t>(j)] > root_ub_[static_cast<std::size_t>(j)]) {
			return finish(SolveStatus::Infeasible);
		}
	}

	// objective granularity: with all-integer variables and coefficients on a
	// half-unit grid, objective values live on multiples of gcd/2
	{
		std::int64_t g2 = 0;
		bool on_grid = true;
		for (const auto& t : model_.objective()) {
			double scaled = t.coeff * 2.0;
			if (std::abs(scaled - std::round(scaled)) > 1e-9) {
				on_grid = false;
				break;
			}
			g2 = std::gcd(g2, static_cast<std::int64_t>(std::llround(std::abs(scaled))));
		}
		granularity_ = on_grid && g2 > 0 ? static_cast<double>(g2) / 2.0 : 0.0;
	}

	rebuild_lp();
	if (opts_.warm_values.size() == static_cast<std::size_t>(model_.num_vars())) {
		try_incumbent(opts_.warm_values);
	}
	LpOutcome root = solve_node_lp(root_lb_, root_ub_, nullptr);
	if (root == LpOutcome::Infeasible) {
		reported_bound_ = kInf;
		return finish(SolveStatus::Infeasible);
	}
	if (root != LpOutcome::Optimal) {
		throw std::runtime_error("ip solve: root LP failed");
	}
	account_iterations();

	std::vector<double> x = simplex_->struct_values();
	double root_bound = lift(simplex_->objective_value());
	note_bound(root_bound);
	try_incumbent(x);
	run_heuristics(x);

	bool root_integral = true;
	for (int j = 0; j < model_.num_vars() && root_integral; ++j) {
		root_integral = std::abs(x[static_cast<std::size_t>(j)] -
		                         std::round(x[static_cast<std::size_t>(j)])) <= 1e-6;
	}
	if (!root_integral && !gap_closed()) {
		Node root_node{root_bound, 0, next_id_++, nullptr, nullptr};
		// the root LP is already solved; branch directly on its solution
		branch(root_node, x, root_bound);
		++stats_.nodes;
		dive(root_lb_, root_ub_);  // after branch: diving clobbers the LP state
	}

	std::vector<double> lb, ub;
	while (!open_.empty()) {
		if (gap_closed()) {
			return finish(SolveStatus::Optimal);
		}
		if (out_of_time() || (opts_.node_limit >= 0 && stats_.nodes >= opts_.node_limit)) {
			note_bound(std::min(open_.top().bound, best_ ? best_->objective : kInf));
			return finish(SolveStatus::LimitReached);
		}
		Node node = open_.top();
		open_.pop();
		note_bound(std::min(node.bound, best_ ? best_->objective : kInf));
		if (best_ && node.bound >= best_->objective - keep_margin() + 1e-12) {
			// best-bound order: every remaining node is at least as bad
			return finish(SolveStatus::Optimal);
		}
		++stats_.nodes;
		materialize_bounds(node.path, lb, ub);
		LpOutcome out = solve_node_lp(lb, ub, node.basis);
		account_iterations();
		if (out == LpOutcome::Infeasible) {
			continue;
		}
		double node_bound = lift(simplex_->objective_value());
		if (best_ && node_bound >= best_->objective - keep_margin() + 1e-12) {
			continue;
		}
		x = simplex_->struct_values();
		bool integral = true;
		for (int j = 0; j < model_.num_vars() && integral; ++j) {
			integral = std::abs(x[static_cast<std::size_t>(j)] -
			                    std::round(x[static_cast<std::size_t>(j)])) <= 1e-6;
		}
		if (integral) {
			try_incumbent(x);
			continue;
		}
		branch(node, x, node_bound);
		std::int64_t dive_every = best_ ? 50 : 10;
		if (stats_.nodes % dive_every == 0) {
			run_heuristics(x);
			dive(lb, ub);
		}
	}
	if (!best_) {
		reported_bound_ = kInf;
		return finish(SolveStatus::Infeasible);
	}
	return finish(SolveStatus::Optimal);
}

class BuiltinSolver final : public SolverBackend {
public:
	SolveResult solve(const Model& model, const SolveOptions& opts) override {
		BranchAndBound bnb(model, opts);
		return bnb.run();
	}
	std::string name() const override { return "builtin"; }
};

}  // namespace

SolveResult solve(const Model& model, const SolveOptions& opts) {
	BranchAndBound bnb(model, opts);
	return bnb.run();
}

std::unique_ptr<SolverBackend> make_builtin_solver() { return std::make_unique<BuiltinSolver>(); }

LpResult lp_relax(const Model& model) {
	model.validate();
	LpResult res;
	std::vector<bool> active(static_cast<std::size_t>(model.num_constraints()), true);
	for (int r = 0; r < model.num_constraints(); ++r) {
		if (model.row(r).lazy) {
			active[static_cast<std::size_t>(r)] = false;
		}
	}
	while (true) {
		LpProblem lp = detail::build_lp(model, active, nullptr);
		Simplex simplex(lp);
		LpOutcome out = simplex.solve_from_scratch();
		if (out == LpOutcome::Infeasible) {
			res.status = LpStatus::Infeasible;
			return res;
		}
		if (out != LpOutcome::Optimal) {
			throw std::runtime_error("lp_relax: simplex failed");
		}
		std::vector<double> x = simplex.struct_values();
		int added = 0;
		for (int r = 0; r < model.num_constraints(); ++r) {
			if (active[static_cast<std::size_t>(r)]) {
				continue;
			}
			const auto& row = model.row(r);
			if (!row_satisfied(row, activity(row, x), kFeasTol)) {
				active[static_cast<std::size_t>(r)] = true;
				++added;
			}
		}
		if (added == 0) {
			res.status = LpStatus::Optimal;
			res.objective = simplex.objective_value();
			res.values = std::move(x);
			return res;
		}
	}
}

std::string to_lp_format(const Model& model) {
	std::ostringstream os;
	os << "Minimize\n obj:";
	if (model.objective().empty()) {
		os << " 0 " << model.var(0).name;
	}
	for (const auto& t : model.objective()) {
		os << (t.coeff >= 0 ? " + " : " - ") << std::abs(t.coeff) << " " << model.var(t.var).name;
	}
	os << "\nSubject To\n";
	for (int r = 0; r < model.num_constraints(); ++r) {
		const auto& row = model.row(r);
		os << " c" << r << ":";
		if (row.terms.empty()) {
			os << " 0 " << model.var(0).name;
		}
		for (const auto& t : row.terms) {
			os << (t.coeff >= 0 ? " + " : " - ") << std::abs(t.coeff) << " "
			   << model.var(t.var).name;
		}
		switch (row.sense) {
			case Sense::LE: os << " <= "; break;
			case Sense::GE: os << " >= "; break;
			case Sense::EQ: os << " = "; break;
		}
		os << row.rhs << "\n";
	}
	os << "Bounds\n";
	for (int j = 0; j < model.num_vars(); ++j) {
		const auto& v = model.var(j);
		os << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
	}
	os << "Generals\n";
	for (int j = 0; j < model.num_vars(); ++j) {
		os << " " << model.var(j).name;
	}
	os << "\nEnd\n";
	return os.str();
}

}  // namespace wsched::ip
