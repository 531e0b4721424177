#pragma once

// Internal LP machinery behind wsched::ip. Bounded-variable revised simplex
// with a dense LU basis (Eigen), product-form eta updates and periodic
// refactorization. Not installed; include only from src/.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wsched/ipcore.hpp"

namespace wsched::ip::detail {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-7;   // bound/row feasibility
constexpr double kDualTol = 1e-9;   // reduced-cost optimality
constexpr double kPivotTol = 1e-8;  // smallest acceptable pivot

struct Entry {
	int row;
	double value;
};

// Rows as equalities A x + s = rhs with slack bounds encoding the sense.
// Column layout: [0, n_struct) structural, then one slack per row appended in
// row order, so adding rows never renumbers existing columns.
struct LpProblem {
	int n_struct = 0;
	std::vector<std::vector<Entry>> struct_cols;  // per structural column
	std::vector<double> struct_lb, struct_ub, struct_obj;
	std::vector<double> slack_lb, slack_ub;  // per row
	std::vector<double> rhs;

	int rows() const { return static_cast<int>(rhs.size()); }
	int cols() const { return n_struct + rows(); }  // structural + slacks

	// Appends a row; existing columns gain entries via `terms`.
	void add_row(const std::vector<LinTerm>& terms, Sense sense, double rhs_value);
};

// Builds the equality form from a model, skipping rows where active[r] is
// false (lazy rows start inactive). `row_ids` maps problem rows back to model
// rows.
LpProblem build_lp(const Model& model, const std::vector<bool>& active, std::vector<int>* row_ids);

enum class ColStatus : std::uint8_t { Basic, AtLower, AtUpper };

struct Basis {
	std::vector<int> basic;          // per row: basic column
	std::vector<ColStatus> status;   // per column
	bool empty() const { return basic.empty(); }
};

enum class LpOutcome { Optimal, Infeasible, IterationLimit, Numerical };

class Simplex {
public:
	explicit Simplex(const LpProblem& lp);

	// Per-solve bound overrides for structural columns (branching).
	void set_struct_bounds(const std::vector<double>& lb, const std::vector<double>& ub);
	void set_objective(const std::vector<double>& struct_obj);

	// Two-phase primal from the all-slack basis.
	LpOutcome solve_from_scratch();
	// Loads a basis (from a previous epoch: missing rows get their slack) and
	// repairs primal feasibility with the dual simplex. Falls back to Numerical
	// when it cannot make progress; callers then solve from scratch.
	LpOutcome resolve_dual(const Basis& start);
	// Dual repair from the current basis after bound changes, without
	// refactorizing. Used by diving heuristics.
	LpOutcome redual_inplace();

	double objective_value() const;
	// Values for structural columns.
	std::vector<double> struct_values() const;
	Basis save_basis();  // pivots artificials out first; may throw std::runtime_error

	std::int64_t iterations() const { return iterations_; }

private:
	const LpProblem* lp_;
	int m_ = 0, n_ = 0;          // rows, structural+slack columns
	int art_base_ = 0;           // first artificial column id
	std::vector<std::vector<Entry>> art_cols_;  // artificial unit columns
	std::vector<double> lb_, ub_, obj_;         // per column incl. artificials
	std::vector<double> x_;
	std::vector<int> basic_;
	std::vector<ColStatus> status_;
	std::vector<int> basic_row_of_;  // column -> row when basic, else -1

	Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
	struct Eta {
		Eigen::VectorXd u;
		int pivot_row;
	};
	std::vector<Eta> etas_;
	std::int64_t iterations_ = 0;
	int degenerate_streak_ = 0;

	int total_cols() const { return n_ + static_cast<int>(art_cols_.size()); }
	const std::vector<Entry>& column(int j) const;
	double col_lb(int j) const { return lb_[static_cast<std::size_t>(j)]; }
	double col_ub(int j) const { return ub_[static_cast<std::size_t>(j)]; }

	void factorize();
	Eigen::VectorXd ftran(Eigen::VectorXd v) const;
	Eigen::VectorXd btran(Eigen::VectorXd v) const;
	void compute_basic_values();
	Eigen::VectorXd dual_values(const std::vector<double>& costs) const;
	double reduced_cost(int j, const Eigen::VectorXd& y, const std::vector<double>& costs) const;

	LpOutcome primal_loop(const std::vector<double>& costs, bool phase_one);
	LpOutcome dual_loop();
	bool setup_phase_one();  // returns true if artificials were needed
	void pivot(int entering, int leaving_row, const Eigen::VectorXd& alpha);
	void install_slack_basis();
};

}  // namespace wsched::ip::detail
