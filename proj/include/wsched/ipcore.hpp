#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wsched::ip {

enum class VarKind { Binary, Integer };

struct Variable {
	std::string name;
	VarKind kind;
	double lower;
	double upper;
};

enum class Sense { LE, EQ, GE };

struct LinTerm {
	int var;
	double coeff;
};

struct Constraint {
	std::vector<LinTerm> terms;
	Sense sense;
	double rhs;
	// Lazy rows may start deactivated in large models; the solver separates
	// them on demand and always checks candidate incumbents against all rows.
	bool lazy = false;
};

// Generic integer linear program, minimization.
class Model {
public:
	int add_variable(std::string name, VarKind kind, double lower, double upper);
	int add_binary(std::string name) { return add_variable(std::move(name), VarKind::Binary, 0, 1); }
	int add_constraint(std::vector<LinTerm> terms, Sense sense, double rhs, bool lazy = false);
	void set_objective(std::vector<LinTerm> terms);

	int num_vars() const { return static_cast<int>(vars_.size()); }
	int num_constraints() const { return static_cast<int>(rows_.size()); }
	const Variable& var(int i) const { return vars_[static_cast<std::size_t>(i)]; }
	const std::vector<Variable>& vars() const { return vars_; }
	const Constraint& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
	const std::vector<Constraint>& rows() const { return rows_; }
	const std::vector<LinTerm>& objective() const { return objective_; }

	// Throws std::invalid_argument on duplicate names, non-finite bounds or
	// coefficients, or empty boxes.
	void validate() const;

private:
	std::vector<Variable> vars_;
	std::vector<Constraint> rows_;
	std::vector<LinTerm> objective_;
};

struct SolveOptions {
	double time_limit_s = std::numeric_limits<double>::infinity();
	double abs_gap = 1e-9;
	double rel_gap = 0.0;
	std::int64_t node_limit = -1;  // < 0: unlimited
	std::uint64_t seed = 0;        // drives only the randomized rounding heuristic
	bool rounding_heuristics = true;
	// Optional warm start; verified like any other candidate before use.
	std::vector<double> warm_values;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, LimitReached };

struct Incumbent {
	std::vector<double> values;
	double objective = 0;
};

struct SolveStats {
	std::int64_t nodes = 0;
	std::int64_t simplex_iterations = 0;
	double wall_time_s = 0;
};

struct SolveResult {
	SolveStatus status = SolveStatus::Infeasible;
	std::optional<Incumbent> incumbent;
	double best_bound = -std::numeric_limits<double>::infinity();
	SolveStats stats;

	bool has_solution() const { return incumbent.has_value(); }
};

// Branch and bound over an LP relaxation solved by a built-in bounded-variable
// revised simplex. Deterministic: most-fractional branching with lowest-index
// tie break, best-bound node selection. Feasibility tolerance 1e-7; candidate
// incumbents are re-verified in exact arithmetic before acceptance.
SolveResult solve(const Model& model, const SolveOptions& opts = {});

// Pluggable engine interface. The built-in engine is the reference one.
class SolverBackend {
public:
	virtual ~SolverBackend() = default;
	virtual SolveResult solve(const Model& model, const SolveOptions& opts) = 0;
	virtual std::string name() const = 0;
};

std::unique_ptr<SolverBackend> make_builtin_solver();

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
	LpStatus status = LpStatus::Infeasible;
	double objective = 0;
	std::vector<double> values;
};

// Exact optimum of the continuous relaxation (bounds kept, integrality dropped).
LpResult lp_relax(const Model& model);

// Plain-text dump compatible with the LP file format, for cross-checking
// against external solvers.
std::string to_lp_format(const Model& model);

}  // namespace wsched::ip
