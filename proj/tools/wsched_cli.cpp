// Command-line front end: pattern generation, instance validation, the
// two-stage solve with optional split, instance simulation and report
// rendering.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wsched/errors.hpp"
#include "wsched/json_io.hpp"
#include "wsched/pipeline.hpp"
#include "wsched/simgen.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitBudget = 3;

struct Args {
	// patterns
	std::string family;
	std::string rules_file;
	std::string out_file;
	// validate / solve
	std::string instance_file;
	std::string objective = "workers";
	std::string rho = "auto";
	double time_limit = 600;
	std::string overlap = "cyclic";
	std::string roster_file;
	std::int64_t row_budget = 2'000'000;
	std::uint64_t seed = 0;
	bool no_refine = false;
	// simulate
	std::string size = "small";
	std::string mix = "S1";
	std::string window_mode;
	double emergency_scale = 0;
	// report
	std::string report_file;
	std::string plot;
};

int cmd_patterns(const Args& a) {
	std::vector<wsched::ShiftPattern> patterns;
	int omega = 30;
	std::string family = a.family;
	if (family == "STOLLETZ" || family == "stolletz") {
		auto preset = wsched::stolletz_preset();
		patterns = preset.patterns;
		auto daily = wsched::enumerate_daily_schedules(patterns, preset.start_lo, preset.start_hi,
		                                               preset.day_length, preset.latest_end_tp);
		std::cout << patterns.size() << " patterns, " << daily.size() << " daily schedules\n";
	} else {
		auto fam = wsched::family_from_string(family);
		if (!fam) {
			throw std::invalid_argument("unknown family: " + family);
		}
		wsched::PatternRuleSet rules;
		if (*fam == wsched::Family::Custom) {
			if (a.rules_file.empty()) {
				throw std::invalid_argument("CUSTOM family needs --rules");
			}
			rules = wsched::rules_from_json(json::parse(wsched::read_text_file(a.rules_file)));
		} else {
			rules = wsched::family_rules(*fam);
		}
		omega = rules.omega;
		patterns = wsched::generate_patterns(rules);
		std::cout << patterns.size() << " patterns\n";
		if (!rules.doc.empty()) {
			std::cout << rules.doc << "\n";
		}
	}
	if (!a.out_file.empty()) {
		wsched::write_text_file(a.out_file,
		                        wsched::patterns_to_json(family, omega, patterns).dump(2) + "\n");
		std::cout << "wrote " << a.out_file << "\n";
	}
	return kExitOk;
}

int cmd_validate(const Args& a) {
	wsched::Instance inst = wsched::load_instance(a.instance_file);
	auto violations = wsched::validate(inst);
	if (violations.empty()) {
		std::cout << "valid\n";
		return kExitOk;
	}
	for (const auto& v : violations) {
		std::cout << v << "\n";
	}
	return kExitInvalidInput;
}

json plot_data(const wsched::RunResult& result, const wsched::Instance& inst) {
	json out;
	out["demand"] = result.stage1.demand.to_ints();
	wsched::PeriodVector supply(inst.horizon.T);
	for (const auto& s : result.schedules) {
		supply = add_scaled(supply,
		                    pattern_supply_footprint(
		                        result.patterns[static_cast<std::size_t>(s.pattern_id)],
		                        s.start_tp, inst.horizon),
		                    1);
	}
	json supply_arr = json::array();
	for (int j = 1; j <= supply.size(); ++j) {
		supply_arr.push_back(supply.at(j));
	}
	out["supply"] = std::move(supply_arr);
	json workers = json::array();
	for (const auto& w : result.roster.workers) {
		json spans = json::array();
		for (int v : w.schedule_ids) {
			const auto& s = result.schedules[static_cast<std::size_t>(v)];
			spans.push_back(
			    {s.start_tp,
			     result.patterns[static_cast<std::size_t>(s.pattern_id)].length()});
		}
		workers.push_back({{"index", w.index}, {"spans", std::move(spans)}});
	}
	out["workers"] = std::move(workers);
	out["T"] = inst.horizon.T;
	return out;
}

int cmd_solve(const Args& a) {
	wsched::Instance inst = wsched::load_instance(a.instance_file);
	wsched::RunOptions opts;
	if (a.objective == "workers") {
		opts.objective = wsched::RunObjective::Workers;
	} else if (a.objective == "cost") {
		opts.objective = wsched::RunObjective::Cost;
	} else if (a.objective == "overcover") {
		opts.objective = wsched::RunObjective::Overcover;
	} else {
		throw std::invalid_argument("unknown objective: " + a.objective);
	}
	opts.rho = a.rho == "auto" ? 0 : std::stoi(a.rho);
	opts.stage1_time_limit_s = a.time_limit;
	opts.stage2_time_limit_s = a.time_limit;
	opts.overlap_mode =
	    a.overlap == "linear" ? wsched::OverlapMode::Linear : wsched::OverlapMode::Cyclic;
	opts.row_budget = a.row_budget;
	opts.refine_bound = !a.no_refine;
	opts.seed = a.seed;

	wsched::RunResult result = wsched::run(inst, opts);
	const auto& rep = result.report;
	std::cout << "method            " << rep.method << "\n"
	          << "stage1 objective  " << rep.stage1_objective << " (bound " << rep.stage1_bound
	          << ", status " << rep.stage1_status << ")\n"
	          << "schedules (tau)   " << rep.tau << "\n"
	          << "workers           " << rep.workers << " (lower bound "
	          << rep.worker_lower_bound_value << ")\n";
	if (rep.mu) {
		std::cout << "mu                " << *rep.mu << "%\n";
	}
	std::cout << "utilization       " << rep.utilization << "%\n"
	          << "total time        " << rep.total_time_s << " s\n";

	if (!a.out_file.empty()) {
		json jrep = wsched::report_to_json(rep);
		jrep["plot_data"] = plot_data(result, inst);
		wsched::write_text_file(a.out_file, jrep.dump(2) + "\n");
	}
	if (!a.roster_file.empty()) {
		wsched::write_text_file(
		    a.roster_file, wsched::roster_to_json(result.roster, result.schedules).dump(2) + "\n");
	}
	return kExitOk;
}

int cmd_simulate(const Args& a) {
	wsched::Instance inst;
	if (a.emergency_scale > 0) {
		inst = wsched::emergency_like(a.emergency_scale);
	} else {
		wsched::SimConfig config;
		if (a.size == "small") {
			config.size = wsched::SimSize::Small;
		} else if (a.size == "medium") {
			config.size = wsched::SimSize::Medium;
		} else if (a.size == "large") {
			config.size = wsched::SimSize::Large;
		} else {
			throw std::invalid_argument("unknown size: " + a.size);
		}
		if (a.mix.size() == 2 && a.mix[0] == 'S' && a.mix[1] >= '1' && a.mix[1] <= '6') {
			config.mix = static_cast<wsched::SimMix>(a.mix[1] - '1');
		} else {
			throw std::invalid_argument("unknown mix: " + a.mix);
		}
		if (!a.window_mode.empty()) {
			if (a.window_mode == "clustered") {
				config.window_mode = wsched::WindowMode::Clustered;
			} else if (a.window_mode == "uniform") {
				config.window_mode = wsched::WindowMode::UniformAcrossDays;
			} else {
				throw std::invalid_argument("unknown window mode: " + a.window_mode);
			}
		}
		config.seed = a.seed;
		inst = wsched::simulate(config);
	}
	double hours = static_cast<double>(wsched::total_demand_half(inst)) / 2.0 *
	               inst.horizon.omega / 60.0;
	std::cout << inst.tasks.size() << " tasks, " << inst.precedence.size()
	          << " precedence pairs, " << hours << " worker-hours\n";
	if (!a.out_file.empty()) {
		wsched::write_text_file(a.out_file, wsched::instance_to_json(inst).dump(2) + "\n");
		std::cout << "wrote " << a.out_file << "\n";
	}
	return kExitOk;
}

std::string svg_line_chart(const std::vector<double>& demand, const std::vector<double>& supply) {
	const int width = 960, height = 360, margin = 40;
	double peak = 1;
	for (double v : demand) peak = std::max(peak, v);
	for (double v : supply) peak = std::max(peak, v);
	auto path_of = [&](const std::vector<double>& v) {
		std::ostringstream p;
		for (std::size_t i = 0; i < v.size(); ++i) {
			double x = margin + (width - 2.0 * margin) * static_cast<double>(i) /
			                        std::max<std::size_t>(1, v.size() - 1);
			double y = height - margin - (height - 2.0 * margin) * v[i] / peak;
			p << (i == 0 ? "M" : "L") << x << " " << y << " ";
		}
		return p.str();
	};
	std::ostringstream os;
	os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
	   << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
	   << "<path d='" << path_of(demand) << "' fill='none' stroke='#c0392b' stroke-width='1'/>\n";
	if (!supply.empty()) {
		os << "<path d='" << path_of(supply)
		   << "' fill='none' stroke='#2980b9' stroke-width='1'/>\n";
	}
	os << "<text x='" << margin << "' y='20' font-size='12'>red: demand, blue: supply, peak "
	   << peak << "</text>\n</svg>\n";
	return os.str();
}

std::string svg_gantt(const json& workers, int T) {
	const int row_h = 14, margin = 40, width = 960;
	int height = margin * 2 + row_h * static_cast<int>(workers.size());
	std::ostringstream os;
	os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
	   << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
	int row = 0;
	for (const auto& w : workers) {
		double y = margin + row * row_h;
		for (const auto& span : w.at("spans")) {
			int start = span.at(0).get<int>();
			int len = span.at(1).get<int>();
			// wrapped spans render as two rectangles
			int first = std::min(len, T - start + 1);
			auto rect = [&](int s, int l) {
				double x = margin + (width - 2.0 * margin) * (s - 1) / T;
				double rw = (width - 2.0 * margin) * l / static_cast<double>(T);
				os << "<rect x='" << x << "' y='" << y << "' width='" << rw << "' height='"
				   << row_h - 3 << "' fill='#2980b9'/>\n";
			};
			rect(start, first);
			if (first < len) {
				rect(1, len - first);
			}
		}
		os << "<text x='4' y='" << y + row_h - 4 << "' font-size='10'>w"
		   << w.at("index").get<int>() << "</text>\n";
		++row;
	}
	os << "</svg>\n";
	return os.str();
}

int cmd_report(const Args& a) {
	json j = json::parse(wsched::read_text_file(a.report_file));
	if (a.plot.empty()) {
		wsched::RunReport rep = wsched::report_from_json(j);
		std::cout << "method " << rep.method << ", workers " << rep.workers << ", tau " << rep.tau
		          << ", utilization " << rep.utilization << "%\n";
		return kExitOk;
	}
	if (!j.contains("plot_data")) {
		throw std::invalid_argument("report has no plot_data (re-run solve with --out)");
	}
	const auto& pd = j.at("plot_data");
	bool csv = a.out_file.size() >= 4 &&
	           a.out_file.substr(a.out_file.size() - 4) == ".csv";
	std::string rendered;
	if (a.plot == "demand" || a.plot == "supply") {
		std::vector<double> demand, supply;
		for (const auto& v : pd.at("demand")) demand.push_back(v.get<double>());
		for (const auto& v : pd.at("supply")) supply.push_back(v.get<double>());
		if (csv) {
			std::ostringstream os;
			os << "tp,demand,supply\n";
			for (std::size_t i = 0; i < demand.size(); ++i) {
				os << i + 1 << "," << demand[i] << "," << (i < supply.size() ? supply[i] : 0)
				   << "\n";
			}
			rendered = os.str();
		} else {
			rendered = a.plot == "demand" ? svg_line_chart(demand, supply)
			                              : svg_line_chart(demand, supply);
		}
	} else if (a.plot == "gantt") {
		if (csv) {
			std::ostringstream os;
			os << "worker,start,length\n";
			for (const auto& w : pd.at("workers")) {
				for (const auto& span : w.at("spans")) {
					os << w.at("index").get<int>() << "," << span.at(0).get<int>() << ","
					   << span.at(1).get<int>() << "\n";
				}
			}
			rendered = os.str();
		} else {
			rendered = svg_gantt(pd.at("workers"), pd.at("T").get<int>());
		}
	} else {
		throw std::invalid_argument("unknown plot kind: " + a.plot);
	}
	if (a.out_file.empty()) {
		std::cout << rendered;
	} else {
		wsched::write_text_file(a.out_file, rendered);
		std::cout << "wrote " << a.out_file << "\n";
	}
	return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"workforce shift and task scheduling toolkit"};
	app.require_subcommand(1);
	Args a;

	auto* patterns = app.add_subcommand("patterns", "generate a shift pattern family");
	patterns->add_option("family", a.family, "FX260|FL15|FL135|FX29|CUSTOM|STOLLETZ")->required();
	patterns->add_option("--rules", a.rules_file, "rule set JSON for CUSTOM");
	patterns->add_option("--out", a.out_file, "write the pattern set JSON here");

	auto* validate = app.add_subcommand("validate", "check an instance file");
	validate->add_option("instance", a.instance_file)->required();

	auto* solve = app.add_subcommand("solve", "run the two-stage method");
	solve->add_option("instance", a.instance_file)->required();
	solve->add_option("--objective", a.objective, "workers|cost|overcover");
	solve->add_option("--rho", a.rho, "auto or an integer splitting factor");
	solve->add_option("--time-limit", a.time_limit, "per-stage seconds");
	solve->add_option("--overlap", a.overlap, "cyclic|linear");
	solve->add_option("--budget", a.row_budget, "stage-2 row budget");
	solve->add_option("--seed", a.seed);
	solve->add_flag("--no-refine", a.no_refine, "skip the max-coverage bound refinement");
	solve->add_option("--out", a.out_file, "report JSON path");
	solve->add_option("--roster", a.roster_file, "roster JSON path");

	auto* simulate = app.add_subcommand("simulate", "generate a benchmark instance");
	simulate->add_option("--size", a.size, "small|medium|large");
	simulate->add_option("--mix", a.mix, "S1..S6");
	simulate->add_option("--window-mode", a.window_mode, "clustered|uniform");
	simulate->add_option("--seed", a.seed);
	simulate->add_option("--emergency", a.emergency_scale,
	                     "emergency-service shape at this scale instead");
	simulate->add_option("--out", a.out_file, "instance JSON path");

	auto* report = app.add_subcommand("report", "summarize or plot a solve report");
	report->add_option("report", a.report_file)->required();
	report->add_option("--plot", a.plot, "demand|supply|gantt");
	report->add_option("--out", a.out_file, "svg or csv output path");

	CLI11_PARSE(app, argc, argv);
	try {
		if (*patterns) return cmd_patterns(a);
		if (*validate) return cmd_validate(a);
		if (*solve) return cmd_solve(a);
		if (*simulate) return cmd_simulate(a);
		if (*report) return cmd_report(a);
	} catch (const wsched::BudgetExceededError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitBudget;
	} catch (const wsched::InfeasibleError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitInfeasible;
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitInvalidInput;
	} catch (const nlohmann::json::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitInvalidInput;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitInfeasible;
	}
	return kExitOk;
}
