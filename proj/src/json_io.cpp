#include "wsched/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wsched {

using nlohmann::json;

namespace {

std::string break_kind_name(BreakKind k) {
	switch (k) {
		case BreakKind::Lunch: return "lunch";
		case BreakKind::Tea: return "tea";
		case BreakKind::Relief: return "relief";
	}
	return "?";
}

BreakKind break_kind_from(const std::string& s) {
	if (s == "lunch") return BreakKind::Lunch;
	if (s == "tea") return BreakKind::Tea;
	if (s == "relief") return BreakKind::Relief;
	throw std::invalid_argument("unknown break kind: " + s);
}

json cells_to_json(const ShiftPattern& p) {
	json cells = json::array();
	for (int t = 1; t <= p.length(); ++t) {
		double c = p.cell(t);
		if (c == 0.5) {
			cells.push_back(0.5);
		} else {
			cells.push_back(static_cast<int>(c));
		}
	}
	return cells;
}

}  // namespace

json patterns_to_json(const std::string& family, int omega,
                      const std::vector<ShiftPattern>& patterns) {
	json out;
	out["family"] = family;
	out["omega"] = omega;
	json arr = json::array();
	for (const auto& p : patterns) {
		json jp;
		jp["cells"] = cells_to_json(p);
		json breaks = json::array();
		for (const auto& b : p.breaks) {
			breaks.push_back({{"kind", break_kind_name(b.kind)},
			                  {"position", b.position},
			                  {"span", b.span_tp},
			                  {"half", b.half}});
		}
		jp["breaks"] = breaks;
		arr.push_back(std::move(jp));
	}
	out["patterns"] = std::move(arr);
	return out;
}

std::vector<ShiftPattern> patterns_from_json(const json& j, int* omega) {
	if (omega) {
		*omega = j.value("omega", 30);
	}
	std::vector<ShiftPattern> out;
	for (const auto& jp : j.at("patterns")) {
		ShiftPattern p;
		for (const auto& c : jp.at("cells")) {
			double v = c.get<double>();
			if (v != 0.0 && v != 0.5 && v != 1.0) {
				throw std::invalid_argument("pattern cell must be 0, 0.5 or 1");
			}
			p.cells_half.push_back(static_cast<std::int8_t>(v * 2));
		}
		if (jp.contains("breaks")) {
			for (const auto& jb : jp.at("breaks")) {
				p.breaks.push_back({break_kind_from(jb.at("kind").get<std::string>()),
				                    jb.at("position").get<int>(), jb.at("span").get<int>(),
				                    jb.at("half").get<bool>()});
			}
		}
		out.push_back(std::move(p));
	}
	return out;
}

json rules_to_json(const PatternRuleSet& rules) {
	json out;
	out["omega"] = rules.omega;
	json classes = json::array();
	for (const auto& c : rules.classes) {
		json jc;
		jc["sl_min"] = c.sl_min;
		jc["sl_max"] = c.sl_max;
		json breaks = json::array();
		for (const auto& b : c.breaks) {
			breaks.push_back({{"kind", break_kind_name(b.kind)},
			                  {"count", b.count},
			                  {"span", b.span_tp},
			                  {"half", b.half}});
		}
		jc["breaks"] = std::move(breaks);
		classes.push_back(std::move(jc));
	}
	out["classes"] = std::move(classes);
	out["head_protect"] = rules.head_protect;
	out["tail_protect"] = rules.tail_protect;
	out["gap_minutes"] = rules.gap_minutes;
	out["gap_mode"] = rules.gap_mode == GapMode::WholeTp     ? "whole_tp"
	                  : rules.gap_mode == GapMode::PairedHalf ? "paired_half"
	                                                          : "free_half";
	out["merge_adjacent"] = rules.merge_adjacent;
	out["placement"] =
	    rules.placement == BreakPlacement::EnumerateAll ? "enumerate" : "centered";
	if (!rules.doc.empty()) {
		out["doc"] = rules.doc;
	}
	return out;
}

PatternRuleSet rules_from_json(const json& j) {
	PatternRuleSet rules;
	rules.omega = j.value("omega", 30);
	for (const auto& jc : j.at("classes")) {
		LengthClass c;
		c.sl_min = jc.at("sl_min").get<int>();
		c.sl_max = jc.at("sl_max").get<int>();
		if (jc.contains("breaks")) {
			for (const auto& jb : jc.at("breaks")) {
				c.breaks.push_back({break_kind_from(jb.at("kind").get<std::string>()),
				                    jb.at("count").get<int>(), jb.at("span").get<int>(),
				                    jb.at("half").get<bool>()});
			}
		}
		rules.classes.push_back(std::move(c));
	}
	rules.head_protect = j.value("head_protect", 0);
	rules.tail_protect = j.value("tail_protect", 0);
	rules.gap_minutes = j.value("gap_minutes", 0);
	std::string mode = j.value("gap_mode", "whole_tp");
	rules.gap_mode = mode == "paired_half" ? GapMode::PairedHalf
	                 : mode == "free_half" ? GapMode::FreeHalf
	                                       : GapMode::WholeTp;
	rules.merge_adjacent = j.value("merge_adjacent", false);
	rules.placement = j.value("placement", std::string("enumerate")) == "centered"
	                      ? BreakPlacement::Centered
	                      : BreakPlacement::EnumerateAll;
	rules.doc = j.value("doc", "");
	return rules;
}

json instance_to_json(const Instance& inst) {
	json out;
	out["horizon"] = {{"T", inst.horizon.T}, {"omega", inst.horizon.omega}};
	if (!inst.horizon.cyclic) {
		out["horizon"]["cyclic"] = false;
	}
	json tasks = json::array();
	for (const auto& t : inst.tasks) {
		tasks.push_back({{"id", t.id},
		                 {"window", {t.window_lo, t.window_hi}},
		                 {"duration", t.duration},
		                 {"resource", t.resource}});
	}
	out["tasks"] = std::move(tasks);
	json prec = json::array();
	for (const auto& [a, b] : inst.precedence) {
		prec.push_back({a, b});
	}
	out["precedence"] = std::move(prec);
	if (inst.fixed_demand) {
		out["fixed_demand"] = inst.fixed_demand->to_ints();
	}
	out["pattern_family"] = family_name(inst.pattern_family);
	if (inst.custom_rules) {
		out["rules"] = rules_to_json(*inst.custom_rules);
	}
	if (!inst.explicit_patterns.empty()) {
		out["patterns"] =
		    patterns_to_json(family_name(inst.pattern_family), inst.horizon.omega,
		                     inst.explicit_patterns)["patterns"];
	}
	json costs;
	switch (inst.costs.kind) {
		case CostKind::Uniform: costs["kind"] = "uniform"; break;
		case CostKind::PerDuration: costs["kind"] = "per_duration"; break;
		case CostKind::Matrix: costs["kind"] = "matrix"; break;
	}
	if (!inst.costs.per_duration.empty()) {
		json table;
		for (const auto& [m, c] : inst.costs.per_duration) {
			table[std::to_string(m)] = c;
		}
		costs["table"] = std::move(table);
	}
	if (!inst.costs.matrix.empty()) {
		costs["matrix"] = inst.costs.matrix;
	}
	out["costs"] = std::move(costs);
	json policy;
	if (inst.policy.max_shifts_b) {
		policy["max_shifts"] = *inst.policy.max_shifts_b;
	}
	policy["rest_gap"] = inst.policy.rest_gap_g;
	if (inst.policy.max_hours_H) {
		policy["max_hours"] = *inst.policy.max_hours_H;
	}
	policy["days_off"] = inst.policy.days_off == DaysOffPolicy::None ? "none"
	                     : inst.policy.days_off == DaysOffPolicy::TwoConsecutive
	                         ? "two_consecutive"
	                         : "two_total";
	if (inst.policy.max_workers_w) {
		policy["max_workers"] = *inst.policy.max_workers_w;
	}
	policy["load_constraint"] =
	    inst.policy.load_constraint_kind == LoadKind::Shifts ? "shifts" : "hours";
	if (!inst.policy.symmetry_breaking) {
		policy["symmetry_breaking"] = false;
	}
	out["policy"] = std::move(policy);
	return out;
}

Instance instance_from_json(const json& j) {
	Instance inst;
	inst.horizon.T = j.at("horizon").at("T").get<int>();
	inst.horizon.omega = j.at("horizon").at("omega").get<int>();
	inst.horizon.cyclic = j.at("horizon").value("cyclic", true);
	if (j.contains("tasks")) {
		for (const auto& jt : j.at("tasks")) {
			Task t;
			t.id = jt.at("id").get<int>();
			t.window_lo = jt.at("window").at(0).get<int>();
			t.window_hi = jt.at("window").at(1).get<int>();
			t.duration = jt.at("duration").get<int>();
			t.resource = jt.at("resource").get<std::vector<std::int64_t>>();
			inst.tasks.push_back(std::move(t));
		}
	}
	if (j.contains("precedence")) {
		for (const auto& jp : j.at("precedence")) {
			inst.precedence.emplace_back(jp.at(0).get<int>(), jp.at(1).get<int>());
		}
	}
	if (j.contains("fixed_demand")) {
		inst.fixed_demand =
		    PeriodVector::from_ints(j.at("fixed_demand").get<std::vector<std::int64_t>>());
	}
	if (j.contains("pattern_family")) {
		auto fam = family_from_string(j.at("pattern_family").get<std::string>());
		if (!fam) {
			throw std::invalid_argument("unknown pattern family");
		}
		inst.pattern_family = *fam;
	}
	if (j.contains("rules")) {
		inst.custom_rules = rules_from_json(j.at("rules"));
	}
	if (j.contains("patterns")) {
		json wrapper;
		wrapper["patterns"] = j.at("patterns");
		inst.explicit_patterns = patterns_from_json(wrapper);
	}
	if (j.contains("costs")) {
		const auto& jc = j.at("costs");
		std::string kind = jc.value("kind", "per_duration");
		inst.costs.kind = kind == "uniform"  ? CostKind::Uniform
		                  : kind == "matrix" ? CostKind::Matrix
		                                     : CostKind::PerDuration;
		if (jc.contains("table")) {
			for (const auto& [key, value] : jc.at("table").items()) {
				inst.costs.per_duration[std::stoi(key)] = value.get<double>();
			}
		}
		if (jc.contains("matrix")) {
			inst.costs.matrix = jc.at("matrix").get<std::vector<double>>();
		}
	}
	if (j.contains("policy")) {
		const auto& jp = j.at("policy");
		if (jp.contains("max_shifts")) {
			inst.policy.max_shifts_b = jp.at("max_shifts").get<int>();
		}
		inst.policy.rest_gap_g = jp.value("rest_gap", 0);
		if (jp.contains("max_hours")) {
			inst.policy.max_hours_H = jp.at("max_hours").get<int>();
		}
		std::string days_off = jp.value("days_off", "none");
		inst.policy.days_off = days_off == "two_consecutive" ? DaysOffPolicy::TwoConsecutive
		                       : days_off == "two_total"     ? DaysOffPolicy::TwoTotal
		                                                     : DaysOffPolicy::None;
		if (jp.contains("max_workers")) {
			inst.policy.max_workers_w = jp.at("max_workers").get<int>();
		}
		inst.policy.load_constraint_kind =
		    jp.value("load_constraint", "shifts") == "hours" ? LoadKind::Hours : LoadKind::Shifts;
		inst.policy.symmetry_breaking = jp.value("symmetry_breaking", true);
	}
	return inst;
}

Instance instance_from_csv(const std::string& text, int omega, Family family) {
	std::vector<std::int64_t> values;
	std::string token;
	for (char c : text) {
		if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
			token.push_back(c);
		} else if (!token.empty()) {
			values.push_back(std::stoll(token));
			token.clear();
		}
	}
	if (!token.empty()) {
		values.push_back(std::stoll(token));
	}
	if (values.empty()) {
		throw std::invalid_argument("demand CSV holds no numbers");
	}
	Instance inst;
	inst.horizon.T = static_cast<int>(values.size());
	inst.horizon.omega = omega;
	inst.fixed_demand = PeriodVector::from_ints(values);
	inst.pattern_family = family;
	return inst;
}

Instance load_instance(const std::string& path) {
	std::string text = read_text_file(path);
	if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
		return instance_from_csv(text, 30, Family::FX260);
	}
	return instance_from_json(json::parse(text));
}

json stage1_to_json(const Stage1Solution& sol) {
	json out;
	json starts;
	for (const auto& [task, start] : sol.starts) {
		starts[std::to_string(task)] = start;
	}
	out["starts"] = std::move(starts);
	json schedules = json::array();
	for (const auto& [key, count] : sol.schedule_counts) {
		schedules.push_back({key.first, key.second, count});
	}
	out["schedules"] = std::move(schedules);
	out["objective"] = sol.objective_value;
	out["bound"] = sol.lower_bound;
	out["tau"] = sol.num_schedules;
	return out;
}

json roster_to_json(const Roster& roster, const std::vector<ShiftSchedule>& schedules) {
	json out;
	json workers = json::array();
	for (const auto& w : roster.workers) {
		json jw;
		jw["index"] = w.index;
		json assigned = json::array();
		for (int v : w.schedule_ids) {
			const auto& s = schedules[static_cast<std::size_t>(v)];
			assigned.push_back({s.pattern_id, s.start_tp});
		}
		jw["schedules"] = std::move(assigned);
		if (w.day_off) {
			jw["day_off"] = *w.day_off;
		}
		workers.push_back(std::move(jw));
	}
	out["workers"] = std::move(workers);
	out["workers_used"] = roster.workers_used;
	out["violations"] = roster.violations;
	return out;
}

json report_to_json(const RunReport& r) {
	json out;
	out["instance"] = {{"T", r.T}, {"K", r.K}, {"total_demand_wh", r.total_demand_wh}};
	out["method"] = r.method;
	out["rho"] = r.rho;
	json s1 = {{"objective", r.stage1_objective},
	           {"bound", r.stage1_bound},
	           {"tau", r.tau},
	           {"time_s", r.stage1_time_s},
	           {"status", r.stage1_status}};
	if (r.coverage_bound) {
		s1["coverage_bound"] = *r.coverage_bound;
	}
	if (r.stage1_mu) {
		s1["mu"] = *r.stage1_mu;
	}
	out["stage1"] = std::move(s1);
	out["stage2"] = {{"workers", r.workers},
	                 {"time_s", r.stage2_time_s},
	                 {"variables", r.stage2_variables},
	                 {"constraints", r.stage2_constraints}};
	auto sub_json = [](const SubReport& s) {
		return json{{"stage1_objective", s.stage1_objective},
		            {"stage1_bound", s.stage1_bound},
		            {"tau", s.tau},
		            {"workers", s.workers},
		            {"time_s", s.time_s}};
	};
	if (r.split_sub1) {
		out["split"] = {{"rho", r.rho},
		                {"sub1", sub_json(*r.split_sub1)},
		                {"sub2", sub_json(*r.split_sub2)}};
	}
	json metrics;
	if (r.mu) {
		metrics["mu"] = *r.mu;
	}
	metrics["utilization"] = r.utilization;
	metrics["worker_lower_bound"] = r.worker_lower_bound_value;
	out["metrics"] = std::move(metrics);
	out["total_time_s"] = r.total_time_s;
	return out;
}

RunReport report_from_json(const json& j) {
	RunReport r;
	r.T = j.at("instance").at("T").get<int>();
	r.K = j.at("instance").at("K").get<int>();
	r.total_demand_wh = j.at("instance").at("total_demand_wh").get<double>();
	r.method = j.value("method", "direct");
	r.rho = j.value("rho", 1);
	const auto& s1 = j.at("stage1");
	r.stage1_objective = s1.at("objective").get<double>();
	r.stage1_bound = s1.at("bound").get<double>();
	r.tau = s1.at("tau").get<int>();
	r.stage1_time_s = s1.at("time_s").get<double>();
	r.stage1_status = s1.value("status", "");
	if (s1.contains("coverage_bound")) {
		r.coverage_bound = s1.at("coverage_bound").get<int>();
	}
	if (s1.contains("mu")) {
		r.stage1_mu = s1.at("mu").get<double>();
	}
	const auto& s2 = j.at("stage2");
	r.workers = s2.at("workers").get<int>();
	r.stage2_time_s = s2.at("time_s").get<double>();
	r.stage2_variables = s2.at("variables").get<std::int64_t>();
	r.stage2_constraints = s2.at("constraints").get<std::int64_t>();
	auto sub_from = [](const json& js) {
		SubReport s;
		s.stage1_objective = js.at("stage1_objective").get<double>();
		s.stage1_bound = js.at("stage1_bound").get<double>();
		s.tau = js.at("tau").get<int>();
		s.workers = js.at("workers").get<int>();
		s.time_s = js.at("time_s").get<double>();
		return s;
	};
	if (j.contains("split")) {
		r.split_sub1 = sub_from(j.at("split").at("sub1"));
		r.split_sub2 = sub_from(j.at("split").at("sub2"));
	}
	const auto& metrics = j.at("metrics");
	if (metrics.contains("mu")) {
		r.mu = metrics.at("mu").get<double>();
	}
	r.utilization = metrics.at("utilization").get<double>();
	r.worker_lower_bound_value = metrics.at("worker_lower_bound").get<int>();
	r.total_time_s = j.value("total_time_s", 0.0);
	return r;
}

std::string read_text_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw std::invalid_argument("cannot open " + path);
	}
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) {
		throw std::invalid_argument("cannot write " + path);
	}
	out << content;
}

}  // namespace wsched
