/*
 * Copyright 2026 The aerlink Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// lvdsim: command-line front end for the aerlink link simulator.
//
//   lvdsim run   --scenario periodic --set rate=1Meps --csv out.csv
//   lvdsim sweep --scenario periodic --param rate --values 1keps,1Meps,10Meps
//   lvdsim trace --scenario single -o single.vcd
//
// Exit codes: 0 ok, 1 configuration error, 2 I/O error, 3 protocol violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aerlink/errors.hpp"
#include "aerlink/harness/config.hpp"
#include "aerlink/harness/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace aerlink;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitViolation = 3;

struct IoError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Common {
	std::string scenario = "single";
	std::string config_file;
	std::vector<std::string> sets;
	std::uint64_t events = 0;
	std::string watchdog = "10us";
};

void add_common(CLI::App* cmd, Common& c) {
	cmd->add_option("-s,--scenario", c.scenario, "single|stream|periodic|poisson|burst|saturation|idle")
	    ->capture_default_str();
	cmd->add_option("-c,--config", c.config_file, "key=value config file");
	cmd->add_option("--set", c.sets, "override one key (repeatable), e.g. --set t_d=670ps");
	cmd->add_option("-n,--events", c.events, "number of events (default depends on scenario)");
	cmd->add_option("--watchdog", c.watchdog, "stall timeout")->capture_default_str();
}

/// Relative output paths land in $AERLINK_OUT_DIR when it is set.
fs::path output_path(const std::string& p) {
	fs::path path(p);
	if (path.is_relative()) {
		if (const char* dir = std::getenv("AERLINK_OUT_DIR"); dir && *dir) path = fs::path(dir) / path;
	}
	return path;
}

void write_file(const fs::path& path, const std::string& text) {
	std::error_code ec;
	if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
	std::ofstream out(path, std::ios::binary);
	if (!out) throw IoError("cannot open " + path.string() + " for writing");
	out << text;
	if (!out.flush()) throw IoError("failed writing " + path.string());
}

harness::ScenarioSpec build_spec(const Common& c) {
	harness::ScenarioSpec spec;
	spec.kind = harness::scenario_from_string(c.scenario);
	if (!c.config_file.empty()) {
		std::ifstream in(c.config_file);
		if (!in) throw IoError("cannot read config file " + c.config_file);
		harness::apply_overrides(spec.config, harness::parse_config_file(in));
	}
	for (const auto& s : c.sets) {
		const auto [k, v] = harness::parse_assignment(s);
		harness::apply_override(spec.config, k, v);
	}
	if (c.events > 0) spec.n_events = c.events;
	spec.watchdog = harness::parse_duration(c.watchdog);
	spec.config.link.validate();
	return spec;
}

void emit_csv(const std::string& csv_path, const std::vector<harness::ResultRow>& rows) {
	std::ostringstream os;
	harness::write_csv(os, rows);
	if (csv_path.empty() || csv_path == "-")
		std::cout << os.str();
	else
		write_file(output_path(csv_path), os.str());
}

int report(const std::vector<harness::ScenarioResult>& results) {
	int code = kExitOk;
	for (const auto& r : results) {
		if (r.stall) std::cerr << "lvdsim: " << r.row.scenario << ": stall: " << r.stall->message << "\n";
		if (r.row.violations > 0) {
			std::cerr << "lvdsim: " << r.row.scenario << ": " << r.row.violations << " protocol violation(s)\n";
			code = kExitViolation;
		}
	}
	return code;
}

std::vector<std::string> split_values(const std::string& s) {
	std::vector<std::string> out;
	std::stringstream ss(s);
	for (std::string item; std::getline(ss, item, ',');)
		if (!item.empty()) out.push_back(item);
	return out;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"Discrete-event simulator of an asynchronous bit-serial LVDS address-event link"};
	app.require_subcommand(1);

	Common run_opts;
	std::string run_csv, run_vcd;
	auto* run = app.add_subcommand("run", "run one scenario and print a CSV row");
	add_common(run, run_opts);
	run->add_option("--csv", run_csv, "CSV output file (default stdout)");
	run->add_option("--vcd", run_vcd, "also write a waveform");

	Common sweep_opts;
	std::string sweep_csv, param, values;
	unsigned jobs = 1;
	auto* sweep = app.add_subcommand("sweep", "run a scenario once per parameter value");
	add_common(sweep, sweep_opts);
	sweep->add_option("-p,--param", param, "config key to vary")->required();
	sweep->add_option("-v,--values", values, "comma-separated values, e.g. 1keps,1Meps")->required();
	sweep->add_option("-j,--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber)->capture_default_str();
	sweep->add_option("--csv", sweep_csv, "CSV output file (default stdout)");

	Common trace_opts;
	std::string trace_out;
	bool trace_date = false;
	auto* trace = app.add_subcommand("trace", "run a scenario and write a VCD waveform");
	add_common(trace, trace_opts);
	trace->add_option("-o,--output", trace_out, "VCD file (default <scenario>.vcd)");
	trace->add_flag("--date", trace_date, "include a $date header");

	auto* keys = app.add_subcommand("keys", "list config keys and scenarios");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return kExitConfig;
	}

	try {
		if (*keys) {
			for (const auto& k : harness::known_keys()) std::cout << k << "\n";
			std::cout << "scenarios:";
			for (const auto& s : harness::scenario_names()) std::cout << ' ' << s;
			std::cout << "\n";
			return kExitOk;
		}
		if (*run) {
			auto spec = build_spec(run_opts);
			spec.record_vcd = !run_vcd.empty();
			auto result = harness::run_scenario(spec);
			if (spec.record_vcd) write_file(output_path(run_vcd), result.vcd);
			emit_csv(run_csv, {result.row});
			return report({result});
		}
		if (*sweep) {
			const auto spec = build_spec(sweep_opts);
			const auto vals = split_values(values);
			if (vals.empty()) throw ConfigError(param, "no sweep values given");
			const auto results = harness::run_sweep(spec, param, vals, jobs);
			std::vector<harness::ResultRow> rows;
			for (const auto& r : results) rows.push_back(r.row);
			emit_csv(sweep_csv, rows);
			return report(results);
		}
		if (*trace) {
			auto spec = build_spec(trace_opts);
			spec.record_vcd = true;
			spec.vcd_date = trace_date;
			auto result = harness::run_scenario(spec);
			const auto path = output_path(trace_out.empty() ? trace_opts.scenario + ".vcd" : trace_out);
			write_file(path, result.vcd);
			std::cerr << "lvdsim: wrote " << path.string() << "\n";
			return report({result});
		}
	} catch (const ConfigError& e) {
		std::cerr << "lvdsim: config error";
		if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
		std::cerr << ": " << e.what() << "\n";
		return kExitConfig;
	} catch (const IoError& e) {
		std::cerr << "lvdsim: " << e.what() << "\n";
		return kExitIo;
	}
	return kExitOk;
}
