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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aerlink/harness/config.hpp"
#include "aerlink/link.hpp"
#include "aerlink/power.hpp"

namespace aerlink::harness {

enum class ScenarioKind { Single, Stream, Periodic, Poisson, Burst, Saturation, Idle };

/// Throws ConfigError for unknown names.
ScenarioKind scenario_from_string(std::string_view name);
std::string to_string(ScenarioKind kind);
const std::vector<std::string>& scenario_names();

struct ScenarioSpec {
	ScenarioKind kind = ScenarioKind::Single;
	RunConfig config{};
	/// Defaults per scenario when empty (single 1, burst burst_size, others 100).
	std::optional<std::uint64_t> n_events;
	/// Quiet time simulated by the idle scenario.
	sim::Duration idle_window = sim::SimTime::us(1);
	/// Stall timeout; a quiet link with pending work counts as a violation.
	sim::Duration watchdog = sim::SimTime::us(10);
	bool record_vcd = false;
	bool vcd_date = false;
};

/// One CSV row; the column order is fixed by csv_header().
struct ResultRow {
	std::string scenario;
	double rate_eps = 0.0;
	double throughput_eps = 0.0;
	double first_latency_ns = 0.0;
	double period_ns = 0.0;
	double awake_ns_per_event = 0.0;
	double i_tx_a = 0.0;
	double i_rx_a = 0.0;
	std::uint64_t violations = 0;
};

struct ScenarioResult {
	ResultRow row;
	LinkStats stats;
	TraceEnergy energy;
	std::uint64_t events_offered = 0;
	std::uint64_t invariant_failures = 0;
	std::optional<StallDiagnosis> stall;
	/// Filled when ScenarioSpec::record_vcd is set.
	std::string vcd;
};

std::uint64_t default_events(const ScenarioSpec& spec);

/// Builds a fresh kernel, runs the scenario to quiescence and summarises it.
/// Throws ConfigError for an invalid configuration.
ScenarioResult run_scenario(const ScenarioSpec& spec);

/// Runs `base` once per value of `key`. Runs are independent and may execute
/// on up to `jobs` threads; results come back in value order.
std::vector<ScenarioResult> run_sweep(const ScenarioSpec& base, const std::string& key,
                                      const std::vector<std::string>& values, unsigned jobs = 1);

std::string csv_header();
std::string csv_row(const ResultRow& row);
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

}  // namespace aerlink::harness
