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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aerlink/link.hpp"
#include "aerlink/power.hpp"

namespace aerlink::harness {

// Quantity parsers. Dimensioned values must carry a unit suffix; a bare
// number is rejected so "670" can never be mistaken for 670 ns.

/// ps, ns, us, ms, s. The result must be a whole number of picoseconds.
sim::Duration parse_duration(std::string_view text);
/// "10000eps", "10keps", "35.7Meps", "1Geps".
double parse_rate(std::string_view text);
/// Returns nanoamps: "80nA", "5.2uA", "19.3mA", "1A".
double parse_current_na(std::string_view text);
/// Returns nanocoulombs: "540pC", "0.54nC", "1uC".
double parse_charge_nc(std::string_view text);
double parse_voltage(std::string_view text);
double parse_resistance(std::string_view text);
std::uint64_t parse_count(std::string_view text);
/// "none", "uniform:50ps", "normal:20ps".
sim::Jitter parse_jitter(std::string_view text);

/// Source parameters that scenarios read in addition to the link config.
struct SourceParams {
	double rate_eps = 1e6;
	std::uint64_t seed = 1;
	unsigned burst_size = 2;
	sim::Duration burst_gap = sim::SimTime::us(1);
	/// Extra idle time inserted after each periodic word (0 = use rate).
	sim::Duration idle_gap{};
};

struct RunConfig {
	LinkConfig link{};
	PowerParams power{};
	SourceParams source{};
};

using Assignment = std::pair<std::string, std::string>;

/// All keys accepted by apply_override, in documentation order.
const std::vector<std::string>& known_keys();
bool is_known_key(std::string_view key);

/// Throws ConfigError carrying the key for unknown keys or malformed values.
void apply_override(RunConfig& cfg, std::string_view key, std::string_view value);
void apply_overrides(RunConfig& cfg, const std::vector<Assignment>& overrides);

/// Splits "key=value"; throws ConfigError when there is no '='.
Assignment parse_assignment(std::string_view text);
/// Plain key=value lines; '#' starts a comment, blank lines are skipped.
std::vector<Assignment> parse_config_file(std::istream& in);

}  // namespace aerlink::harness
