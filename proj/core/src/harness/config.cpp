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

#include "aerlink/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>

#include "aerlink/errors.hpp"

namespace aerlink::harness {

namespace {

std::string_view trim(std::string_view s) {
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
	return s;
}

struct Unit {
	std::string_view suffix;
	double scale;
};

/// Longest matching suffix wins, so "ms" is not read as "s".
double parse_with_units(std::string_view text, std::initializer_list<Unit> units, const char* what) {
	const std::string_view t = trim(text);
	const Unit* best = nullptr;
	for (const auto& u : units) {
		if (t.size() > u.suffix.size() && t.ends_with(u.suffix) && (!best || u.suffix.size() > best->suffix.size()))
			best = &u;
	}
	if (!best) throw ConfigError({}, std::string("expected a ") + what + " with a unit, got '" + std::string(t) + "'");
	const std::string number(trim(t.substr(0, t.size() - best->suffix.size())));
	std::size_t used = 0;
	double v = 0.0;
	try {
		v = std::stod(number, &used);
	} catch (const std::exception&) {
		used = 0;
	}
	if (used != number.size() || number.empty() || !std::isfinite(v))
		throw ConfigError({}, std::string("malformed ") + what + " '" + std::string(t) + "'");
	if (v < 0) throw ConfigError({}, std::string(what) + " must be non-negative");
	return v * best->scale;
}

}  // namespace

sim::Duration parse_duration(std::string_view text) {
	const double ps = parse_with_units(text, {{"ps", 1}, {"ns", 1e3}, {"us", 1e6}, {"ms", 1e9}, {"s", 1e12}}, "duration");
	const double rounded = std::round(ps);
	if (std::abs(ps - rounded) > 1e-6 * std::max(1.0, ps))
		throw ConfigError({}, "duration '" + std::string(text) + "' is not a whole number of picoseconds");
	return sim::SimTime{static_cast<sim::SimTime::rep>(rounded)};
}

double parse_rate(std::string_view text) {
	return parse_with_units(text, {{"eps", 1}, {"keps", 1e3}, {"Meps", 1e6}, {"Geps", 1e9}}, "event rate");
}

double parse_current_na(std::string_view text) {
	return parse_with_units(text, {{"pA", 1e-3}, {"nA", 1}, {"uA", 1e3}, {"mA", 1e6}, {"A", 1e9}}, "current");
}

double parse_charge_nc(std::string_view text) {
	return parse_with_units(text, {{"fC", 1e-6}, {"pC", 1e-3}, {"nC", 1}, {"uC", 1e3}}, "charge");
}

double parse_voltage(std::string_view text) { return parse_with_units(text, {{"mV", 1e-3}, {"V", 1}}, "voltage"); }

double parse_resistance(std::string_view text) {
	return parse_with_units(text, {{"ohm", 1}, {"kohm", 1e3}}, "resistance");
}

std::uint64_t parse_count(std::string_view text) {
	const std::string_view t = trim(text);
	std::uint64_t v = 0;
	const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
	if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
		throw ConfigError({}, "expected a non-negative integer, got '" + std::string(t) + "'");
	return v;
}

sim::Jitter parse_jitter(std::string_view text) {
	const std::string_view t = trim(text);
	if (t == "none") return sim::Jitter::none();
	const auto colon = t.find(':');
	if (colon == std::string_view::npos) throw ConfigError({}, "jitter must be none, uniform:<dur> or normal:<dur>");
	const auto kind = t.substr(0, colon);
	const auto amp = parse_duration(t.substr(colon + 1));
	if (kind == "uniform") return sim::Jitter::uniform(amp);
	if (kind == "normal") return sim::Jitter::normal(amp);
	throw ConfigError({}, "unknown jitter kind '" + std::string(kind) + "'");
}

namespace {

using Setter = std::function<void(RunConfig&, std::string_view)>;

unsigned to_unsigned(std::uint64_t v) {
	if (v > 0xffffffffULL) throw ConfigError({}, "value out of range");
	return static_cast<unsigned>(v);
}

const std::vector<std::pair<std::string, Setter>>& setters() {
	static const std::vector<std::pair<std::string, Setter>> table = {
	    {"W", [](RunConfig& c, std::string_view v) { c.link.width = to_unsigned(parse_count(v)); }},
	    {"t_d", [](RunConfig& c, std::string_view v) { c.link.t_d = parse_duration(v); }},
	    {"t_wk", [](RunConfig& c, std::string_view v) { c.link.t_wk = parse_duration(v); }},
	    {"queue_depth", [](RunConfig& c, std::string_view v) { c.link.queue_depth = to_unsigned(parse_count(v)); }},
	    {"input_depth", [](RunConfig& c, std::string_view v) { c.link.input_depth = to_unsigned(parse_count(v)); }},
	    {"rx_cell_delay", [](RunConfig& c, std::string_view v) { c.link.rx_cell_delay = parse_duration(v); }},
	    {"ack_wire_delay", [](RunConfig& c, std::string_view v) { c.link.ack_wire_delay = parse_duration(v); }},
	    {"inter_event_gap", [](RunConfig& c, std::string_view v) { c.link.inter_event_gap = parse_duration(v); }},
	    {"gate_delay", [](RunConfig& c, std::string_view v) { c.link.gate_delay = parse_duration(v); }},
	    {"ack_pulse", [](RunConfig& c, std::string_view v) { c.link.ack_pulse = parse_duration(v); }},
	    {"wake_on", [](RunConfig& c, std::string_view v) { c.link.phy.wake_on = parse_duration(v); }},
	    {"wake_off", [](RunConfig& c, std::string_view v) { c.link.phy.wake_off = parse_duration(v); }},
	    {"n_lsb_repeat", [](RunConfig& c, std::string_view v) { c.link.phy.n_lsb_repeat = to_unsigned(parse_count(v)); }},
	    {"wire_delay", [](RunConfig& c, std::string_view v) { c.link.phy.wire_delay = parse_duration(v); }},
	    {"wire_skew", [](RunConfig& c, std::string_view v) { c.link.phy.wire_skew = parse_duration(v); }},
	    {"jitter", [](RunConfig& c, std::string_view v) { c.link.phy.jitter = parse_jitter(v); }},
	    {"jitter_seed", [](RunConfig& c, std::string_view v) { c.link.phy.jitter_seed = parse_count(v); }},
	    {"vref", [](RunConfig& c, std::string_view v) { c.link.phy.vref_volts = parse_voltage(v); }},
	    {"termination", [](RunConfig& c, std::string_view v) { c.link.phy.termination_ohms = parse_resistance(v); }},
	    {"i_leak_tx", [](RunConfig& c, std::string_view v) { c.power.i_leak_tx = Current::nA(parse_current_na(v)); }},
	    {"i_leak_rx", [](RunConfig& c, std::string_view v) { c.power.i_leak_rx = Current::nA(parse_current_na(v)); }},
	    {"q_event_tx", [](RunConfig& c, std::string_view v) { c.power.q_event_tx = Charge{parse_charge_nc(v)}; }},
	    {"q_event_rx", [](RunConfig& c, std::string_view v) { c.power.q_event_rx = Charge{parse_charge_nc(v)}; }},
	    {"vdd", [](RunConfig& c, std::string_view v) { c.power.vdd = parse_voltage(v); }},
	    {"rate", [](RunConfig& c, std::string_view v) { c.source.rate_eps = parse_rate(v); }},
	    {"seed", [](RunConfig& c, std::string_view v) { c.source.seed = parse_count(v); }},
	    {"burst_size", [](RunConfig& c, std::string_view v) { c.source.burst_size = to_unsigned(parse_count(v)); }},
	    {"burst_gap", [](RunConfig& c, std::string_view v) { c.source.burst_gap = parse_duration(v); }},
	    {"idle_gap", [](RunConfig& c, std::string_view v) { c.source.idle_gap = parse_duration(v); }},
	};
	return table;
}

}  // namespace

const std::vector<std::string>& known_keys() {
	static const std::vector<std::string> keys = [] {
		std::vector<std::string> k;
		for (const auto& [name, _] : setters()) k.push_back(name);
		return k;
	}();
	return keys;
}

bool is_known_key(std::string_view key) {
	const auto& k = known_keys();
	return std::find(k.begin(), k.end(), key) != k.end();
}

void apply_override(RunConfig& cfg, std::string_view key, std::string_view value) {
	for (const auto& [name, set] : setters()) {
		if (name != key) continue;
		try {
			set(cfg, value);
		} catch (const ConfigError& e) {
			throw ConfigError(std::string(key), e.what());
		}
		return;
	}
	throw ConfigError(std::string(key), "unknown config key");
}

void apply_overrides(RunConfig& cfg, const std::vector<Assignment>& overrides) {
	for (const auto& [k, v] : overrides) apply_override(cfg, k, v);
}

Assignment parse_assignment(std::string_view text) {
	const auto eq = text.find('=');
	if (eq == std::string_view::npos) throw ConfigError({}, "expected key=value, got '" + std::string(text) + "'");
	return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

std::vector<Assignment> parse_config_file(std::istream& in) {
	std::vector<Assignment> out;
	std::string line;
	while (std::getline(in, line)) {
		std::string_view l = line;
		if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
		l = trim(l);
		if (l.empty()) continue;
		out.push_back(parse_assignment(l));
	}
	return out;
}

}  // namespace aerlink::harness
