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

#include "aerlink/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "aerlink/errors.hpp"
#include "aerlink/harness/vcd.hpp"

namespace aerlink::harness {

namespace {

struct NamedKind {
	const char* name;
	ScenarioKind kind;
};

constexpr NamedKind kKinds[] = {
    {"single", ScenarioKind::Single},       {"stream", ScenarioKind::Stream},
    {"periodic", ScenarioKind::Periodic},   {"poisson", ScenarioKind::Poisson},
    {"burst", ScenarioKind::Burst},         {"saturation", ScenarioKind::Saturation},
    {"idle", ScenarioKind::Idle},
};

std::string strip_prefix(const std::string& name, const std::string& prefix) {
	return name.starts_with(prefix) ? name.substr(prefix.size()) : name;
}

void add_link_probes(std::vector<VcdProbe>& probes, Link& link, const std::string& scope, const std::string& prefix) {
	auto add = [&](const sim::Signal& s) { probes.push_back({scope, strip_prefix(s.name(), prefix), &s}); };
	add(link.tx().tx_r());
	add(link.tx().enc_a());
	add(link.tx().data());
	add(link.tx().parity());
	for (const auto* pair : {&link.phy().data_pair(), &link.phy().parity_pair()}) {
		add(pair->tx_cm);
		add(pair->rx_cm);
		add(pair->rx_f);
		add(pair->rx_t);
		add(pair->rx_out);
	}
	add(link.out_a_rx());
	add(link.out_a());
}

double ns(sim::Duration d) { return d.as_ns(); }

ResultRow summarise(ScenarioKind kind, const RunConfig& cfg, const LinkStats& s, double throughput,
                    sim::Duration period, TraceEnergy& energy, std::uint64_t extra_violations) {
	PowerParams power = cfg.power;
	power.peak_rate_eps = 1.0 / cfg.link.nominal_period().as_seconds();
	energy = energy_of_trace(s, power);

	ResultRow r;
	r.scenario = to_string(kind);
	r.rate_eps = energy.rate_eps;
	r.throughput_eps = throughput;
	r.first_latency_ns = ns(s.first_word_latency);
	r.period_ns = ns(period);
	r.awake_ns_per_event =
	    s.events_launched == 0 ? 0.0 : ns(s.awake_time_total) / static_cast<double>(s.events_launched);
	r.i_tx_a = energy.avg_tx.amps();
	r.i_rx_a = energy.avg_rx.amps();
	r.violations = s.protocol_violations + extra_violations;
	return r;
}

ScenarioResult run_loop_scenario(const ScenarioSpec& spec, std::uint64_t n) {
	const RunConfig& cfg = spec.config;
	sim::Kernel k({.record_traces = spec.record_vcd});
	Loopback loop(k, cfg.link, [](const EventWord& w) { return w; });
	loop.forward().arm_watchdog(spec.watchdog);
	loop.backward().arm_watchdog(spec.watchdog);
	if (n > 0) loop.inject(n, random_words(cfg.link.width, cfg.source.seed));
	k.run();

	const LoopbackResult lr = loop.result();
	ScenarioResult out;
	out.stats = lr.stats;
	out.stats.window = k.last_activity();
	out.events_offered = lr.sent.size();
	out.invariant_failures = lr.invariant_failures;
	out.stall = loop.forward().stall() ? loop.forward().stall() : loop.backward().stall();

	std::uint64_t extra = lr.invariant_failures + (out.stall ? 1 : 0);
	if (lr.received != lr.sent) ++extra;
	out.row = summarise(spec.kind, cfg, out.stats, lr.throughput_eps, lr.sink_period, out.energy, extra);

	if (spec.record_vcd) {
		std::vector<VcdProbe> probes;
		add_link_probes(probes, loop.forward(), "chip1_to_chip2", "chip1_to_chip2.");
		add_link_probes(probes, loop.backward(), "chip2_to_chip1", "chip2_to_chip1.");
		std::ostringstream os;
		write_vcd(os, probes, {.include_date = spec.vcd_date});
		out.vcd = os.str();
	}
	return out;
}

}  // namespace

ScenarioKind scenario_from_string(std::string_view name) {
	for (const auto& nk : kKinds)
		if (name == nk.name) return nk.kind;
	throw ConfigError("scenario", "unknown scenario '" + std::string(name) + "'");
}

std::string to_string(ScenarioKind kind) {
	for (const auto& nk : kKinds)
		if (kind == nk.kind) return nk.name;
	return "unknown";
}

const std::vector<std::string>& scenario_names() {
	static const std::vector<std::string> names = [] {
		std::vector<std::string> v;
		for (const auto& nk : kKinds) v.emplace_back(nk.name);
		return v;
	}();
	return names;
}

std::uint64_t default_events(const ScenarioSpec& spec) {
	if (spec.n_events) return *spec.n_events;
	switch (spec.kind) {
	case ScenarioKind::Single:
		return 1;
	case ScenarioKind::Burst:
		return spec.config.source.burst_size;
	case ScenarioKind::Idle:
		return 0;
	case ScenarioKind::Saturation:
		return 1000;
	default:
		return 100;
	}
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
	const RunConfig& cfg = spec.config;
	cfg.link.validate();
	const std::uint64_t n = default_events(spec);
	if (spec.kind == ScenarioKind::Saturation) return run_loop_scenario(spec, n);

	sim::Kernel k({.record_traces = spec.record_vcd});
	Link link(k, cfg.link);
	link.arm_watchdog(spec.watchdog);

	SourceSpec src;
	src.seed = cfg.source.seed;
	src.n_events = n;
	src.rate_eps = cfg.source.rate_eps;
	switch (spec.kind) {
	case ScenarioKind::Periodic:
		src.kind = SourceSpec::Kind::Periodic;
		if (cfg.source.idle_gap > sim::SimTime::zero()) src.interval = cfg.link.nominal_period() + cfg.source.idle_gap;
		break;
	case ScenarioKind::Poisson:
		src.kind = SourceSpec::Kind::Poisson;
		break;
	case ScenarioKind::Burst:
		src.kind = SourceSpec::Kind::Burst;
		src.burst_size = cfg.source.burst_size;
		src.burst_gap = cfg.source.burst_gap;
		break;
	default:
		src.kind = SourceSpec::Kind::Single;
		break;
	}

	std::unique_ptr<EventSource> source;
	if (n > 0) source = std::make_unique<EventSource>(k, link, src, random_words(cfg.link.width, cfg.source.seed));
	k.run();

	ScenarioResult out;
	out.stats = link.stats();
	// The watchdog may fire after the last signal change; the window ends
	// with the link's own activity or the source's schedule, whichever is later.
	sim::SimTime end = k.last_activity();
	if (spec.kind == ScenarioKind::Idle) end = std::max(end, spec.idle_window);
	if (source) {
		sim::Duration tail{};
		if (spec.kind == ScenarioKind::Periodic)
			tail = cfg.source.idle_gap > sim::SimTime::zero()
			           ? cfg.link.nominal_period() + cfg.source.idle_gap
			           : sim::SimTime{static_cast<sim::SimTime::rep>(std::llround(1e12 / cfg.source.rate_eps))};
		else if (spec.kind == ScenarioKind::Poisson)
			tail = sim::SimTime{static_cast<sim::SimTime::rep>(std::llround(1e12 / cfg.source.rate_eps))};
		else if (spec.kind == ScenarioKind::Burst)
			tail = cfg.source.burst_gap;
		end = std::max(end, source->last_offer() + tail);
		out.events_offered = source->offered().size();
	}
	out.stats.window = end;
	out.invariant_failures = k.invariant_failures();
	out.stall = link.stall();

	std::uint64_t extra = out.invariant_failures + (out.stall ? 1 : 0);
	if (source) {
		const auto& rx = link.received();
		const auto& tx = source->offered();
		bool match = rx.size() == tx.size();
		for (std::size_t i = 0; match && i < rx.size(); ++i) match = rx[i].word == tx[i];
		if (!match) ++extra;
	}
	out.row = summarise(spec.kind, cfg, out.stats, out.stats.throughput_eps(), out.stats.steady_period, out.energy, extra);

	if (spec.record_vcd) {
		std::vector<VcdProbe> probes;
		add_link_probes(probes, link, "link", "");
		std::ostringstream os;
		write_vcd(os, probes, {.include_date = spec.vcd_date});
		out.vcd = os.str();
	}
	return out;
}

std::vector<ScenarioResult> run_sweep(const ScenarioSpec& base, const std::string& key,
                                      const std::vector<std::string>& values, unsigned jobs) {
	std::vector<ScenarioSpec> specs;
	specs.reserve(values.size());
	for (const auto& v : values) {
		ScenarioSpec s = base;
		apply_override(s.config, key, v);
		s.config.link.validate();
		specs.push_back(std::move(s));
	}

	std::vector<ScenarioResult> results(specs.size());
	const std::size_t width = std::max(1u, jobs);
	for (std::size_t first = 0; first < specs.size(); first += width) {
		const std::size_t last = std::min(specs.size(), first + width);
		std::vector<std::future<ScenarioResult>> batch;
		for (std::size_t i = first; i < last; ++i)
			batch.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
			                           [&s = specs[i]] { return run_scenario(s); }));
		for (std::size_t i = first; i < last; ++i) results[i] = batch[i - first].get();
	}
	for (std::size_t i = 0; i < results.size(); ++i) results[i].row.scenario += "[" + key + "=" + values[i] + "]";
	return results;
}

std::string csv_header() {
	return "scenario,rate_eps,throughput_eps,first_latency_ns,period_ns,awake_ns_per_event,i_tx_a,i_rx_a,violations";
}

std::string csv_row(const ResultRow& r) {
	std::ostringstream os;
	os << std::setprecision(10);
	const bool quote = r.scenario.find_first_of(",\"") != std::string::npos;
	if (quote) {
		os << '"';
		for (char c : r.scenario) os << (c == '"' ? "\"\"" : std::string(1, c));
		os << '"';
	} else {
		os << r.scenario;
	}
	os << ',' << r.rate_eps << ',' << r.throughput_eps << ',' << r.first_latency_ns << ',' << r.period_ns << ','
	   << r.awake_ns_per_event << ',' << r.i_tx_a << ',' << r.i_rx_a << ',' << r.violations;
	return os.str();
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
	os << csv_header() << '\n';
	for (const auto& r : rows) os << csv_row(r) << '\n';
}

}  // namespace aerlink::harness
