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

#include <gtest/gtest.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aerlink/harness/scenario.hpp"
#include "aerlink/harness/vcd.hpp"
#include "aerlink/sim/kernel.hpp"

namespace aerlink::harness {
namespace {

using namespace sim::literals;

/// Minimal VCD reader: variable names per id and (time, id, value) changes.
struct Parsed {
	std::string timescale;
	bool has_date = false;
	std::map<std::string, std::string> names;  // id -> scope.name
	std::vector<std::tuple<std::uint64_t, std::string, char>> changes;
	std::vector<std::uint64_t> stamps;
};

Parsed parse(const std::string& text) {
	Parsed p;
	std::istringstream in(text);
	std::string tok, scope;
	std::uint64_t now = 0;
	bool in_defs = true, in_dump = false;
	while (in >> tok) {
		if (in_defs) {
			if (tok == "$date") p.has_date = true;
			if (tok == "$timescale") in >> p.timescale;
			if (tok == "$scope") {
				in >> tok >> scope;
			} else if (tok == "$upscope") {
				scope.clear();
			} else if (tok == "$var") {
				std::string type, width, id, name;
				in >> type >> width >> id >> name;
				p.names[id] = scope.empty() ? name : scope + "." + name;
			} else if (tok == "$enddefinitions") {
				in_defs = false;
			}
			continue;
		}
		if (tok == "$dumpvars") in_dump = true;
		else if (tok == "$end") in_dump = false;
		else if (tok[0] == '#') {
			now = std::stoull(tok.substr(1));
			p.stamps.push_back(now);
		} else if (!in_dump && (tok[0] == '0' || tok[0] == '1')) {
			p.changes.emplace_back(now, tok.substr(1), tok[0]);
		}
	}
	return p;
}

std::vector<std::pair<std::uint64_t, char>> changes_of(const Parsed& p, const std::string& name) {
	std::string id;
	for (const auto& [i, n] : p.names)
		if (n == name) id = i;
	std::vector<std::pair<std::uint64_t, char>> out;
	for (const auto& [t, i, v] : p.changes)
		if (i == id) out.emplace_back(t, v);
	return out;
}

ScenarioResult traced(const std::string& name, std::uint64_t n = 0) {
	ScenarioSpec s;
	s.kind = scenario_from_string(name);
	s.record_vcd = true;
	if (n) s.n_events = n;
	return run_scenario(s);
}

TEST(Vcd, Identifiers) {
	EXPECT_EQ(vcd_identifier(0), "!");
	EXPECT_EQ(vcd_identifier(93), "~");
	EXPECT_EQ(vcd_identifier(94), "!\"");
}

TEST(Vcd, HeaderAndMonotoneTime) {
	sim::Kernel k({.record_traces = true});
	auto& a = k.make_signal("a");
	const auto p = k.add_process("p");
	k.drive(a, true, 5_ps, p);
	k.drive(a, false, 9_ps, p);
	k.run();
	std::ostringstream os;
	write_vcd(os, {{"top", "a", &a}});
	const auto parsed = parse(os.str());
	EXPECT_EQ(parsed.timescale, "1ps");
	EXPECT_FALSE(parsed.has_date);
	EXPECT_EQ(parsed.names.at("!"), "top.a");
	EXPECT_EQ(parsed.stamps, (std::vector<std::uint64_t>{0, 5, 9}));
	std::ostringstream dated;
	write_vcd(dated, {{"top", "a", &a}}, {.include_date = true});
	EXPECT_TRUE(parse(dated.str()).has_date);
}

TEST(Vcd, SingleEventCommonModeEnvelope) {
	const auto p = parse(traced("single").vcd);
	for (std::size_t i = 1; i < p.stamps.size(); ++i) ASSERT_GT(p.stamps[i], p.stamps[i - 1]);
	const auto cm = changes_of(p, "link.D_CM");
	ASSERT_EQ(cm.size(), 2U);
	EXPECT_EQ(cm[0].second, '1');
	EXPECT_EQ(cm[1].second, '0');
	std::vector<std::uint64_t> rails;
	for (const char* n : {"link.D.f", "link.D.t", "link.P.f", "link.P.t"})
		for (const auto& [t, v] : changes_of(p, n)) rails.push_back(t);
	ASSERT_FALSE(rails.empty());
	for (auto t : rails) {
		EXPECT_GE(t, cm[0].first);
		EXPECT_LE(t, cm[1].first);
	}
}

TEST(Vcd, IdleScenarioHasNoChanges) {
	const auto p = parse(traced("idle").vcd);
	EXPECT_TRUE(p.changes.empty());
}

TEST(Vcd, TwoEventBurst) {
	const auto p = parse(traced("burst", 2).vcd);
	const auto ack = changes_of(p, "link.out.a");
	ASSERT_EQ(ack.size(), 4U);  // two pulses
	const auto txr = changes_of(p, "link.TX.r");
	std::vector<std::uint64_t> rises;
	for (const auto& [t, v] : txr)
		if (v == '1') rises.push_back(t);
	ASSERT_EQ(rises.size(), 2U);
	EXPECT_LT(rises[1], ack[0].first);
}

TEST(Vcd, Deterministic) { EXPECT_EQ(traced("stream", 5).vcd, traced("stream", 5).vcd); }

TEST(Vcd, SaturationHasBothDirections) {
	const auto p = parse(traced("saturation", 3).vcd);
	EXPECT_FALSE(changes_of(p, "chip1_to_chip2.D_CM").empty());
	EXPECT_FALSE(changes_of(p, "chip2_to_chip1.D_CM").empty());
}

}  // namespace
}  // namespace aerlink::harness
