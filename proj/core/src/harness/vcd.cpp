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

#include "aerlink/harness/vcd.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <ostream>
#include <tuple>

namespace aerlink::harness {

std::string vcd_identifier(std::size_t index) {
	std::string id;
	do {
		id.push_back(static_cast<char>(33 + index % 94));
		index /= 94;
	} while (index > 0);
	return id;
}

void write_vcd(std::ostream& os, const std::vector<VcdProbe>& probes, const VcdOptions& opts) {
	if (opts.include_date) {
		const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
		char buf[64];
		std::strftime(buf, sizeof buf, "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
		os << "$date " << buf << " $end\n";
	}
	os << "$version " << opts.version << " $end\n";
	os << "$timescale 1ps $end\n";

	std::map<std::string, std::vector<std::size_t>> scopes;
	for (std::size_t i = 0; i < probes.size(); ++i) scopes[probes[i].scope].push_back(i);
	for (const auto& [scope, members] : scopes) {
		const bool named = !scope.empty();
		if (named) os << "$scope module " << scope << " $end\n";
		for (auto i : members) os << "$var wire 1 " << vcd_identifier(i) << ' ' << probes[i].name << " $end\n";
		if (named) os << "$upscope $end\n";
	}
	os << "$enddefinitions $end\n";

	os << "#0\n$dumpvars\n";
	for (std::size_t i = 0; i < probes.size(); ++i)
		os << (probes[i].signal->initial_value() ? '1' : '0') << vcd_identifier(i) << '\n';
	os << "$end\n";

	// (time, kernel order, probe) so simultaneous changes keep causal order.
	std::vector<std::tuple<std::uint64_t, std::uint64_t, std::size_t, bool>> changes;
	for (std::size_t i = 0; i < probes.size(); ++i)
		for (const auto& c : probes[i].signal->history()) changes.emplace_back(c.time.ticks(), c.order, i, c.value);
	std::sort(changes.begin(), changes.end());

	std::uint64_t current = 0;
	bool any = false;
	for (const auto& [t, order, i, value] : changes) {
		if (!any || t != current) {
			if (t != 0 || any) os << '#' << t << '\n';
			current = t;
			any = true;
		}
		os << (value ? '1' : '0') << vcd_identifier(i) << '\n';
	}
}

}  // namespace aerlink::harness
