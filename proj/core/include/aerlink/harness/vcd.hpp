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

#include <iosfwd>
#include <string>
#include <vector>

#include "aerlink/sim/signal.hpp"

namespace aerlink::harness {

struct VcdProbe {
	std::string scope;
	std::string name;
	const sim::Signal* signal = nullptr;
};

struct VcdOptions {
	/// A $date section makes otherwise identical dumps differ; off by default.
	bool include_date = false;
	std::string version = "aerlink lvdsim";
};

/// Writes the recorded histories of `probes` as a 1 ps timescale VCD. Each
/// scope becomes a $scope module; timestamps are strictly increasing.
void write_vcd(std::ostream& os, const std::vector<VcdProbe>& probes, const VcdOptions& opts = {});

/// VCD identifier for the i-th variable (printable ASCII 33..126, base 94).
std::string vcd_identifier(std::size_t index);

}  // namespace aerlink::harness
