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

#include "aerlink/sim/time.hpp"

namespace aerlink {

struct LinkStats {
	std::uint64_t events_sent = 0;      ///< accepted by the input buffer
	std::uint64_t events_launched = 0;  ///< TX.r raised
	std::uint64_t events_received = 0;  ///< delivered from the output buffer
	sim::SimTime first_word_latency{};  ///< TX.r to out.a of the first word
	sim::SimTime steady_period{};       ///< mean launch-to-launch interval
	sim::Duration awake_time_total{};
	/// Simulated time the run covers; the denominator for event rates.
	sim::Duration window{};
	std::uint64_t protocol_violations = 0;
	std::uint64_t corrupted_words = 0;

	double observed_rate_eps() const {
		return window.ticks() == 0 ? 0.0 : static_cast<double>(events_received) / window.as_seconds();
	}
	double throughput_eps() const {
		return steady_period.ticks() == 0 ? 0.0 : 1.0 / steady_period.as_seconds();
	}
};

}  // namespace aerlink
