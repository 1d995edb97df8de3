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
#include <string>

#include "aerlink/sim/kernel.hpp"

namespace aerlink::sim {

enum class JitterKind { None, Uniform, Normal };

/// Per-transition delay perturbation. Uniform draws from [-amplitude,
/// +amplitude]; Normal uses amplitude as sigma, truncated at 3 sigma.
struct Jitter {
	JitterKind kind = JitterKind::None;
	Duration amplitude{};

	static Jitter none() { return {}; }
	static Jitter uniform(Duration a) { return {JitterKind::Uniform, a}; }
	static Jitter normal(Duration sigma) { return {JitterKind::Normal, sigma}; }
};

/// Returns a new signal that replays every transition of `input` after
/// `delay` plus a jitter sample drawn from a generator seeded with `seed`.
///
/// Emission times are clamped to stay at least 1 ps after the input edge and
/// never earlier than the previously emitted edge, so transitions cannot
/// overtake each other. Throws SimulationError if `delay` is zero.
Signal& delay_line(Kernel& k, Signal& input, Duration delay, Jitter jitter, std::uint64_t seed,
                   std::string output_name = {});

}  // namespace aerlink::sim
