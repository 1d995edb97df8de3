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

#include "aerlink/sim/delay_line.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace aerlink::sim {

namespace {

struct DelayLineState {
	Duration delay;
	Jitter jitter;
	std::mt19937_64 rng;
	SimTime last_emit{};
	ProcessId pid;

	std::int64_t sample() {
		const auto a = static_cast<double>(jitter.amplitude.ticks());
		switch (jitter.kind) {
		case JitterKind::None:
			return 0;
		case JitterKind::Uniform: {
			std::uniform_real_distribution<double> u(-a, a);
			return std::llround(u(rng));
		}
		case JitterKind::Normal: {
			std::normal_distribution<double> n(0.0, a);
			double x;
			do {
				x = n(rng);
			} while (std::abs(x) > 3.0 * a);
			return std::llround(x);
		}
		}
		return 0;
	}
};

}  // namespace

Signal& delay_line(Kernel& k, Signal& input, Duration delay, Jitter jitter, std::uint64_t seed,
                   std::string output_name) {
	if (delay == SimTime::zero()) throw SimulationError("delay_line requires a positive delay");
	if (output_name.empty()) output_name = input.name() + "_dly";
	Signal& out = k.make_signal(output_name, input.value());
	auto st = std::make_shared<DelayLineState>(DelayLineState{delay, jitter, std::mt19937_64{seed}, SimTime{}, {}});
	st->pid = k.add_process("delay:" + output_name);
	input.on_change([&k, &out, st](const Signal& in) {
		const auto base = static_cast<std::int64_t>((k.now() + st->delay).ticks());
		const std::int64_t floor_ps = static_cast<std::int64_t>(k.now().ticks()) + 1;
		std::int64_t t = std::max(base + st->sample(), floor_ps);
		t = std::max<std::int64_t>(t, static_cast<std::int64_t>(st->last_emit.ticks()));
		st->last_emit = SimTime{static_cast<SimTime::rep>(t)};
		const bool v = in.value();
		k.schedule(st->last_emit, st->pid, [&k, &out, v] { k.set(out, v); });
	});
	return out;
}

}  // namespace aerlink::sim
