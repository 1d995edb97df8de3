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

// Oracles and generators shared by the tests. Everything here is written
// independently of the library code it checks.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aerlink/ledr.hpp"
#include "aerlink/link.hpp"

namespace aerlink::testing {

/// Seeded value source for hand-rolled property tests.
class Gen {
public:
	explicit Gen(std::uint64_t seed) : rng_(seed) {}

	std::uint64_t word(unsigned width) {
		const std::uint64_t v = rng_();
		return width >= 64 ? v : v & ((std::uint64_t{1} << width) - 1);
	}
	std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
		return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
	}
	bool coin() { return rng_() & 1U; }
	std::vector<bool> bits(unsigned n) {
		std::vector<bool> b(n);
		for (unsigned i = 0; i < n; ++i) b[i] = coin();
		return b;
	}

private:
	std::mt19937_64 rng_;
};

/// Reference LEDR encoder from the parity definition: the parity rail equals
/// data XOR (phase is odd), and phase alternates starting at `start_odd`.
inline std::vector<RailSymbol> reference_encode(std::uint64_t value, unsigned width, bool start_odd = true) {
	std::vector<RailSymbol> out;
	bool odd = start_odd;
	for (int i = static_cast<int>(width) - 1; i >= 0; --i) {
		const bool d = (value >> i) & 1U;
		out.push_back(RailSymbol{d, static_cast<bool>(d ^ odd)});
		odd = !odd;
	}
	return out;
}

/// Number of rails that differ between two symbols.
inline int rail_distance(RailSymbol a, RailSymbol b) { return (a.d != b.d) + (a.p != b.p); }

/// Analytic timeline of one word on an otherwise idle link, in ps from TX.r.
struct Timeline {
	std::uint64_t first_push;
	std::uint64_t last_push;
	std::uint64_t enc_a;
	std::uint64_t rx_complete;
	std::uint64_t ack_at_tx;
	std::uint64_t period;
};

inline Timeline timeline(std::uint64_t width, std::uint64_t t_d, std::uint64_t t_wk, std::uint64_t wake_on,
                         std::uint64_t n_lsb, std::uint64_t wire, std::uint64_t rx_cell, std::uint64_t ack_wire,
                         std::uint64_t gap) {
	Timeline t{};
	t.first_push = (t_wk > wake_on ? t_wk : wake_on) + n_lsb * t_d;
	t.last_push = t.first_push + (width - 1) * t_d;
	t.enc_a = t.last_push + t_d;
	t.rx_complete = t.last_push + wire + rx_cell;
	t.ack_at_tx = t.rx_complete + ack_wire;
	t.period = t.enc_a + gap;
	return t;
}

inline Timeline timeline(const LinkConfig& c) {
	return timeline(c.width, c.t_d.ticks(), c.t_wk.ticks(), c.phy.wake_on.ticks(), c.phy.n_lsb_repeat,
	                c.phy.wire_delay.ticks(), c.rx_cell_delay.ticks(), c.ack_wire_delay.ticks(),
	                c.inter_event_gap.ticks());
}

inline std::string describe(const std::vector<RailSymbol>& s) {
	std::ostringstream os;
	for (const auto& x : s) os << '(' << x.d << ',' << x.p << ')';
	return os.str();
}

}  // namespace aerlink::testing
