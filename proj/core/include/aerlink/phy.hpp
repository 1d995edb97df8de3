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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aerlink/ledr.hpp"
#include "aerlink/sim/delay_line.hpp"
#include "aerlink/sim/kernel.hpp"

namespace aerlink {

enum class CommonMode : std::uint8_t { Gnd, Vref };

struct LvdsPairState {
	CommonMode cm = CommonMode::Gnd;
	bool diff = false;  ///< meaningful only while cm == Vref
	bool last_latched = false;
};

struct PhyConfig {
	sim::Duration wake_on{450};
	sim::Duration wake_off{500};
	/// Bit cycles of repeated P = D LSB sent before the MSB of each word.
	unsigned n_lsb_repeat = 6;
	sim::Duration wire_delay{2700};
	/// Extra delay on the parity pair relative to the data pair.
	sim::Duration wire_skew{0};
	sim::Jitter jitter{};
	std::uint64_t jitter_seed = 1;
	// Bookkeeping only; no behavioural effect.
	double vref_volts = 1.0;
	double termination_ohms = 50.0;

	sim::Duration preamble(sim::Duration t_d) const { return t_d * n_lsb_repeat; }
};

/// Symbols the driver presents while the common mode recovers: the previous
/// word's LSB on both rails, `n_lsb_repeat` times.
std::vector<RailSymbol> driver_wakeup(bool previous_lsb, unsigned n_lsb_repeat);

/// Digital output of an LVDS receiver: tracks the differential value while the
/// common mode is at Vref and holds the latched bit otherwise.
constexpr bool receiver_behavior(const LvdsPairState& pair) {
	return pair.cm == CommonMode::Vref ? pair.diff : pair.last_latched;
}

/// Behavioural model of the two LVDS pairs (data, parity) between one
/// transmitter and one receiver.
///
/// The driver follows the shared Data/Parity wires while awake. Common mode is
/// a two-level signal that reaches Vref wake_on after wakeup() and Gnd
/// wake_off after sleep(); a command issued before the previous ramp
/// completes cancels it. Both pairs reach the receiver through delay lines
/// (wire_delay, plus wire_skew on parity, plus optional jitter). Receiver
/// outputs start in the P = D = 0 reset state.
class PhyLink {
public:
	PhyLink(sim::Kernel& k, PhyConfig cfg, sim::Signal& data, sim::Signal& parity, const std::string& prefix = {});

	PhyLink(const PhyLink&) = delete;
	PhyLink& operator=(const PhyLink&) = delete;

	/// Idempotent. Restores the differential values from the shared wires.
	void wakeup();
	/// Idempotent. The receiver keeps its last bit through the idle period.
	void sleep();
	/// RstB: receiver outputs forced to P = D = 0.
	void reset();

	bool awake() const { return awake_; }
	/// Accumulated driver on-time (wake command to sleep command).
	sim::Duration awake_total() const;
	std::uint64_t wake_count() const { return wakes_; }
	/// Changes on any pair or receiver signal while the link was fully idle.
	std::uint64_t idle_transitions() const { return idle_transitions_; }
	/// Wake-ups that found the shared wires outside the P = D state.
	std::uint64_t preamble_violations() const { return preamble_violations_; }

	LvdsPairState data_pair_state() const { return state_of(pairs_[0]); }
	LvdsPairState parity_pair_state() const { return state_of(pairs_[1]); }

	sim::Signal& rx_data() { return pairs_[0].rx_out; }
	sim::Signal& rx_parity() { return pairs_[1].rx_out; }

	struct Pair {
		sim::Signal& source;   ///< shared Data or Parity wire
		sim::Signal& tx_cm;    ///< driver-side common mode (1 = Vref)
		sim::Signal& tx_diff;  ///< driver-side differential value
		sim::Signal& rx_cm;    ///< D_CM / P_CM at the receiver inputs
		sim::Signal& rx_diff;
		sim::Signal& rx_f;     ///< D.f / P.f wire level at the receiver
		sim::Signal& rx_t;     ///< D.t / P.t
		sim::Signal& rx_out;   ///< digitised output
		std::optional<sim::EventHandle> ramp;
	};
	const Pair& data_pair() const { return pairs_[0]; }
	const Pair& parity_pair() const { return pairs_[1]; }
	const PhyConfig& config() const { return cfg_; }

private:
	Pair make_pair(sim::Signal& source, const std::string& prefix, const std::string& tag, sim::Duration delay,
	               std::uint64_t seed);
	void wire_pair(Pair& p);
	void update_receiver(Pair& p);
	bool fully_idle() const;
	void note_change();
	LvdsPairState state_of(const Pair& p) const;

	sim::Kernel& k_;
	PhyConfig cfg_;
	sim::ProcessId pid_;
	std::array<Pair, 2> pairs_;
	bool awake_ = false;
	sim::SimTime wake_time_{};
	sim::Duration awake_total_{};
	std::uint64_t wakes_ = 0;
	/// Start of the current fully idle stretch; changes inside it are counted.
	std::optional<sim::SimTime> idle_since_{sim::SimTime::zero()};
	std::uint64_t idle_transitions_ = 0;
	std::uint64_t preamble_violations_ = 0;
};

}  // namespace aerlink
