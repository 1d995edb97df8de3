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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aerlink/ledr.hpp"
#include "aerlink/sim/kernel.hpp"
#include "aerlink/tx_ring.hpp"

namespace aerlink {

struct RxTokenCellState {
	Phase kind = Phase::Odd;
	bool has_token = false;
	std::optional<bool> latched_bit;  ///< set once out.v = 1
	bool en = false;
};

struct RxAcceptDecision {
	bool accepted = false;
	bool bit = false;
};

/// A token-holding cell takes a symbol only when its parity relation matches
/// the cell's phase. On acceptance the data rail is latched and en drops, so
/// the cell ignores further symbols until the ring resets.
RxAcceptDecision rx_cell_accept(RxTokenCellState& cell, RailSymbol symbol);

struct ReceivedWord {
	EventWord word;
	bool complete = false;
	sim::SimTime arrival_time{};
};

struct RxRingConfig {
	unsigned width = 32;
	/// Time from accepting a symbol to enabling the successor cell.
	sim::Duration cell_delay{300};
};

/// Receiver token-ring.
///
/// After reset the first (Odd) cell holds the token and the last observed
/// symbol is the P = D idle state, so repeated LSB symbols are ignored until
/// an Odd MSB arrives. The ring keeps diagnostic counters the hardware does
/// not have: a symbol that is replaced before any cell consumed it is an
/// overrun, and a transition that keeps the parity relation (both rails
/// moved) is an illegal transition.
class RxRing {
public:
	using Sink = std::function<void(const ReceivedWord&)>;

	RxRing(sim::Kernel& k, RxRingConfig cfg, const std::string& prefix = {});

	RxRing(const RxRing&) = delete;
	RxRing& operator=(const RxRing&) = delete;

	/// Samples the receiver outputs. Changes landing on both rails at the same
	/// instant are coalesced into one observation.
	void attach(sim::Signal& data, sim::Signal& parity);

	/// Feeds one sampled symbol at the kernel's current time.
	void observe(RailSymbol s);
	/// Dual-rail form (D.f/D.t, P.f/P.t). A non-complementary pair is counted
	/// as a rail error and dropped.
	void observe(DualRailBit data, DualRailBit parity);

	void set_sink(Sink sink) { sink_ = std::move(sink); }
	/// RstB: ring and last observed symbol return to the P = D = 0 state.
	void reset();

	bool mid_word() const { return active_ > 0 || busy_; }
	unsigned bits_latched() const { return latched_; }
	unsigned token_holders() const;
	const std::vector<RxTokenCellState>& cells() const { return cells_; }
	const RxRingConfig& config() const { return cfg_; }

	std::uint64_t words_completed() const { return words_; }
	std::uint64_t overruns() const { return overruns_; }
	std::uint64_t illegal_transitions() const { return illegal_; }
	std::uint64_t rail_errors() const { return rail_errors_; }
	std::uint64_t violations() const { return overruns_ + illegal_ + rail_errors_; }

private:
	void reset_cells();
	void try_accept();
	void release();

	sim::Kernel& k_;
	RxRingConfig cfg_;
	sim::ProcessId pid_;
	std::vector<RxTokenCellState> cells_;
	unsigned active_ = 0;
	bool busy_ = false;
	unsigned latched_ = 0;
	RailSymbol current_{};
	bool pending_ = false;
	bool sample_scheduled_ = false;
	Sink sink_;
	std::uint64_t words_ = 0;
	std::uint64_t overruns_ = 0;
	std::uint64_t illegal_ = 0;
	std::uint64_t rail_errors_ = 0;
};

}  // namespace aerlink
