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
#include <span>
#include <string>
#include <vector>

#include "aerlink/ledr.hpp"
#include "aerlink/sim/kernel.hpp"

namespace aerlink {

/// Dual-rail input bit (TX.f<i>, TX.t<i>): (0,0) empty, (1,0) zero,
/// (0,1) one, (1,1) illegal.
struct DualRailBit {
	bool f = false;
	bool t = false;

	static constexpr DualRailBit of(bool b) { return b ? DualRailBit{false, true} : DualRailBit{true, false}; }
	constexpr bool empty() const { return !f && !t; }
	constexpr bool illegal() const { return f && t; }
	constexpr bool valid() const { return f != t; }
	constexpr bool value() const { return t; }
	constexpr bool operator==(const DualRailBit&) const = default;
};

/// Parallel dual-rail bus in serialisation order: index 0 carries the MSB.
using DualRailWord = std::vector<DualRailBit>;

DualRailWord to_dual_rail(const EventWord& w);
DualRailWord empty_dual_rail(unsigned width);

struct ValidityResult {
	bool valid = false;    ///< TX.r
	bool illegal = false;  ///< at least one (1,1) position
};

/// TX.r is high iff every position carries exactly one high rail.
ValidityResult tx_validity_check(std::span<const DualRailBit> word);

struct TxTokenCellState {
	Phase kind = Phase::Odd;
	bool has_token = false;
	std::optional<bool> latched_bit;
	bool en = false;
};

struct TxCellInputs {
	bool enable = false;   ///< from predecessor (or TX.r for the first cell)
	bool disable = false;  ///< from successor
	DualRailBit bit{};
};

struct TxCellOutputs {
	std::optional<RailSymbol> drive;
	bool enable_successor = false;
	bool disable_predecessor = false;
	bool violation = false;
};

/// One handshake step of a TX token-cell.
///
/// An enable takes the token, buffers the bit and drives the LEDR symbol for
/// the cell's phase. A disable releases the token and latches. A disable that
/// reaches a cell which never took the token, or an enable for a cell that
/// already served this word, is reported as a violation and leaves the cell
/// unchanged.
TxCellOutputs tx_cell_step(TxTokenCellState& cell, const TxCellInputs& in);

struct TxRingConfig {
	unsigned width = 32;
	sim::Duration t_wk{450};
	sim::Duration t_d{670};
	/// Return-to-zero step between TX.r falling and Enc.a falling.
	sim::Duration gate_delay{100};
};

enum class TxPhase { Idle, InvalidInput, Transmitting, Acknowledging };

/// Transmitter token-ring: `width` cells alternating Odd/Even, sharing the
/// Data and Parity wires.
///
/// submit() presents a word on TX.in. If the validity check passes TX.r rises
/// and the first cell pushes the MSB after the first-push delay (t_wk unless
/// overridden); each successor pushes one t_d later and disables its
/// predecessor. Enc.a rises t_d after the last push and falls once the
/// inputs return to empty via release_inputs().
class TxRing {
public:
	TxRing(sim::Kernel& k, TxRingConfig cfg, const std::string& prefix = {});

	TxRing(const TxRing&) = delete;
	TxRing& operator=(const TxRing&) = delete;

	/// False (back-pressure) while a previous word is still presented.
	bool submit(const DualRailWord& word);
	bool submit(const EventWord& word) { return submit(to_dual_rail(word)); }
	/// Input buffer returns TX.in to empty, completing the four-phase cycle.
	void release_inputs();

	void set_first_push_delay(sim::Duration d) { first_push_delay_ = d; }
	sim::Duration first_push_delay() const { return first_push_delay_; }

	void on_complete(std::function<void()> fn) { on_complete_.push_back(std::move(fn)); }
	void on_idle(std::function<void()> fn) { on_idle_.push_back(std::move(fn)); }

	bool busy() const { return busy_ || enc_a_.value(); }
	bool inputs_empty() const;
	TxPhase phase() const;
	const TxRingConfig& config() const { return cfg_; }
	const std::vector<TxTokenCellState>& cells() const { return cells_; }
	unsigned token_holders() const;
	std::uint64_t violations() const { return violations_; }
	std::uint64_t illegal_inputs() const { return illegal_inputs_; }
	std::uint64_t words_sent() const { return words_sent_; }

	sim::Signal& data() { return data_; }
	sim::Signal& parity() { return parity_; }
	sim::Signal& tx_r() { return tx_r_; }
	sim::Signal& enc_a() { return enc_a_; }

private:
	void evaluate_validity();
	void push(unsigned i);
	void acknowledge();

	sim::Kernel& k_;
	TxRingConfig cfg_;
	sim::ProcessId pid_;
	sim::Duration first_push_delay_;
	std::vector<TxTokenCellState> cells_;
	DualRailWord inputs_;
	sim::Signal& data_;
	sim::Signal& parity_;
	sim::Signal& tx_r_;
	sim::Signal& enc_a_;
	bool busy_ = false;
	std::uint64_t violations_ = 0;
	std::uint64_t illegal_inputs_ = 0;
	std::uint64_t words_sent_ = 0;
	std::vector<std::function<void()>> on_complete_;
	std::vector<std::function<void()>> on_idle_;
};

}  // namespace aerlink
