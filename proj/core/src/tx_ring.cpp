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

#include "aerlink/tx_ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace aerlink {

DualRailWord to_dual_rail(const EventWord& w) {
	DualRailWord out(w.width());
	for (unsigned i = 0; i < w.width(); ++i) out[i] = DualRailBit::of(w.bit(i));
	return out;
}

DualRailWord empty_dual_rail(unsigned width) { return DualRailWord(width); }

ValidityResult tx_validity_check(std::span<const DualRailBit> word) {
	ValidityResult r{!word.empty(), false};
	for (const auto& b : word) {
		if (b.illegal()) r.illegal = true;
		if (!b.valid()) r.valid = false;
	}
	return r;
}

TxCellOutputs tx_cell_step(TxTokenCellState& cell, const TxCellInputs& in) {
	TxCellOutputs out;
	if (in.enable && in.disable) {
		out.violation = true;
		return out;
	}
	if (in.disable) {
		if (!cell.has_token) {
			out.violation = true;
			return out;
		}
		cell.has_token = false;
		cell.en = false;
		return out;
	}
	if (in.enable) {
		if (cell.has_token || cell.latched_bit || !in.bit.valid()) {
			out.violation = true;
			return out;
		}
		cell.has_token = true;
		cell.en = true;
		cell.latched_bit = in.bit.value();
		out.drive = encode_bit(in.bit.value(), cell.kind);
		out.enable_successor = true;
		out.disable_predecessor = true;
	}
	return out;
}

TxRing::TxRing(sim::Kernel& k, TxRingConfig cfg, const std::string& prefix)
    : k_(k),
      cfg_(cfg),
      pid_(k.add_process(prefix + "tx_ring")),
      first_push_delay_(cfg.t_wk),
      cells_(cfg.width),
      inputs_(cfg.width),
      data_(k.make_signal(prefix + "Data")),
      parity_(k.make_signal(prefix + "Parity")),
      tx_r_(k.make_signal(prefix + "TX.r")),
      enc_a_(k.make_signal(prefix + "Enc.a")) {
	if (cfg.width == 0 || cfg.width > EventWord::kMaxWidth) throw std::invalid_argument("TX ring width must be in [1, 64]");
	for (unsigned i = 0; i < cfg.width; ++i) cells_[i].kind = (i % 2 == 0) ? Phase::Odd : Phase::Even;
	tx_r_.on_change([this](const sim::Signal& s) {
		if (s.value() && !busy_ && !enc_a_.value()) {
			busy_ = true;
			k_.schedule_in(first_push_delay_, pid_, [this] { push(0); });
		} else if (!s.value() && enc_a_.value()) {
			k_.schedule_in(cfg_.gate_delay, pid_, [this] {
				k_.set(enc_a_, false);
				for (auto& fn : on_idle_) fn();
			});
		}
	});
}

bool TxRing::inputs_empty() const {
	return std::all_of(inputs_.begin(), inputs_.end(), [](const DualRailBit& b) { return b.empty(); });
}

bool TxRing::submit(const DualRailWord& word) {
	if (word.size() != cfg_.width) throw std::invalid_argument("TX word width does not match ring width");
	if (busy() || !inputs_empty()) return false;
	inputs_ = word;
	evaluate_validity();
	return true;
}

void TxRing::release_inputs() {
	if (busy_) ++violations_;  // erasing data mid-word breaks the four-phase cycle
	std::fill(inputs_.begin(), inputs_.end(), DualRailBit{});
	evaluate_validity();
}

void TxRing::evaluate_validity() {
	const auto v = tx_validity_check(inputs_);
	if (v.illegal) ++illegal_inputs_;
	k_.set(tx_r_, v.valid);
}

void TxRing::push(unsigned i) {
	if (i > 0) {
		if (tx_cell_step(cells_[i - 1], TxCellInputs{.disable = true}).violation) ++violations_;
	}
	const auto out = tx_cell_step(cells_[i], TxCellInputs{.enable = true, .bit = inputs_[i]});
	if (out.violation || !out.drive) {
		++violations_;
		return;
	}
	k_.set(data_, out.drive->d);
	k_.set(parity_, out.drive->p);
	if (i + 1 < cfg_.width)
		k_.schedule_in(cfg_.t_d, pid_, [this, i] { push(i + 1); });
	else
		k_.schedule_in(cfg_.t_d, pid_, [this] { acknowledge(); });
}

void TxRing::acknowledge() {
	if (tx_cell_step(cells_.back(), TxCellInputs{.disable = true}).violation) ++violations_;
	for (auto& c : cells_) {
		c.has_token = false;
		c.en = false;
		c.latched_bit.reset();
	}
	busy_ = false;
	++words_sent_;
	k_.set(enc_a_, true);
	for (auto& fn : on_complete_) fn();
	// Inputs may already be empty if the input buffer released early.
	if (!tx_r_.value())
		k_.schedule_in(cfg_.gate_delay, pid_, [this] {
			k_.set(enc_a_, false);
			for (auto& fn : on_idle_) fn();
		});
}

TxPhase TxRing::phase() const {
	if (enc_a_.value()) return TxPhase::Acknowledging;
	if (busy_) return TxPhase::Transmitting;
	if (!inputs_empty() && !tx_r_.value()) return TxPhase::InvalidInput;
	return TxPhase::Idle;
}

unsigned TxRing::token_holders() const {
	return static_cast<unsigned>(std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return c.has_token; }));
}

}  // namespace aerlink
