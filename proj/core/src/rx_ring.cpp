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

#include "aerlink/rx_ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace aerlink {

RxAcceptDecision rx_cell_accept(RxTokenCellState& cell, RailSymbol symbol) {
	if (!cell.has_token || !cell.en || cell.latched_bit) return {};
	if (relation_of(symbol) != cell.kind) return {};
	cell.latched_bit = symbol.d;
	cell.en = false;
	return {true, symbol.d};
}

RxRing::RxRing(sim::Kernel& k, RxRingConfig cfg, const std::string& prefix)
    : k_(k), cfg_(cfg), pid_(k.add_process(prefix + "rx_ring")), cells_(cfg.width) {
	if (cfg.width == 0 || cfg.width > EventWord::kMaxWidth) throw std::invalid_argument("RX ring width must be in [1, 64]");
	for (unsigned i = 0; i < cfg.width; ++i) cells_[i].kind = (i % 2 == 0) ? Phase::Odd : Phase::Even;
	reset_cells();
}

void RxRing::reset_cells() {
	for (auto& c : cells_) {
		c.has_token = false;
		c.en = false;
		c.latched_bit.reset();
	}
	active_ = 0;
	latched_ = 0;
	busy_ = false;
	cells_[0].has_token = true;
	cells_[0].en = true;
}

void RxRing::reset() {
	reset_cells();
	current_ = RailSymbol{false, false};
	pending_ = false;
}

void RxRing::attach(sim::Signal& data, sim::Signal& parity) {
	auto sample = [this, &data, &parity](const sim::Signal&) {
		if (sample_scheduled_) return;
		sample_scheduled_ = true;
		k_.schedule(k_.now(), pid_, [this, &data, &parity] {
			sample_scheduled_ = false;
			observe(RailSymbol{data.value(), parity.value()});
		});
	};
	data.on_change(sample);
	parity.on_change(sample);
}

void RxRing::observe(DualRailBit data, DualRailBit parity) {
	if (!data.valid() || !parity.valid()) {
		++rail_errors_;
		return;
	}
	observe(RailSymbol{data.value(), parity.value()});
}

void RxRing::observe(RailSymbol s) {
	if (s == current_) return;  // no transition: idle or repeated LSB
	if (relation_of(s) == relation_of(current_)) ++illegal_;
	if (pending_ && mid_word()) ++overruns_;
	current_ = s;
	// Between words the first Odd cell ignores P = D symbols outright.
	pending_ = mid_word() || relation_of(s) == Phase::Odd;
	try_accept();
}

void RxRing::try_accept() {
	if (busy_ || !pending_) return;
	if (!rx_cell_accept(cells_[active_], current_).accepted) return;
	pending_ = false;
	busy_ = true;
	k_.schedule_in(cfg_.cell_delay, pid_, [this] { release(); });
}

void RxRing::release() {
	busy_ = false;
	++latched_;
	if (active_ + 1 == cfg_.width) {
		std::vector<bool> bits(cfg_.width);
		for (unsigned i = 0; i < cfg_.width; ++i) bits[i] = cells_[i].latched_bit.value_or(false);
		ReceivedWord w{EventWord::from_bits(bits), true, k_.now()};
		++words_;
		reset_cells();
		if (sink_) sink_(w);
	} else {
		// Hand-off is atomic: the token never sits in two cells.
		cells_[active_].has_token = false;
		++active_;
		cells_[active_].has_token = true;
		cells_[active_].en = true;
	}
	try_accept();
}

unsigned RxRing::token_holders() const {
	return static_cast<unsigned>(std::count_if(cells_.begin(), cells_.end(), [](const auto& c) { return c.has_token; }));
}

}  // namespace aerlink
