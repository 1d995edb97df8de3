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

#include "aerlink/phy.hpp"

namespace aerlink {

std::vector<RailSymbol> driver_wakeup(bool previous_lsb, unsigned n_lsb_repeat) {
	return std::vector<RailSymbol>(n_lsb_repeat, RailSymbol{previous_lsb, previous_lsb});
}

PhyLink::Pair PhyLink::make_pair(sim::Signal& source, const std::string& prefix, const std::string& tag,
                                 sim::Duration delay, std::uint64_t seed) {
	sim::Signal& tx_cm = k_.make_signal(prefix + "TX." + tag + "_CM", false);
	sim::Signal& tx_diff = k_.make_signal(prefix + "TX." + tag + "_Diff", source.value());
	sim::Signal& rx_cm = sim::delay_line(k_, tx_cm, delay, cfg_.jitter, seed, prefix + tag + "_CM");
	sim::Signal& rx_diff = sim::delay_line(k_, tx_diff, delay, cfg_.jitter, seed + 1, prefix + tag + "_Diff");
	sim::Signal& rx_f = k_.make_signal(prefix + tag + ".f", false);
	sim::Signal& rx_t = k_.make_signal(prefix + tag + ".t", false);
	sim::Signal& rx_out = k_.make_signal(prefix + "RX." + tag, false);
	return Pair{source, tx_cm, tx_diff, rx_cm, rx_diff, rx_f, rx_t, rx_out, std::nullopt};
}

PhyLink::PhyLink(sim::Kernel& k, PhyConfig cfg, sim::Signal& data, sim::Signal& parity, const std::string& prefix)
    : k_(k),
      cfg_(cfg),
      pid_(k.add_process(prefix + "phy")),
      pairs_{make_pair(data, prefix, "D", cfg.wire_delay, cfg.jitter_seed * 4),
             make_pair(parity, prefix, "P", cfg.wire_delay + cfg.wire_skew, cfg.jitter_seed * 4 + 2)} {
	for (auto& p : pairs_) wire_pair(p);
}

void PhyLink::wire_pair(Pair& p) {
	p.source.on_change([this, &p](const sim::Signal& s) {
		if (awake_) k_.set(p.tx_diff, s.value());
	});
	p.rx_cm.on_change([this, &p](const sim::Signal&) { update_receiver(p); });
	p.rx_diff.on_change([this, &p](const sim::Signal&) { update_receiver(p); });
	for (sim::Signal* s : {&p.tx_cm, &p.tx_diff, &p.rx_cm, &p.rx_diff, &p.rx_f, &p.rx_t, &p.rx_out})
		s->on_change([this](const sim::Signal&) { note_change(); });
}

void PhyLink::update_receiver(Pair& p) {
	const bool on = p.rx_cm.value();
	k_.set(p.rx_t, on && p.rx_diff.value());
	k_.set(p.rx_f, on && !p.rx_diff.value());
	// Amp stage off: the latch holds the previous bit.
	if (on) k_.set(p.rx_out, p.rx_diff.value());
}

bool PhyLink::fully_idle() const {
	if (awake_) return false;
	for (const auto& p : pairs_)
		if (p.tx_cm.value() || p.rx_cm.value()) return false;
	return true;
}

void PhyLink::note_change() {
	// Rails released in the same instant the link goes idle are part of the
	// power-down, not idle activity.
	if (!fully_idle()) {
		idle_since_.reset();
		return;
	}
	if (!idle_since_)
		idle_since_ = k_.now();
	else if (*idle_since_ < k_.now())
		++idle_transitions_;
}

void PhyLink::wakeup() {
	if (awake_) return;
	awake_ = true;
	idle_since_.reset();
	wake_time_ = k_.now();
	++wakes_;
	if (pairs_[0].source.value() != pairs_[1].source.value()) ++preamble_violations_;
	for (auto& p : pairs_) {
		k_.set(p.tx_diff, p.source.value());
		if (p.ramp && k_.cancel(*p.ramp)) {
			// Still at Vref: the pending fall is simply dropped.
			p.ramp.reset();
			continue;
		}
		p.ramp = k_.drive(p.tx_cm, true, cfg_.wake_on, pid_);
	}
}

void PhyLink::sleep() {
	if (!awake_) return;
	awake_ = false;
	awake_total_ += k_.now() - wake_time_;
	for (auto& p : pairs_) {
		if (p.ramp && k_.cancel(*p.ramp)) {
			p.ramp.reset();
			continue;
		}
		p.ramp = k_.drive(p.tx_cm, false, cfg_.wake_off, pid_);
	}
}

void PhyLink::reset() {
	for (auto& p : pairs_) k_.set(p.rx_out, false);
}

sim::Duration PhyLink::awake_total() const {
	return awake_ ? awake_total_ + (k_.now() - wake_time_) : awake_total_;
}

LvdsPairState PhyLink::state_of(const Pair& p) const {
	return LvdsPairState{p.rx_cm.value() ? CommonMode::Vref : CommonMode::Gnd, p.rx_diff.value(), p.rx_out.value()};
}

}  // namespace aerlink
