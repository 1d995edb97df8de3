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

#include "aerlink/link.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aerlink/errors.hpp"
#include "aerlink/sim/delay_line.hpp"

namespace aerlink {

void LinkConfig::validate() const {
	if (width < 2 || width > EventWord::kMaxWidth || width % 2 != 0)
		throw ConfigError("W", "word width must be even and in [2, 64]");
	auto positive = [](sim::Duration d, const char* key) {
		if (d == sim::SimTime::zero()) throw ConfigError(key, "must be positive");
	};
	positive(t_d, "t_d");
	positive(t_wk, "t_wk");
	positive(rx_cell_delay, "rx_cell_delay");
	positive(ack_wire_delay, "ack_wire_delay");
	positive(gate_delay, "gate_delay");
	positive(ack_pulse, "ack_pulse");
	positive(phy.wake_on, "wake_on");
	positive(phy.wake_off, "wake_off");
	positive(phy.wire_delay, "wire_delay");
	if (queue_depth == 0) throw ConfigError("queue_depth", "must be at least 1");
	if (input_depth == 0) throw ConfigError("input_depth", "must be at least 1");
	if (phy.n_lsb_repeat == 0) throw ConfigError("n_lsb_repeat", "must be at least 1");
	if (inter_event_gap < gate_delay * 2) throw ConfigError("inter_event_gap", "must cover two gate delays");
}

sim::Duration LinkConfig::first_push_delay() const {
	return std::max(t_wk, phy.wake_on) + phy.preamble(t_d);
}

std::string to_string(StallPhase p) {
	switch (p) {
	case StallPhase::TxValidity:
		return "TX validity stall";
	case StallPhase::TxAwaitingEncAck:
		return "TX waiting on Enc.a";
	case StallPhase::TxAwaitingCredit:
		return "TX waiting on out.a credit";
	case StallPhase::RxPartialWord:
		return "RX partial word";
	case StallPhase::OutputBlocked:
		return "output buffer blocked";
	case StallPhase::LostInFlight:
		return "launched words lost in flight";
	}
	return "unknown";
}

Link::Link(sim::Kernel& k, LinkConfig cfg, const std::string& prefix)
    : k_(k),
      cfg_((cfg.validate(), cfg)),
      prefix_(prefix),
      pid_(k.add_process(prefix + "link")),
      tx_(k, TxRingConfig{cfg.width, cfg.t_wk, cfg.t_d, cfg.gate_delay}, prefix),
      phy_(k, cfg.phy, tx_.data(), tx_.parity(), prefix),
      rx_(k, RxRingConfig{cfg.width, cfg.rx_cell_delay}, prefix),
      ack_rx_(k.make_signal(prefix + "RX.out.a")),
      out_a_(sim::delay_line(k, ack_rx_, cfg.ack_wire_delay, sim::Jitter::none(), 0, prefix + "out.a")),
      credits_(cfg.queue_depth) {
	tx_.set_first_push_delay(cfg_.first_push_delay());
	rx_.attach(phy_.rx_data(), phy_.rx_parity());
	rx_.set_sink([this](const ReceivedWord& w) { on_rx_word(w); });
	tx_.tx_r().on_change([this](const sim::Signal& s) { on_tx_r(s.value()); });
	tx_.on_complete([this] { on_enc_a(); });
	tx_.on_idle([this] { try_launch(); });
	out_a_.on_change([this](const sim::Signal& s) {
		if (s.value()) on_ack_arrival();
	});

	k_.add_invariant(prefix + "tx mutual exclusion", [this] {
		const bool ok = tx_.token_holders() <= 1;
		if (!ok) ++mutex_failures_;
		return ok;
	});
	k_.add_invariant(prefix + "rx mutual exclusion", [this] {
		const bool ok = rx_.token_holders() <= 1;
		if (!ok) ++mutex_failures_;
		return ok;
	});
}

SendResult Link::send_event(const EventWord& word) {
	if (word.width() != cfg_.width) throw std::invalid_argument("event width does not match link width");
	return enqueue(Pending{to_dual_rail(word), word});
}

SendResult Link::send_raw(const DualRailWord& word) {
	if (word.size() != cfg_.width) throw std::invalid_argument("dual-rail word width does not match link width");
	return enqueue(Pending{word, std::nullopt});
}

SendResult Link::enqueue(Pending p) {
	if (input_.size() >= cfg_.input_depth) return SendResult::BackPressured;
	input_.push_back(std::move(p));
	++sent_;
	if (watchdog_timeout_ && !watchdog_armed_) arm_watchdog(*watchdog_timeout_);
	try_launch();
	return SendResult::Accepted;
}

void Link::try_launch() {
	if (presented_ || input_.empty() || tx_.busy() || credits_ == 0) return;
	if (k_.now() < next_launch_) {
		if (!launch_timer_) {
			launch_timer_ = true;
			k_.schedule(next_launch_, pid_, [this] {
				launch_timer_ = false;
				try_launch();
			});
		}
		return;
	}
	presented_ = true;
	// TX.r rises synchronously inside submit() when the word is valid.
	tx_.submit(input_.front().rails);
}

void Link::on_tx_r(bool high) {
	if (!high) return;
	--credits_;
	launch_times_.push_back(k_.now());
	const auto& w = input_.front().word;
	in_flight_.push_back(w ? *w : EventWord(0, cfg_.width));
	phy_.wakeup();
}

void Link::on_enc_a() {
	phy_.sleep();
	next_launch_ = k_.now() + cfg_.inter_event_gap;
	k_.schedule_in(cfg_.gate_delay, pid_, [this] {
		input_.pop_front();
		presented_ = false;
		tx_.release_inputs();
		for (auto& fn : space_listeners_) fn();
	});
}

void Link::on_rx_word(const ReceivedWord& w) {
	if (in_flight_.empty()) {
		++spurious_;
	} else {
		if (w.word != in_flight_.front()) ++corrupted_;
		in_flight_.pop_front();
	}
	output_.push_back(w);
	if (output_.size() > cfg_.queue_depth) ++output_overflows_;
	drain_output();
}

void Link::drain_output() {
	while (!output_.empty()) {
		if (consumer_ && !consumer_(output_.front())) break;
		received_.push_back(output_.front());
		output_.pop_front();
		++delivered_;
		emit_ack();
	}
}

void Link::emit_ack() {
	if (ack_busy_) {
		++acks_queued_;
		return;
	}
	ack_busy_ = true;
	k_.set(ack_rx_, true);
	k_.schedule_in(cfg_.ack_pulse, pid_, [this] {
		k_.set(ack_rx_, false);
		k_.schedule_in(cfg_.ack_pulse, pid_, [this] {
			ack_busy_ = false;
			if (acks_queued_ > 0) {
				--acks_queued_;
				emit_ack();
			}
		});
	});
}

void Link::on_ack_arrival() {
	ack_times_.push_back(k_.now());
	if (++credits_ > cfg_.queue_depth) ++credit_overflows_;
	try_launch();
}

bool Link::work_pending() const {
	return !input_.empty() || !in_flight_.empty() || rx_.mid_word() || !output_.empty();
}

std::optional<StallDiagnosis> Link::watchdog_check(sim::Duration timeout) const {
	if (!work_pending()) return std::nullopt;
	const sim::SimTime since = k_.last_activity();
	if (k_.now() - since < timeout) return std::nullopt;
	StallDiagnosis d{StallPhase::LostInFlight, {}, since};
	std::ostringstream os;
	if (rx_.mid_word()) {
		d.phase = StallPhase::RxPartialWord;
		os << "RX partial word (" << rx_.bits_latched() << "/" << cfg_.width << " bits latched)";
	} else if (tx_.phase() == TxPhase::InvalidInput) {
		d.phase = StallPhase::TxValidity;
		os << "TX validity stall (input word never became valid)";
	} else if (tx_.phase() == TxPhase::Transmitting || tx_.phase() == TxPhase::Acknowledging) {
		d.phase = StallPhase::TxAwaitingEncAck;
		os << "TX waiting on Enc.a";
	} else if (!output_.empty()) {
		d.phase = StallPhase::OutputBlocked;
		os << "output buffer blocked with " << output_.size() << " words";
	} else if (!input_.empty() && credits_ == 0) {
		d.phase = StallPhase::TxAwaitingCredit;
		os << "TX waiting on out.a credit";
	} else {
		os << in_flight_.size() << " launched words never completed at RX";
	}
	d.message = os.str();
	return d;
}

void Link::arm_watchdog(sim::Duration timeout) {
	watchdog_timeout_ = timeout;
	if (watchdog_armed_ || stall_) return;
	watchdog_armed_ = true;
	k_.schedule_in(timeout, pid_, [this, timeout] { watchdog_tick(timeout); });
}

void Link::watchdog_tick(sim::Duration timeout) {
	if (!work_pending()) {
		watchdog_armed_ = false;
		return;
	}
	if (auto d = watchdog_check(timeout)) {
		stall_ = d;
		watchdog_armed_ = false;
		return;
	}
	k_.schedule(k_.last_activity() + timeout, pid_, [this, timeout] { watchdog_tick(timeout); });
}

LinkStats Link::stats() const {
	LinkStats s;
	s.events_sent = sent_;
	s.events_launched = launch_times_.size();
	s.events_received = delivered_;
	if (!ack_times_.empty() && !launch_times_.empty()) s.first_word_latency = ack_times_.front() - launch_times_.front();
	if (launch_times_.size() >= 2)
		s.steady_period = (launch_times_.back() - launch_times_.front()) / (launch_times_.size() - 1);
	s.awake_time_total = phy_.awake_total();
	s.window = k_.now();
	s.corrupted_words = corrupted_;
	s.protocol_violations = tx_.violations() + tx_.illegal_inputs() + rx_.violations() + corrupted_ + spurious_ +
	                        output_overflows_ + credit_overflows_ + phy_.preamble_violations() +
	                        phy_.idle_transitions() + mutex_failures_;
	return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

}  // namespace

WordGenerator random_words(unsigned width, std::uint64_t seed) {
	return [width, seed](std::uint64_t i) { return EventWord(splitmix64(seed * 0x100000001b3ULL ^ splitmix64(i)), width); };
}

EventSource::EventSource(sim::Kernel& k, Link& link, SourceSpec spec, WordGenerator gen)
    : k_(k), link_(link), spec_(spec), gen_(std::move(gen)), pid_(k.add_process("source")), rng_(spec.seed) {
	if ((spec_.kind == SourceSpec::Kind::Periodic && spec_.interval == sim::SimTime::zero()) ||
	    spec_.kind == SourceSpec::Kind::Poisson) {
		if (!(spec_.rate_eps > 0.0)) throw ConfigError("rate", "source rate must be positive");
	}
	if (spec_.kind == SourceSpec::Kind::Periodic && spec_.interval == sim::SimTime::zero())
		spec_.interval = sim::SimTime{static_cast<sim::SimTime::rep>(std::llround(1e12 / spec_.rate_eps))};
	if (spec_.kind == SourceSpec::Kind::Burst && spec_.burst_size == 0) throw ConfigError("burst_size", "must be positive");
	link_.on_space([this] { drain(); });
	if (spec_.n_events > 0) schedule_next(0, spec_.start);
}

void EventSource::schedule_next(std::uint64_t index, sim::SimTime at) {
	last_offer_ = at;
	k_.schedule(at, pid_, [this, index] { offer(index); });
}

void EventSource::offer(std::uint64_t index) {
	std::uint64_t count = 1;
	if (spec_.kind == SourceSpec::Kind::Single) count = spec_.n_events;
	if (spec_.kind == SourceSpec::Kind::Burst) count = std::min<std::uint64_t>(spec_.burst_size, spec_.n_events - index);
	for (std::uint64_t j = 0; j < count; ++j) {
		EventWord w = gen_(index + j);
		offered_.push_back(w);
		if (!backlog_.empty() || link_.send_event(w) == SendResult::BackPressured) backlog_.push_back(w);
	}
	const std::uint64_t next = index + count;
	if (next >= spec_.n_events) return;
	switch (spec_.kind) {
	case SourceSpec::Kind::Single:
		break;
	case SourceSpec::Kind::Periodic:
		schedule_next(next, spec_.start + spec_.interval * next);
		break;
	case SourceSpec::Kind::Poisson: {
		std::exponential_distribution<double> gap(spec_.rate_eps);
		const auto ps = static_cast<sim::SimTime::rep>(std::llround(gap(rng_) * 1e12));
		schedule_next(next, k_.now() + sim::SimTime{ps});
		break;
	}
	case SourceSpec::Kind::Burst:
		schedule_next(next, k_.now() + spec_.burst_gap);
		break;
	}
}

void EventSource::drain() {
	while (!backlog_.empty() && link_.send_event(backlog_.front()) == SendResult::Accepted) backlog_.pop_front();
}

Loopback::Loopback(sim::Kernel& k, const LinkConfig& cfg, Router router)
    : k_(k), router_(std::move(router)), fwd_(k, cfg, "chip1_to_chip2."), bwd_(k, cfg, "chip2_to_chip1.") {
	fwd_.set_consumer([this](const ReceivedWord& w) {
		return bwd_.send_event(router_(w.word)) == SendResult::Accepted;
	});
	bwd_.on_space([this] { fwd_.retry_output(); });
	bwd_.set_consumer([this](const ReceivedWord& w) {
		delivered_.push_back(router_(w.word));
		delivered_at_.push_back(k_.now());
		return true;
	});
}

void Loopback::inject(std::uint64_t n, WordGenerator gen) {
	SourceSpec spec;
	spec.kind = SourceSpec::Kind::Single;
	spec.n_events = n;
	spec.start = k_.now();
	source_ = std::make_unique<EventSource>(k_, fwd_, spec, std::move(gen));
}

LoopbackResult Loopback::result() const {
	LoopbackResult r;
	r.stats = fwd_.stats();
	r.return_stats = bwd_.stats();
	r.stats.events_received = delivered_.size();
	r.stats.protocol_violations += r.return_stats.protocol_violations;
	r.stats.corrupted_words += r.return_stats.corrupted_words;
	if (source_) r.sent = source_->offered();
	r.received = delivered_;
	if (delivered_at_.size() >= 2) {
		r.sink_period = (delivered_at_.back() - delivered_at_.front()) / (delivered_at_.size() - 1);
		r.throughput_eps = 1.0 / r.sink_period.as_seconds();
	}
	r.invariant_failures = k_.invariant_failures();
	return r;
}

LoopbackResult run_loopback(const LinkConfig& cfg, Router router, std::uint64_t n_events, std::uint64_t seed) {
	if (n_events == 0) throw ConfigError("events", "loopback needs at least one event");
	sim::Kernel k;
	Loopback loop(k, cfg, std::move(router));
	loop.inject(n_events, random_words(cfg.width, seed));
	k.run();
	return loop.result();
}

}  // namespace aerlink
