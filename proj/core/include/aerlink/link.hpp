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
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aerlink/ledr.hpp"
#include "aerlink/link_stats.hpp"
#include "aerlink/phy.hpp"
#include "aerlink/rx_ring.hpp"
#include "aerlink/sim/kernel.hpp"
#include "aerlink/tx_ring.hpp"

namespace aerlink {

/// Every tunable of one link direction. Defaults reproduce the measured
/// 32-bit operating point: 25.91 ns on-time, 28 ns period, ~31 ns latency.
struct LinkConfig {
	unsigned width = 32;
	sim::Duration t_d{670};
	sim::Duration t_wk{450};
	/// Control queue credits; the output buffer has the same depth.
	unsigned queue_depth = 4;
	unsigned input_depth = 4;
	PhyConfig phy{};
	sim::Duration rx_cell_delay{300};
	sim::Duration ack_wire_delay{2700};
	/// Enc.a rising to the next TX.r.
	sim::Duration inter_event_gap{2090};
	sim::Duration gate_delay{100};
	/// out.a pulse width (and minimum spacing between pulses).
	sim::Duration ack_pulse{1000};

	/// Throws ConfigError naming the offending field.
	void validate() const;

	/// TX.r to the MSB push: wake delay plus the repeated-LSB preamble.
	sim::Duration first_push_delay() const;
	/// Driver on-time for one word.
	sim::Duration on_time() const { return first_push_delay() + t_d * width; }
	/// Launch-to-launch interval of a saturated link.
	sim::Duration nominal_period() const { return on_time() + inter_event_gap; }
};

enum class SendResult { Accepted, BackPressured };

enum class StallPhase { TxValidity, TxAwaitingEncAck, TxAwaitingCredit, RxPartialWord, OutputBlocked, LostInFlight };

struct StallDiagnosis {
	StallPhase phase;
	std::string message;
	sim::SimTime since{};
};

std::string to_string(StallPhase p);

/// One direction of the bit-serial link: input buffer, TX token-ring, control
/// queue, LVDS pairs, RX token-ring, output buffer and the out.a return wire.
///
/// A word is launched (TX.r) when it heads the input buffer, the ring is idle,
/// a control-queue credit is available and inter_event_gap has passed since
/// the previous Enc.a. Credits return with out.a, which the receiving side
/// raises when a word leaves its output buffer. The link also keeps an oracle
/// FIFO of launched words to count corrupted deliveries.
class Link {
public:
	using Consumer = std::function<bool(const ReceivedWord&)>;

	Link(sim::Kernel& k, LinkConfig cfg, const std::string& prefix = {});

	Link(const Link&) = delete;
	Link& operator=(const Link&) = delete;

	/// Throws std::invalid_argument if the word width differs from the link.
	SendResult send_event(const EventWord& word);
	/// Fault injection: presents an arbitrary dual-rail bus.
	SendResult send_raw(const DualRailWord& word);
	/// Called whenever an input buffer slot frees up.
	void on_space(std::function<void()> fn) { space_listeners_.push_back(std::move(fn)); }

	/// Output buffer consumer; returning false leaves the word buffered until
	/// retry_output(). The default consumer accepts and records every word.
	void set_consumer(Consumer c) { consumer_ = std::move(c); }
	void retry_output() { drain_output(); }

	/// Test hook: sleeps the driver immediately, even mid-word.
	void force_sleep() { phy_.sleep(); }

	/// Diagnoses a stall at the current time: work is pending and no signal
	/// has changed for at least `timeout`.
	std::optional<StallDiagnosis> watchdog_check(sim::Duration timeout) const;
	/// Schedules watchdog_check to run after quiet periods of `timeout`. The
	/// first diagnosis is kept in stall().
	void arm_watchdog(sim::Duration timeout);
	const std::optional<StallDiagnosis>& stall() const { return stall_; }

	LinkStats stats() const;
	const LinkConfig& config() const { return cfg_; }
	const std::vector<ReceivedWord>& received() const { return received_; }
	const std::vector<sim::SimTime>& launch_times() const { return launch_times_; }
	const std::vector<sim::SimTime>& ack_times() const { return ack_times_; }
	unsigned credits() const { return credits_; }
	std::size_t input_occupancy() const { return input_.size(); }
	std::size_t output_occupancy() const { return output_.size(); }
	std::uint64_t mutual_exclusion_failures() const { return mutex_failures_; }

	TxRing& tx() { return tx_; }
	RxRing& rx() { return rx_; }
	PhyLink& phy() { return phy_; }
	const TxRing& tx() const { return tx_; }
	const RxRing& rx() const { return rx_; }
	const PhyLink& phy() const { return phy_; }
	sim::Signal& out_a() { return out_a_; }
	sim::Signal& out_a_rx() { return ack_rx_; }

private:
	struct Pending {
		DualRailWord rails;
		std::optional<EventWord> word;
	};

	SendResult enqueue(Pending p);
	void try_launch();
	void on_tx_r(bool high);
	void on_enc_a();
	void on_rx_word(const ReceivedWord& w);
	void drain_output();
	void emit_ack();
	void on_ack_arrival();
	void watchdog_tick(sim::Duration timeout);
	bool work_pending() const;

	sim::Kernel& k_;
	LinkConfig cfg_;
	std::string prefix_;
	sim::ProcessId pid_;
	TxRing tx_;
	PhyLink phy_;
	RxRing rx_;
	sim::Signal& ack_rx_;
	sim::Signal& out_a_;

	std::deque<Pending> input_;
	std::deque<ReceivedWord> output_;
	std::deque<EventWord> in_flight_;
	std::vector<ReceivedWord> received_;
	Consumer consumer_;
	std::vector<std::function<void()>> space_listeners_;

	unsigned credits_;
	sim::SimTime next_launch_{};
	bool launch_timer_ = false;
	bool presented_ = false;
	unsigned acks_queued_ = 0;
	bool ack_busy_ = false;
	bool watchdog_armed_ = false;
	std::optional<sim::Duration> watchdog_timeout_;
	std::optional<StallDiagnosis> stall_;

	std::vector<sim::SimTime> launch_times_;
	std::vector<sim::SimTime> ack_times_;
	std::uint64_t sent_ = 0;
	std::uint64_t delivered_ = 0;
	std::uint64_t corrupted_ = 0;
	std::uint64_t spurious_ = 0;
	std::uint64_t output_overflows_ = 0;
	std::uint64_t credit_overflows_ = 0;
	std::uint64_t mutex_failures_ = 0;
};

/// Synthetic address-event sources standing in for an on-chip neuron array.
struct SourceSpec {
	enum class Kind { Single, Periodic, Poisson, Burst };
	Kind kind = Kind::Single;
	double rate_eps = 0.0;
	/// Periodic interval; overrides rate_eps when non-zero.
	sim::Duration interval{};
	std::uint64_t seed = 1;
	unsigned burst_size = 1;
	sim::Duration burst_gap{};
	std::uint64_t n_events = 1;
	sim::SimTime start{};
};

/// Produces the i-th word of a run.
using WordGenerator = std::function<EventWord(std::uint64_t index)>;

/// Uniformly random words of `width` bits from a seeded generator.
WordGenerator random_words(unsigned width, std::uint64_t seed);

/// Offers words to a link according to a SourceSpec. Back-pressured words
/// wait in order and are retried when the link frees a slot; none are dropped.
class EventSource {
public:
	EventSource(sim::Kernel& k, Link& link, SourceSpec spec, WordGenerator gen);

	EventSource(const EventSource&) = delete;
	EventSource& operator=(const EventSource&) = delete;

	const std::vector<EventWord>& offered() const { return offered_; }
	std::uint64_t backlog() const { return backlog_.size(); }
	/// Time of the last scheduled offer.
	sim::SimTime last_offer() const { return last_offer_; }

private:
	void offer(std::uint64_t index);
	void schedule_next(std::uint64_t index, sim::SimTime at);
	void drain();

	sim::Kernel& k_;
	Link& link_;
	SourceSpec spec_;
	WordGenerator gen_;
	sim::ProcessId pid_;
	std::mt19937_64 rng_;
	std::deque<EventWord> backlog_;
	std::vector<EventWord> offered_;
	sim::SimTime last_offer_{};
};

using Router = std::function<EventWord(const EventWord&)>;

struct LoopbackResult {
	LinkStats stats;  ///< chip1 -> chip2 link, with throughput measured at chip1's sink
	LinkStats return_stats;
	std::vector<EventWord> sent;
	std::vector<EventWord> received;
	double throughput_eps = 0.0;
	sim::SimTime sink_period{};
	std::uint64_t invariant_failures = 0;
};

/// Two chips wired back to back. Chip1 injects events towards chip2; chip2
/// routes everything it receives back to chip1. The router runs once per hop,
/// at each receiving chip.
class Loopback {
public:
	Loopback(sim::Kernel& k, const LinkConfig& cfg, Router router);

	/// Offers `n` words from `gen` as fast as chip1 accepts them.
	void inject(std::uint64_t n, WordGenerator gen);
	LoopbackResult result() const;

	Link& forward() { return fwd_; }
	Link& backward() { return bwd_; }

private:
	sim::Kernel& k_;
	Router router_;
	Link fwd_;
	Link bwd_;
	std::unique_ptr<EventSource> source_;
	std::vector<EventWord> delivered_;
	std::vector<sim::SimTime> delivered_at_;
};

/// Runs a saturated two-chip loop of `n_events` to quiescence.
LoopbackResult run_loopback(const LinkConfig& cfg, Router router, std::uint64_t n_events, std::uint64_t seed = 1);

}  // namespace aerlink
