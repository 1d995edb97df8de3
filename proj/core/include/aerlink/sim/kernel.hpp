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
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "aerlink/sim/signal.hpp"
#include "aerlink/sim/time.hpp"

namespace aerlink::sim {

struct ProcessId {
	std::uint32_t value = 0;
	constexpr auto operator<=>(const ProcessId&) const = default;
};

struct EventHandle {
	std::uint64_t seq = 0;
	std::uint32_t slot = 0;
};

struct RunStats {
	std::uint64_t events_fired = 0;
	SimTime final_time{};
	std::size_t pending = 0;
};

struct KernelOptions {
	/// Keep a full (time, value) history on every signal.
	bool record_traces = false;
};

/// Deterministic single-threaded discrete-event kernel.
///
/// Events are ordered by (time, insertion sequence). Signals live in the
/// kernel and notify their listeners synchronously when they change, so a
/// process observes a change exactly at the time it was scheduled. After every
/// dispatched event the registered invariants are evaluated; failures are
/// counted rather than thrown so a long run can report all of them.
class Kernel {
public:
	using Action = std::function<void()>;

	explicit Kernel(KernelOptions opts = {});

	Kernel(const Kernel&) = delete;
	Kernel& operator=(const Kernel&) = delete;

	ProcessId add_process(std::string name);
	const std::string& process_name(ProcessId id) const;

	/// Throws SimulationError when `at` lies before now().
	EventHandle schedule(SimTime at, ProcessId target, Action action);
	EventHandle schedule_in(Duration delay, ProcessId target, Action action) {
		return schedule(now_ + delay, target, std::move(action));
	}
	/// Returns false if the event already fired or was cancelled.
	bool cancel(EventHandle h);

	/// Processes every event with time <= deadline. The clock ends at the
	/// deadline, or at the last event time when the queue drains first.
	RunStats run_until(SimTime deadline);
	/// Runs until the queue is empty.
	RunStats run();

	SimTime now() const { return now_; }
	std::size_t pending() const { return live_events_; }
	std::uint64_t events_fired() const { return fired_; }

	Signal& make_signal(std::string name, bool initial = false);
	/// Immediate change at now(); a write of the current value is ignored.
	void set(Signal& s, bool value);
	/// Schedules `s = value` after `delay` on behalf of `by`.
	EventHandle drive(Signal& s, bool value, Duration delay, ProcessId by);

	const std::deque<Signal>& signals() const { return signals_; }
	bool recording() const { return opts_.record_traces; }
	/// Time of the most recent change on any signal.
	SimTime last_activity() const { return last_activity_; }

	void add_invariant(std::string name, std::function<bool()> check);
	std::uint64_t invariant_failures() const { return invariant_failures_; }
	/// Name and time of the first failing invariant, empty if none.
	const std::string& first_invariant_failure() const { return first_failure_; }

private:
	struct Entry {
		SimTime time;
		std::uint64_t seq;
		std::uint32_t slot;
	};
	struct Later {
		bool operator()(const Entry& a, const Entry& b) const {
			return a.time != b.time ? a.time > b.time : a.seq > b.seq;
		}
	};
	struct Slot {
		Action action;
		std::uint64_t seq = 0;
		ProcessId target;
		bool live = false;
	};
	struct Invariant {
		std::string name;
		std::function<bool()> check;
	};

	void dispatch(const Entry& e);
	void check_invariants();

	KernelOptions opts_;
	SimTime now_{};
	std::uint64_t next_seq_ = 0;
	std::uint64_t fired_ = 0;
	std::uint64_t change_order_ = 0;
	std::size_t live_events_ = 0;
	SimTime last_activity_{};
	std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
	std::vector<Slot> slots_;
	std::vector<std::uint32_t> free_slots_;
	std::vector<std::string> processes_;
	std::deque<Signal> signals_;
	std::vector<Invariant> invariants_;
	std::uint64_t invariant_failures_ = 0;
	std::string first_failure_;
};

}  // namespace aerlink::sim
