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

#include "aerlink/sim/kernel.hpp"

#include <sstream>

namespace aerlink::sim {

Kernel::Kernel(KernelOptions opts) : opts_(opts) { processes_.emplace_back("kernel"); }

ProcessId Kernel::add_process(std::string name) {
	processes_.push_back(std::move(name));
	return ProcessId{static_cast<std::uint32_t>(processes_.size() - 1)};
}

const std::string& Kernel::process_name(ProcessId id) const { return processes_.at(id.value); }

EventHandle Kernel::schedule(SimTime at, ProcessId target, Action action) {
	if (at < now_) {
		std::ostringstream os;
		os << "event for '" << process_name(target) << "' scheduled at " << at << " but now is " << now_;
		throw SimulationError(os.str());
	}
	std::uint32_t slot;
	if (!free_slots_.empty()) {
		slot = free_slots_.back();
		free_slots_.pop_back();
	} else {
		slot = static_cast<std::uint32_t>(slots_.size());
		slots_.emplace_back();
	}
	const std::uint64_t seq = next_seq_++;
	Slot& s = slots_[slot];
	s.action = std::move(action);
	s.seq = seq;
	s.target = target;
	s.live = true;
	queue_.push(Entry{at, seq, slot});
	++live_events_;
	return EventHandle{seq, slot};
}

bool Kernel::cancel(EventHandle h) {
	if (h.slot >= slots_.size()) return false;
	Slot& s = slots_[h.slot];
	if (!s.live || s.seq != h.seq) return false;
	s.live = false;
	s.action = nullptr;
	--live_events_;
	return true;
}

void Kernel::dispatch(const Entry& e) {
	Slot& s = slots_[e.slot];
	const bool live = s.live && s.seq == e.seq;
	Action action;
	if (live) {
		action = std::move(s.action);
		s.live = false;
		--live_events_;
	}
	s.action = nullptr;
	free_slots_.push_back(e.slot);
	if (!live) return;
	now_ = e.time;
	++fired_;
	action();
	check_invariants();
}

RunStats Kernel::run_until(SimTime deadline) {
	std::uint64_t fired_before = fired_;
	while (!queue_.empty() && queue_.top().time <= deadline) {
		Entry e = queue_.top();
		queue_.pop();
		dispatch(e);
	}
	// A drained queue leaves the clock at the last event.
	if (live_events_ > 0 && deadline > now_) now_ = deadline;
	// Drop cancelled tombstones left at the head.
	while (!queue_.empty() && !(slots_[queue_.top().slot].live && slots_[queue_.top().slot].seq == queue_.top().seq)) {
		free_slots_.push_back(queue_.top().slot);
		queue_.pop();
	}
	return RunStats{fired_ - fired_before, now_, live_events_};
}

RunStats Kernel::run() { return run_until(SimTime::max()); }

Signal& Kernel::make_signal(std::string name, bool initial) {
	signals_.emplace_back(std::move(name), initial);
	return signals_.back();
}

void Kernel::set(Signal& s, bool value) {
	if (s.value_ == value) return;
	s.value_ = value;
	s.last_change_ = now_;
	++s.change_count_;
	last_activity_ = now_;
	const std::uint64_t order = change_order_++;
	if (opts_.record_traces) s.history_.push_back(Change{now_, value, order});
	for (std::size_t i = 0; i < s.listeners_.size(); ++i) s.listeners_[i](s);
}

EventHandle Kernel::drive(Signal& s, bool value, Duration delay, ProcessId by) {
	return schedule_in(delay, by, [this, &s, value] { set(s, value); });
}

void Kernel::add_invariant(std::string name, std::function<bool()> check) {
	invariants_.push_back(Invariant{std::move(name), std::move(check)});
}

void Kernel::check_invariants() {
	for (const auto& inv : invariants_) {
		if (inv.check()) continue;
		if (invariant_failures_++ == 0) {
			std::ostringstream os;
			os << inv.name << " @ " << now_;
			first_failure_ = os.str();
		}
	}
}

}  // namespace aerlink::sim
