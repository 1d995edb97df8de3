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
#include <string>
#include <vector>

#include "aerlink/sim/time.hpp"

namespace aerlink::sim {

class Kernel;

/// One recorded value change. `order` is a kernel-global counter that keeps
/// same-time changes on different signals in the order they happened.
struct Change {
	SimTime time;
	bool value;
	std::uint64_t order;
};

/// A single binary wire owned by a Kernel. Values only change through
/// Kernel::set, which suppresses no-op writes.
class Signal {
public:
	using Listener = std::function<void(const Signal&)>;

	Signal(std::string name, bool initial) : name_(std::move(name)), value_(initial), initial_(initial) {}

	Signal(const Signal&) = delete;
	Signal& operator=(const Signal&) = delete;

	const std::string& name() const { return name_; }
	bool value() const { return value_; }
	bool initial_value() const { return initial_; }
	SimTime last_change() const { return last_change_; }
	std::uint64_t change_count() const { return change_count_; }

	/// Empty unless the owning kernel records traces.
	const std::vector<Change>& history() const { return history_; }

	/// Listeners run synchronously inside the event that changed the value.
	void on_change(Listener fn) { listeners_.push_back(std::move(fn)); }

private:
	friend class Kernel;

	std::string name_;
	bool value_;
	bool initial_;
	SimTime last_change_{};
	std::uint64_t change_count_ = 0;
	std::vector<Change> history_;
	std::vector<Listener> listeners_;
};

}  // namespace aerlink::sim
