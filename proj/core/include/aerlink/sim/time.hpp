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

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

#include "aerlink/errors.hpp"

namespace aerlink::sim {

/// Simulation time and durations in integer picoseconds.
class SimTime {
public:
	using rep = std::uint64_t;

	constexpr SimTime() = default;
	constexpr explicit SimTime(rep ps) : ticks_(ps) {}

	static constexpr SimTime ps(rep v) { return SimTime{v}; }
	static constexpr SimTime ns(rep v) { return SimTime{v * 1000}; }
	static constexpr SimTime us(rep v) { return SimTime{v * 1000 * 1000}; }
	static constexpr SimTime ms(rep v) { return SimTime{v * 1000 * 1000 * 1000}; }
	static constexpr SimTime s(rep v) { return SimTime{v * 1000 * 1000 * 1000 * 1000}; }
	static constexpr SimTime zero() { return SimTime{0}; }
	static constexpr SimTime max() { return SimTime{std::numeric_limits<rep>::max()}; }

	constexpr rep ticks() const { return ticks_; }
	constexpr double as_ns() const { return static_cast<double>(ticks_) / 1e3; }
	constexpr double as_seconds() const { return static_cast<double>(ticks_) / 1e12; }

	constexpr auto operator<=>(const SimTime&) const = default;

	constexpr SimTime& operator+=(SimTime o) {
		ticks_ += o.ticks_;
		return *this;
	}
	friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ticks_ + b.ticks_}; }
	friend constexpr SimTime operator-(SimTime a, SimTime b) {
		if (b.ticks_ > a.ticks_) throw SimulationError("negative SimTime difference");
		return SimTime{a.ticks_ - b.ticks_};
	}
	friend constexpr SimTime operator*(SimTime a, rep k) { return SimTime{a.ticks_ * k}; }
	friend constexpr SimTime operator*(rep k, SimTime a) { return SimTime{a.ticks_ * k}; }
	friend constexpr SimTime operator/(SimTime a, rep k) { return SimTime{a.ticks_ / k}; }

	friend std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.ticks_ << "ps"; }

private:
	rep ticks_ = 0;
};

using Duration = SimTime;

namespace literals {
consteval SimTime operator""_ps(unsigned long long v) { return SimTime::ps(v); }
consteval SimTime operator""_ns(unsigned long long v) { return SimTime::ns(v); }
consteval SimTime operator""_us(unsigned long long v) { return SimTime::us(v); }
}  // namespace literals

}  // namespace aerlink::sim
