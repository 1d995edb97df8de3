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
#include <span>
#include <string>
#include <vector>

namespace aerlink {

/// LEDR encoding phase. Odd symbols carry P = !D, even symbols P = D.
enum class Phase : std::uint8_t { Odd, Even };

constexpr Phase opposite(Phase p) { return p == Phase::Odd ? Phase::Even : Phase::Odd; }

/// One code point on the (Data, Parity) rail pair.
struct RailSymbol {
	bool d = false;
	bool p = false;

	constexpr bool operator==(const RailSymbol&) const = default;
};

/// Even iff the parity rail equals the data rail.
constexpr Phase relation_of(RailSymbol s) { return s.d == s.p ? Phase::Even : Phase::Odd; }

constexpr RailSymbol encode_bit(bool bit, Phase phase) {
	return RailSymbol{bit, phase == Phase::Odd ? !bit : bit};
}

/// Fixed-width address-event payload, 1 to 64 bits, serialised MSB first.
///
/// The codec accepts any width; links require an even width (see
/// LinkConfig::validate).
class EventWord {
public:
	static constexpr unsigned kDefaultWidth = 32;
	static constexpr unsigned kMaxWidth = 64;

	EventWord() = default;
	/// Bits of `value` above `width` are masked off. Throws std::invalid_argument
	/// for widths outside [1, 64].
	explicit EventWord(std::uint64_t value, unsigned width = kDefaultWidth);
	/// `bits[0]` is the MSB.
	static EventWord from_bits(const std::vector<bool>& bits);

	unsigned width() const { return width_; }
	std::uint64_t value() const { return value_; }
	/// Bit in serialisation order: i = 0 is the MSB.
	bool bit(unsigned i) const { return (value_ >> (width_ - 1 - i)) & 1U; }
	bool lsb() const { return value_ & 1U; }
	std::vector<bool> bits() const;
	std::string to_string() const;

	bool operator==(const EventWord&) const = default;

private:
	std::uint64_t value_ = 0;
	unsigned width_ = kDefaultWidth;
};

/// One symbol per bit, MSB first, phases alternating from `start`.
std::vector<RailSymbol> encode_word(const EventWord& word, Phase start = Phase::Odd);
std::vector<RailSymbol> encode_bits(const std::vector<bool>& bits, Phase start = Phase::Odd);

struct DecodeResult {
	std::vector<bool> bits;
	Phase final_phase = Phase::Even;
};

/// Delay-insensitive decode of a sampled rail stream.
///
/// A symbol yields a bit when its relation differs from the last consumed
/// relation (`initial_relation` before anything is consumed). A symbol that
/// repeats the relation is ignored when it equals the last consumed symbol and
/// throws ProtocolViolation otherwise: that would mean both rails moved within
/// one phase. Before the first bit, same-relation symbols are idle and ignored.
DecodeResult decode_stream(std::span<const RailSymbol> symbols, Phase initial_relation);

}  // namespace aerlink
