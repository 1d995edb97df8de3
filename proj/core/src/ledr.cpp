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

#include "aerlink/ledr.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

#include "aerlink/errors.hpp"

namespace aerlink {

EventWord::EventWord(std::uint64_t value, unsigned width) : width_(width) {
	if (width == 0 || width > kMaxWidth) throw std::invalid_argument("EventWord width must be in [1, 64]");
	value_ = width == 64 ? value : value & ((std::uint64_t{1} << width) - 1);
}

EventWord EventWord::from_bits(const std::vector<bool>& bits) {
	std::uint64_t v = 0;
	for (bool b : bits) v = (v << 1) | (b ? 1U : 0U);
	return EventWord(v, static_cast<unsigned>(bits.size()));
}

std::vector<bool> EventWord::bits() const {
	std::vector<bool> out(width_);
	for (unsigned i = 0; i < width_; ++i) out[i] = bit(i);
	return out;
}

std::string EventWord::to_string() const {
	std::string s(width_, '0');
	for (unsigned i = 0; i < width_; ++i)
		if (bit(i)) s[i] = '1';
	return s;
}

std::vector<RailSymbol> encode_bits(const std::vector<bool>& bits, Phase start) {
	std::vector<RailSymbol> out;
	out.reserve(bits.size());
	Phase ph = start;
	for (bool b : bits) {
		out.push_back(encode_bit(b, ph));
		ph = opposite(ph);
	}
	return out;
}

std::vector<RailSymbol> encode_word(const EventWord& word, Phase start) {
	std::vector<RailSymbol> out;
	out.reserve(word.width());
	Phase ph = start;
	for (unsigned i = 0; i < word.width(); ++i) {
		out.push_back(encode_bit(word.bit(i), ph));
		ph = opposite(ph);
	}
	return out;
}

DecodeResult decode_stream(std::span<const RailSymbol> symbols, Phase initial_relation) {
	DecodeResult r;
	r.final_phase = initial_relation;
	std::optional<RailSymbol> last;
	for (std::size_t i = 0; i < symbols.size(); ++i) {
		const RailSymbol s = symbols[i];
		if (relation_of(s) != r.final_phase) {
			r.bits.push_back(s.d);
			r.final_phase = relation_of(s);
			last = s;
		} else if (last && s != *last) {
			std::ostringstream os;
			os << "both rails changed within one phase at symbol " << i;
			throw ProtocolViolation(os.str());
		}
	}
	return r;
}

}  // namespace aerlink
