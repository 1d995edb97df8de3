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

#include <gtest/gtest.h>

#include <vector>

#include "aerlink/ledr.hpp"
#include "aerlink/phy.hpp"
#include "aerlink/rx_ring.hpp"
#include "aerlink/sim/kernel.hpp"
#include "aerlink/tx_ring.hpp"
#include "support.hpp"

namespace aerlink {
namespace {

using namespace sim::literals;
using sim::SimTime;

struct Bench {
	sim::Kernel k;
	RxRing ring;
	sim::ProcessId stim;
	std::vector<ReceivedWord> words;
	unsigned max_holders = 0;

	explicit Bench(RxRingConfig cfg) : ring(k, cfg), stim(k.add_process("stim")) {
		ring.set_sink([this](const ReceivedWord& w) { words.push_back(w); });
		k.add_invariant("rx-mutex", [this] {
			max_holders = std::max(max_holders, ring.token_holders());
			return ring.token_holders() <= 1;
		});
	}

	/// Presents `symbols` one every `spacing`, starting at `start`.
	SimTime feed(const std::vector<RailSymbol>& symbols, SimTime start, sim::Duration spacing) {
		SimTime t = start;
		for (const auto& s : symbols) {
			k.schedule(t, stim, [this, s] { ring.observe(s); });
			t += spacing;
		}
		return t;
	}
};

TEST(RxCell, OddCellAcceptsOddSymbol) {
	RxTokenCellState c{Phase::Odd, true, std::nullopt, true};
	const auto d = rx_cell_accept(c, {true, false});
	EXPECT_TRUE(d.accepted);
	EXPECT_TRUE(d.bit);
	EXPECT_EQ(c.latched_bit, true);
}

TEST(RxCell, OddCellIgnoresEvenSymbol) {
	RxTokenCellState c{Phase::Odd, true, std::nullopt, true};
	EXPECT_FALSE(rx_cell_accept(c, {true, true}).accepted);
	EXPECT_FALSE(c.latched_bit);
}

TEST(RxCell, EvenCellAcceptsZero) {
	RxTokenCellState c{Phase::Even, true, std::nullopt, true};
	const auto d = rx_cell_accept(c, {false, false});
	EXPECT_TRUE(d.accepted);
	EXPECT_FALSE(d.bit);
}

TEST(RxCell, CellWithoutTokenIgnores) {
	RxTokenCellState c{Phase::Odd, false, std::nullopt, false};
	EXPECT_FALSE(rx_cell_accept(c, {true, false}).accepted);
}

TEST(RxRing, DecodesFullWord) {
	Bench b({});
	const EventWord w(0xDEAD'BEEF);
	b.feed(encode_word(w), 1_ns, 670_ps);
	b.k.run();
	ASSERT_EQ(b.words.size(), 1U);
	EXPECT_EQ(b.words[0].word, w);
	EXPECT_TRUE(b.words[0].complete);
	EXPECT_EQ(b.ring.violations(), 0U);
}

// The serialiser's own rail trace, replayed into the receiver.
TEST(RxRing, DecodesTxRingTrace) {
	sim::Kernel k;
	TxRing tx(k, {});
	RxRing rx(k, {});
	rx.attach(tx.data(), tx.parity());
	std::vector<ReceivedWord> got;
	rx.set_sink([&](const ReceivedWord& w) { got.push_back(w); });
	tx.enc_a().on_change([&](const sim::Signal& s) {
		if (s.value()) tx.release_inputs();
	});
	const EventWord w(0x1234'5678);
	tx.submit(w);
	k.run();
	ASSERT_EQ(got.size(), 1U);
	EXPECT_EQ(got[0].word, w);
	EXPECT_EQ(EventWord::from_bits(decode_stream(encode_word(w), Phase::Even).bits), got[0].word);
}

TEST(RxRing, IgnoresIdleSymbolsBeforeFirstOddSymbol) {
	Bench b({});
	const EventWord w(0x0F0F'0F0F);
	std::vector<RailSymbol> s(5, RailSymbol{false, false});
	const auto word = encode_word(w);
	s.insert(s.end(), word.begin(), word.end());
	b.feed(s, 1_ns, 670_ps);
	b.k.run();
	ASSERT_EQ(b.words.size(), 1U);
	EXPECT_EQ(b.words[0].word, w);
	EXPECT_EQ(b.ring.violations(), 0U);
}

TEST(RxRing, IncompleteWordIsHeld) {
	Bench b({});
	auto s = encode_word(EventWord(0xCAFE'F00D));
	s.pop_back();
	b.feed(s, 1_ns, 670_ps);
	b.k.run();
	EXPECT_TRUE(b.words.empty());
	EXPECT_TRUE(b.ring.mid_word());
	EXPECT_EQ(b.ring.bits_latched(), 31U);
}

TEST(RxRing, DoubleRailChangeIsIllegal) {
	Bench b({.width = 4});
	b.feed({{true, false}, {false, true}}, 1_ns, 670_ps);
	b.k.run();
	EXPECT_EQ(b.ring.illegal_transitions(), 1U);
}

TEST(RxRing, InvalidDualRailInputsAreCounted) {
	Bench b({.width = 4});
	b.ring.observe(DualRailBit{true, true}, DualRailBit::of(false));
	EXPECT_EQ(b.ring.rail_errors(), 1U);
}

// A symbol arriving before the previous one has been consumed is an overrun.
TEST(RxRing, SlowCellsOverrun) {
	Bench b({.width = 8, .cell_delay = 1000_ps});
	b.feed(encode_word(EventWord(0x5A, 8)), 1_ns, 300_ps);
	b.k.run();
	EXPECT_GT(b.ring.overruns(), 0U);
}

// Preamble symbols repeat the previous LSB state and are ignored for any
// repeat count, whatever the LSB was.
TEST(RxRingProperty, PreambleIgnored) {
	testing::Gen g(31);
	for (unsigned n = 1; n <= 10; ++n) {
		for (int trial = 0; trial < 20; ++trial) {
			Bench b({});
			const EventWord a(g.word(32)), c(g.word(32));
			std::vector<RailSymbol> s = encode_word(a);
			for (const auto& p : driver_wakeup(a.lsb(), n)) s.push_back(p);
			const auto second = encode_word(c);
			s.insert(s.end(), second.begin(), second.end());
			b.feed(s, 1_ns, 670_ps);
			b.k.run();
			ASSERT_EQ(b.words.size(), 2U) << "n=" << n;
			EXPECT_EQ(b.words[0].word, a);
			EXPECT_EQ(b.words[1].word, c);
			ASSERT_EQ(b.ring.violations(), 0U);
		}
	}
}

// Randomised symbol spacing never below the cell delay: output equals input.
TEST(RxRingProperty, DelayInsensitiveAboveCellDelay) {
	testing::Gen g(32);
	for (int trial = 0; trial < 200; ++trial) {
		Bench b({.width = 16, .cell_delay = 300_ps});
		std::vector<EventWord> sent;
		SimTime t = 1_ns;
		for (int i = 0; i < 5; ++i) {
			sent.emplace_back(g.word(16), 16);
			for (const auto& s : encode_word(sent.back())) {
				b.k.schedule(t, b.stim, [&b, s] { b.ring.observe(s); });
				t += SimTime::ps(g.range(301, 3000));
			}
		}
		b.k.run();
		ASSERT_EQ(b.words.size(), sent.size());
		for (std::size_t i = 0; i < sent.size(); ++i) ASSERT_EQ(b.words[i].word, sent[i]);
		ASSERT_EQ(b.ring.violations(), 0U);
		ASSERT_EQ(b.k.invariant_failures(), 0U);
		ASSERT_LE(b.max_holders, 1U);
	}
}

}  // namespace
}  // namespace aerlink
