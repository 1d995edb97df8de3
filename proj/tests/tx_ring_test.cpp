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
#include "aerlink/sim/kernel.hpp"
#include "aerlink/tx_ring.hpp"
#include "support.hpp"

namespace aerlink {
namespace {

using namespace sim::literals;
using sim::SimTime;

struct Symbol {
	SimTime at;
	RailSymbol s;
};

/// Drives one standalone ring through a full four-phase cycle per word,
/// releasing the inputs when Enc.a rises and recording every rail symbol.
struct Bench {
	sim::Kernel k{{.record_traces = true}};
	TxRing ring;
	std::vector<Symbol> symbols;
	std::vector<SimTime> enc_a_rise, enc_a_fall;
	unsigned max_holders = 0;

	explicit Bench(TxRingConfig cfg) : ring(k, cfg) {
		auto sample = [this](const sim::Signal&) {
			const RailSymbol s{ring.data().value(), ring.parity().value()};
			if (!symbols.empty() && symbols.back().at == k.now())
				symbols.back().s = s;
			else
				symbols.push_back({k.now(), s});
		};
		ring.data().on_change(sample);
		ring.parity().on_change(sample);
		ring.enc_a().on_change([this](const sim::Signal& s) {
			(s.value() ? enc_a_rise : enc_a_fall).push_back(k.now());
			if (s.value()) ring.release_inputs();
		});
		k.add_invariant("tx-mutex", [this] {
			max_holders = std::max(max_holders, ring.token_holders());
			return ring.token_holders() <= 1;
		});
	}
};

TEST(TxCell, OddCellDrivesComplementParity) {
	TxTokenCellState c{Phase::Odd};
	const auto out = tx_cell_step(c, {.enable = true, .bit = DualRailBit::of(true)});
	ASSERT_TRUE(out.drive);
	EXPECT_EQ(*out.drive, (RailSymbol{true, false}));
	EXPECT_TRUE(out.enable_successor);
	EXPECT_TRUE(out.disable_predecessor);
}

TEST(TxCell, EvenCellDrivesEqualParity) {
	TxTokenCellState c{Phase::Even};
	const auto out = tx_cell_step(c, {.enable = true, .bit = DualRailBit::of(true)});
	ASSERT_TRUE(out.drive);
	EXPECT_EQ(*out.drive, (RailSymbol{true, true}));
}

TEST(TxCell, DisableBeforeDriveIsViolation) {
	TxTokenCellState c{Phase::Odd};
	EXPECT_TRUE(tx_cell_step(c, {.disable = true}).violation);
}

TEST(TxValidity, AllPositionsValid) {
	const DualRailWord w(8, DualRailBit{true, false});
	const auto r = tx_validity_check(w);
	EXPECT_TRUE(r.valid);
	EXPECT_FALSE(r.illegal);
}

TEST(TxValidity, EmptyPositionHoldsRequestLow) {
	DualRailWord w(8, DualRailBit{true, false});
	w[3] = DualRailBit{};
	EXPECT_FALSE(tx_validity_check(w).valid);
}

TEST(TxValidity, IllegalPositionIsFlagged) {
	DualRailWord w(8, DualRailBit{true, false});
	w[5] = DualRailBit{true, true};
	const auto r = tx_validity_check(w);
	EXPECT_FALSE(r.valid);
	EXPECT_TRUE(r.illegal);
}

TEST(TxRing, TwoBitTimeline) {
	Bench b({.width = 2});
	ASSERT_TRUE(b.ring.submit(EventWord(0b10, 2)));
	b.k.run();
	ASSERT_EQ(b.symbols.size(), 2U);
	EXPECT_EQ(b.symbols[0].at, 450_ps);
	EXPECT_EQ(b.symbols[0].s, (RailSymbol{true, false}));
	EXPECT_EQ(b.symbols[1].at, 1120_ps);
	EXPECT_EQ(b.symbols[1].s, (RailSymbol{false, false}));
	ASSERT_EQ(b.enc_a_rise.size(), 1U);
	EXPECT_EQ(b.enc_a_rise[0], 1790_ps);
}

TEST(TxRing, ThirtyTwoBitSpan) {
	Bench b({});
	ASSERT_TRUE(b.ring.submit(EventWord(0x8000'0001)));
	b.k.run();
	// Each symbol differs from the idle (0,0) state or its predecessor.
	ASSERT_EQ(b.symbols.size(), 32U);
	EXPECT_EQ(b.enc_a_rise[0] - b.symbols.front().at, SimTime::ps(32 * 670));
	EXPECT_EQ(b.ring.words_sent(), 1U);
}

TEST(TxRing, EmptyWordNeverRequests) {
	Bench b({.width = 8});
	b.ring.submit(empty_dual_rail(8));
	b.k.run();
	EXPECT_FALSE(b.ring.tx_r().value());
	EXPECT_TRUE(b.symbols.empty());
	EXPECT_TRUE(b.enc_a_rise.empty());
}

TEST(TxRing, IllegalInputIsCountedAndHeld) {
	Bench b({.width = 4});
	DualRailWord w(4, DualRailBit{false, true});
	w[2] = DualRailBit{true, true};
	b.ring.submit(w);
	b.k.run();
	EXPECT_EQ(b.ring.illegal_inputs(), 1U);
	EXPECT_EQ(b.ring.phase(), TxPhase::InvalidInput);
	EXPECT_TRUE(b.symbols.empty());
}

TEST(TxRing, RejectsSubmitWhileBusy) {
	Bench b({.width = 4});
	ASSERT_TRUE(b.ring.submit(EventWord(5, 4)));
	EXPECT_FALSE(b.ring.submit(EventWord(6, 4)));
}

// Four-phase discipline: Enc.a rises one bit cycle after the last symbol and
// falls only once the inputs have returned to empty.
TEST(TxRing, FourPhaseOrdering) {
	Bench b({.width = 8});
	ASSERT_TRUE(b.ring.submit(EventWord(0xA5, 8)));
	b.k.run();
	ASSERT_EQ(b.enc_a_rise.size(), 1U);
	ASSERT_EQ(b.enc_a_fall.size(), 1U);
	EXPECT_EQ(b.enc_a_rise[0], b.symbols.back().at + 670_ps);
	const auto& txr = b.ring.tx_r().history();
	ASSERT_EQ(txr.size(), 2U);
	EXPECT_GE(b.enc_a_fall[0], txr[1].time);
}

// Serialising through the ring agrees with the pure codec for any word,
// with exactly t_d between symbols and a single token holder throughout.
TEST(TxRingProperty, TraceDecodesToWord) {
	testing::Gen g(21);
	for (int i = 0; i < 300; ++i) {
		const unsigned width = 2 * static_cast<unsigned>(g.range(1, 32));
		const auto t_d = SimTime::ps(g.range(100, 2000));
		Bench b({.width = width, .t_d = t_d});
		const EventWord w(g.word(width), width);
		ASSERT_TRUE(b.ring.submit(w));
		b.k.run();
		std::vector<RailSymbol> trace;
		for (const auto& s : b.symbols) trace.push_back(s.s);
		ASSERT_EQ(trace, testing::reference_encode(w.value(), width)) << w.to_string();
		for (std::size_t j = 1; j < b.symbols.size(); ++j) ASSERT_EQ(b.symbols[j].at - b.symbols[j - 1].at, t_d);
		ASSERT_EQ(b.k.invariant_failures(), 0U);
		ASSERT_EQ(b.max_holders, 1U);
		ASSERT_EQ(b.ring.violations(), 0U);
	}
}

}  // namespace
}  // namespace aerlink
