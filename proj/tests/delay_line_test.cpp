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

#include <cmath>
#include <vector>

#include "aerlink/errors.hpp"
#include "aerlink/sim/delay_line.hpp"
#include "aerlink/sim/kernel.hpp"

namespace aerlink::sim {
namespace {

using namespace literals;

struct Edges {
	std::vector<SimTime> in;
	std::vector<Change> out;
};

/// Toggles an input `n` times, `spacing` apart, through one delay line.
Edges run_line(Duration delay, Jitter j, std::uint64_t seed, int n, Duration spacing) {
	Kernel k({.record_traces = true});
	auto& in = k.make_signal("in");
	auto& out = delay_line(k, in, delay, j, seed);
	const auto p = k.add_process("stim");
	Edges e;
	for (int i = 0; i < n; ++i) {
		const SimTime t = spacing * static_cast<SimTime::rep>(i);
		e.in.push_back(t);
		k.schedule(t, p, [&k, &in] { k.set(in, !in.value()); });
	}
	k.run();
	e.out = out.history();
	return e;
}

TEST(DelayLine, PureDelay) {
	const auto e = run_line(670_ps, Jitter::none(), 1, 1, 1_ns);
	ASSERT_EQ(e.out.size(), 1U);
	EXPECT_EQ(e.out[0].time, 670_ps);
	EXPECT_TRUE(e.out[0].value);
}

TEST(DelayLine, DefaultOutputName) {
	Kernel k;
	auto& in = k.make_signal("D");
	EXPECT_EQ(delay_line(k, in, 1_ps, Jitter::none(), 0).name(), "D_dly");
}

TEST(DelayLine, RejectsZeroDelay) {
	Kernel k;
	auto& in = k.make_signal("in");
	EXPECT_ANY_THROW(delay_line(k, in, SimTime::zero(), Jitter::none(), 0));
}

TEST(DelayLine, SameSeedSameTrace) {
	const auto a = run_line(670_ps, Jitter::uniform(50_ps), 42, 500, 1_ns);
	const auto b = run_line(670_ps, Jitter::uniform(50_ps), 42, 500, 1_ns);
	ASSERT_EQ(a.out.size(), b.out.size());
	for (std::size_t i = 0; i < a.out.size(); ++i) EXPECT_EQ(a.out[i].time, b.out[i].time);
}

TEST(DelayLine, UniformJitterMeanOffset) {
	const int n = 10000;
	const auto e = run_line(670_ps, Jitter::uniform(50_ps), 3, n, 1_ns);
	ASSERT_EQ(e.out.size(), static_cast<std::size_t>(n));
	double sum = 0;
	for (int i = 0; i < n; ++i) {
		const double off = static_cast<double>(e.out[i].time.ticks()) - static_cast<double>(e.in[i].ticks());
		ASSERT_GE(off, 620.0);
		ASSERT_LE(off, 720.0);
		sum += off;
	}
	EXPECT_NEAR(sum / n, 670.0, 2.0);
}

TEST(DelayLine, NormalJitterIsTruncatedAndPositive) {
	const auto e = run_line(100_ps, Jitter::normal(50_ps), 5, 2000, 1_ns);
	for (std::size_t i = 0; i < e.out.size(); ++i) {
		const auto off = e.out[i].time.ticks() - e.in[i].ticks();
		EXPECT_GE(off, 1U);
		EXPECT_LE(off, 250U);
	}
}

// Edges closer than the jitter spread still leave in order.
TEST(DelayLine, NeverOvertakes) {
	const auto e = run_line(670_ps, Jitter::uniform(300_ps), 9, 3000, 20_ps);
	bool expect = true;
	for (std::size_t i = 1; i < e.out.size(); ++i) ASSERT_GE(e.out[i].time, e.out[i - 1].time);
	for (const auto& c : e.out) {
		ASSERT_EQ(c.value, expect);
		expect = !expect;
	}
}

}  // namespace
}  // namespace aerlink::sim
