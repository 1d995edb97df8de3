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

#include "aerlink/link_stats.hpp"

namespace aerlink {

/// Supply current held in nanoamps so that leakage floors add exactly.
struct Current {
	double nanoamps = 0.0;

	static constexpr Current nA(double v) { return Current{v}; }
	static constexpr Current uA(double v) { return Current{v * 1e3}; }
	static constexpr Current mA(double v) { return Current{v * 1e6}; }
	constexpr double amps() const { return nanoamps * 1e-9; }

	friend constexpr Current operator+(Current a, Current b) { return Current{a.nanoamps + b.nanoamps}; }
	friend constexpr Current operator-(Current a, Current b) { return Current{a.nanoamps - b.nanoamps}; }
};

/// Charge per event in nanocoulombs; nC times events/s gives nA directly.
struct Charge {
	double nanocoulombs = 0.0;
};

enum class Side { Tx, Rx };

/// Leakage floor plus per-event charge for each side of the link. The
/// per-event charges are fitted to the peak-rate currents (19.3 mA TX and
/// 3.57 mA RX at 35.7 M events/s).
struct PowerParams {
	Current i_leak_tx = Current::nA(80);
	Current i_leak_rx = Current::nA(42);
	Charge q_event_tx{0.54};
	Charge q_event_rx{0.100};
	double vdd = 1.8;
	/// Highest sustainable event rate; 1 / 28 ns by default.
	double peak_rate_eps = 1e12 / 28000.0;

	Current leakage(Side s) const { return s == Side::Tx ? i_leak_tx : i_leak_rx; }
	Charge charge(Side s) const { return s == Side::Tx ? q_event_tx : q_event_rx; }
};

/// i_leak + q_event * rate. Throws RangeError for negative rates or rates
/// above params.peak_rate_eps.
Current current_at_rate(const PowerParams& params, double rate_eps, Side side);

struct PowerSummary {
	Current p_max;  ///< TX + RX at the peak rate
	Current p_min;  ///< TX + RX leakage
	double ratio = 0.0;
};

PowerSummary summary_ratios(const PowerParams& params, double peak_rate_eps);

struct TraceEnergy {
	double rate_eps = 0.0;
	Current avg_tx;
	Current avg_rx;
	Current avg_total;
	double power_w = 0.0;
	double energy_j = 0.0;
};

/// Average current and energy of a finished run: the event count over the
/// stats window sets the rate fed to current_at_rate.
TraceEnergy energy_of_trace(const LinkStats& stats, const PowerParams& params);

/// Charge attributed to one transmitted bit cycle (word bits plus preamble).
Charge charge_per_bit(const PowerParams& params, Side side, unsigned width, unsigned n_lsb_repeat);

}  // namespace aerlink
