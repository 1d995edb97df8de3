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

#include "aerlink/power.hpp"

#include <sstream>

#include "aerlink/errors.hpp"

namespace aerlink {

Current current_at_rate(const PowerParams& params, double rate_eps, Side side) {
	if (!(rate_eps >= 0.0)) throw RangeError("event rate must be non-negative");
	if (rate_eps > params.peak_rate_eps) {
		std::ostringstream os;
		os << "event rate " << rate_eps << " exceeds peak rate " << params.peak_rate_eps;
		throw RangeError(os.str());
	}
	return params.leakage(side) + Current{params.charge(side).nanocoulombs * rate_eps};
}

PowerSummary summary_ratios(const PowerParams& params, double peak_rate_eps) {
	PowerParams p = params;
	p.peak_rate_eps = peak_rate_eps;
	PowerSummary s;
	s.p_max = current_at_rate(p, peak_rate_eps, Side::Tx) + current_at_rate(p, peak_rate_eps, Side::Rx);
	s.p_min = params.i_leak_tx + params.i_leak_rx;
	s.ratio = s.p_max.nanoamps / s.p_min.nanoamps;
	return s;
}

TraceEnergy energy_of_trace(const LinkStats& stats, const PowerParams& params) {
	TraceEnergy e;
	e.rate_eps = stats.observed_rate_eps();
	e.avg_tx = current_at_rate(params, e.rate_eps, Side::Tx);
	e.avg_rx = current_at_rate(params, e.rate_eps, Side::Rx);
	e.avg_total = e.avg_tx + e.avg_rx;
	e.power_w = params.vdd * e.avg_total.amps();
	e.energy_j = e.power_w * stats.window.as_seconds();
	return e;
}

Charge charge_per_bit(const PowerParams& params, Side side, unsigned width, unsigned n_lsb_repeat) {
	return Charge{params.charge(side).nanocoulombs / static_cast<double>(width + n_lsb_repeat)};
}

}  // namespace aerlink
