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

#include <iostream>

#include "aerlink/link.hpp"

int main() {
	aerlink::sim::Kernel k;
	aerlink::Link link(k, aerlink::LinkConfig{});
	link.send_event(aerlink::EventWord(0x2a));
	k.run();
	const bool ok = link.received().size() == 1 && link.received()[0].word == aerlink::EventWord(0x2a);
	std::cout << (ok ? "ok" : "mismatch") << "\n";
	return ok ? 0 : 1;
}
