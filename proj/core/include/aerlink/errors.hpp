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

#include <stdexcept>
#include <string>

namespace aerlink {

/// Raised for kernel misuse such as scheduling into the past. Aborts the run.
class SimulationError : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

/// A symbol stream or handshake sequence that cannot occur under LEDR.
class ProtocolViolation : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
	ConfigError(std::string key, const std::string& what)
	    : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

	const std::string& key() const noexcept { return key_; }

private:
	std::string key_;
};

/// Operating point outside the modelled range (e.g. event rate above peak).
class RangeError : public std::out_of_range {
public:
	using std::out_of_range::out_of_range;
};

}  // namespace aerlink
