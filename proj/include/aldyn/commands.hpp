// Copyright 2026 The aldyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aldyn/json_io.hpp"

namespace aldyn {

enum class RunStatus { ok = 0, fail = 1, malformed = 2, inconclusive = 3, internal = 4 };

std::string_view to_string(RunStatus s);

/// Outcome of one command. `verified` lists the post-conditions that were
/// re-checked on the result; a failed re-check turns the status into fail.
struct RunReport {
  std::string command;
  RunStatus status = RunStatus::ok;
  io::json result = io::json::object();
  io::json verified = io::json::array();
  std::vector<std::string> trace;
  std::optional<std::string> error;
  std::optional<std::string> error_pointer;
  double wall_time_ms = 0.0;

  /// Machine form. Wall time is left out unless asked for, so repeated runs
  /// print identical bytes.
  io::json to_json(bool with_timing = false) const;
  /// Human-readable trace, one line per step.
  std::string text() const;
};

/// Dispatches a request object to a subcommand. Options live under
/// "options": degree_cap, ansatz_cap, tol, theta. ALDYN_DEGREE_CAP in the
/// environment replaces the built-in cap defaults. Never throws.
RunReport run(std::string_view command, const io::json& request);

const std::vector<std::string>& command_names();
const std::vector<std::string>& demo_names();

}  // namespace aldyn
