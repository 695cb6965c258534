// Copyright 2026 The qcorr Authors
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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/channels.hpp"
#include "qcorr/factorization.hpp"
#include "qcorr/state.hpp"

namespace qcorr::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitInternal = 3;

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);
/// Rounds to 12 significant digits so JSON output matches CSV output.
double round12(double v);

/// {"dims": [d_a, d_b], "matrix": [[[re, im], ...], ...]}; a bare number is
/// accepted for a real entry.
DensityMatrix state_from_json(const nlohmann::json &j);
nlohmann::json state_to_json(const DensityMatrix &rho);
/// {"dim": d, "kraus": [matrix, ...]}.
KrausChannel channel_from_json(const nlohmann::json &j, bool choi_check = false);
nlohmann::json channel_to_json(const KrausChannel &ch);

/// A file path, or one of "bell", "werner:p=<p>", "mixed:da=<d>,db=<d>".
DensityMatrix load_state(const std::string &spec);

/// name:key=value,... with every key required unless noted:
///   identity[:d=2]  depol[:d=2],q  pauli:q1,q2,q3  bit-flip:q  phase-flip:q
///   bit-phase-flip:q  gad:q,eta  gm:q1..q8  gm-pair:k1,q  gm-triple:k1,k2,k3,q
struct Constructor
{
	std::string name;
	std::map<std::string, std::string> args;
};

Constructor parse_constructor(const std::string &text);
KrausChannel build_channel(const Constructor &c);
KrausChannel make_channel_from_string(const std::string &text);
/// A file path (JSON channel) or a constructor string.
KrausChannel load_channel(const std::string &spec, bool choi_check = false);

/// q values of an evolve schedule with the matching t values (empty t for
/// explicit q grids).
struct Schedule
{
	std::vector<double> q;
	std::vector<double> t;
};

Schedule linear_schedule(double q_from, double q_to, int steps);
Schedule exp_schedule(double gamma, double t_max, int steps);

nlohmann::json profile_to_json(const ScalingProfile &p);

/// Parses argv and runs one subcommand; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qcorr::cli
