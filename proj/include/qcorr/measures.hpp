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

#include <cstdint>
#include <optional>
#include <string>

#include "qcorr/measurements.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/state.hpp"

namespace qcorr
{

enum class MeasureKind
{
	GqdP1,
	GqdP2,
	MinP1,
	MinP2,
	HellingerP2,
	SymP1,
	SymP2,
	Nqt,
	Fqt,
	Frsp,
	Bmax
};

enum class Method
{
	Optimize,
	ClosedForm,
	Auto
};

std::string to_string(MeasureKind kind);
std::string to_string(Method method);
/// Accepts the names printed by to_string ("gqd-p2", "closed-form", ...).
MeasureKind parse_measure_kind(const std::string &name);
Method parse_method(const std::string &name);

/// Schatten exponent of a distance-based kind; 0 for figures of merit.
int schatten_exponent(MeasureKind kind);
bool is_figure_of_merit(MeasureKind kind);
bool is_one_sided(MeasureKind kind);

struct MeasureSpec
{
	MeasureKind kind = MeasureKind::GqdP2;
	Side side = Side::A;
	Method method = Method::Auto;
};

/// True when `kind` has a closed form on d_a (x) d_b measured on `side`:
/// gqd-p2 and min-p2 with a qubit on the measured side, figures of merit
/// on two qubits.
bool has_closed_form(MeasureKind kind, int d_a, int d_b, Side side = Side::A);

struct MeasureResult
{
	double value = 0.0;
	Method method = Method::Optimize;
	int starts = 0;
	int evaluations = 0;
	bool iteration_cap_hit = false;
	RealVector best_params;
	/// |closed form - optimizer| when method auto evaluated both.
	std::optional<double> cross_check;
};

inline constexpr double kNegativeClamp = 1e-10;
inline constexpr double kCrossCheckTol = 1e-5;

/// Values in [-1e-10, 0) become 0; anything more negative is a bug and
/// raises InternalError.
double clamp_nonnegative(double value, const std::string &what);

/// opt over the measurement family of ||s - Pi(s)||_p^p with s = rho
/// (s = sqrt(rho) for hellinger-p2). gqd and hellinger minimize over all
/// projective measurements on one side, min maximizes over measurements
/// leaving the measured marginal invariant, sym minimizes over two-sided
/// measurements.
MeasureResult geometric_measure(const DensityMatrix &rho, const MeasureSpec &spec,
								const OptimizerSettings &settings = {}, std::uint64_t seed = 0);

/// Any kind, figures of merit included.
MeasureResult evaluate(const DensityMatrix &rho, const MeasureSpec &spec, const OptimizerSettings &settings = {},
					   std::uint64_t seed = 0);

/// (1/4)[|x|^2 + ||T||^2 - k_max(x x^t + T T^t)] in Pauli coordinates.
double d2_closed_two_qubit(const DensityMatrix &rho);
/// Two-norm discord of a 2 (x) n state measured on the qubit:
/// (1/2)[tr G - lambda_max(G)] with G_il = tr(B_i B_l), B_i = tr_a[(s_i (x) I) rho].
double gqd2_closed_2xn(const DensityMatrix &rho);
/// Two-norm MIN of a 2 (x) n state measured on the qubit.
double min2_closed_2xn(const DensityMatrix &rho);

struct FiguresOfMerit
{
	double nqt = 0.0;
	double fqt = 0.0;
	double frsp = 0.0;
	double bmax = 0.0;
	/// Eigenvalues of T^t T, descending.
	Eigen::Vector3d e = Eigen::Vector3d::Zero();
};

FiguresOfMerit figures_of_merit(const DensityMatrix &rho);
double figure_of_merit(const FiguresOfMerit &f, MeasureKind kind);

/// min over two-sided projective measurements of ||rho - Pi^{ab}(rho)||_p^p.
MeasureResult symmetric_measure(const DensityMatrix &rho, int p, const OptimizerSettings &settings = {},
								std::uint64_t seed = 0);

} // namespace qcorr
