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

#include <string>
#include <vector>

#include "qcorr/bloch.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/measures.hpp"

namespace qcorr
{

/// T1/T2: one-sided D_p under fully / partially scaling channels.
/// T3/T4: the symmetric measure under the same two hypotheses.
/// FiguresOfMerit: teleportation, remote state preparation and CHSH.
enum class Theorem
{
	T1,
	T2,
	T3,
	T4,
	FiguresOfMerit,
	Auto
};

std::string to_string(Theorem t);
Theorem parse_theorem(const std::string &name);

inline constexpr double kSupportTol = 1e-9;

/// Which sides carry a non-identity channel.
enum class Configuration
{
	A,
	B,
	AB
};

std::string to_string(Configuration c);

/// Free: no constraint. Zero: the vector vanishes. Group: supported in the
/// chosen factor group (K on side a, L on side b).
enum class VectorSupport
{
	Free,
	Zero,
	Group
};

/// Rows: rows outside K vanish. Cols: columns outside L vanish. Block: both.
enum class TensorSupport
{
	Free,
	Zero,
	Rows,
	Cols,
	Block
};

enum class FactorRule
{
	One,
	Qa,
	Qb,
	QaQb
};

/// One alternative of a family, e.g. T2 family (3), second alternative.
struct FamilyCase
{
	Theorem theorem = Theorem::T1;
	int family = 1;
	char alternative = 'a';
	Configuration configuration = Configuration::A;
	VectorSupport x = VectorSupport::Free;
	VectorSupport y = VectorSupport::Free;
	TensorSupport t = TensorSupport::Free;
	/// Requires q_a = q_b (same channel on both sides).
	bool equal_factors = false;
	FactorRule factor = FactorRule::Qa;

	/// "t2.f3b"
	std::string name() const;
};

/// Every family alternative of `theorem` in declaration order.
const std::vector<FamilyCase> &family_cases(Theorem theorem);
/// Throws ValidationError for unknown (family, alternative).
const FamilyCase &family_case(Theorem theorem, int family, char alternative);

struct FamilyClassification
{
	Theorem theorem = Theorem::T1;
	Configuration configuration = Configuration::A;
	bool member = false;
	int family = 0;
	char alternative = 0;
	/// Factors of the groups used as K and L (1 on identity sides).
	double q_a = 1.0;
	double q_b = 1.0;
	IndexSet k_group;
	IndexSet l_group;
	/// q entering the decay law, e.g. q_a q_b for two-sided correlations.
	double q = 1.0;
	std::string witness;

	std::string family_name() const;
};

/// True when the profile is a single factor-1 group.
bool is_identity_profile(const ScalingProfile &p);

/// Theorem used by Theorem::Auto for a measure kind.
Theorem default_theorem(MeasureKind kind, const ScalingProfile &prof_a, const ScalingProfile &prof_b);

/// Tests the family conditions of `theorem` for the configuration implied by
/// the profiles. Factor groups are tried as K, L largest first; the first
/// alternative that holds wins. T1/T3 require every non-identity side to
/// scale all generators by one factor and throw ValidationError otherwise.
FamilyClassification classify(const BlochForm &b, const ScalingProfile &prof_a, const ScalingProfile &prof_b,
							  Theorem theorem, double tol = kSupportTol);

/// |q|^p for distances, |q| for nqt and bmax, q^2 for frsp; for fqt the
/// factor acting on F_qt - 1/2.
double predicted_factor(MeasureKind kind, const FamilyClassification &family);
/// Prediction of the after-value from the before-value.
double predicted_value(MeasureKind kind, const FamilyClassification &family, double before);

struct FactorizationReport
{
	MeasureKind kind = MeasureKind::GqdP2;
	Side side = Side::A;
	FamilyClassification family;
	double before = 0.0;
	double after = 0.0;
	double factor = 0.0;
	double predicted = 0.0;
	double abs_error = 0.0;
	double rel_error = 0.0;
	double tolerance = 0.0;
	bool pass = false;
	Method method_before = Method::Auto;
	Method method_after = Method::Auto;
};

struct VerifyOptions
{
	Side side = Side::A;
	Method method = Method::Auto;
	Theorem theorem = Theorem::Auto;
	double support_tol = kSupportTol;
	std::uint64_t seed = 0;
};

/// classify() for the decay law of `kind` measured on `side`: one-sided
/// kinds measured on b are classified with the subsystems exchanged.
FamilyClassification classify_for_measure(const DensityMatrix &rho, const LocalChannel &ch, MeasureKind kind,
										  const VerifyOptions &opts = {});

/// Measures before and after the channel and checks
/// |after - predicted| <= tol * max(1, before). Throws ValidationError if the
/// state is not a family member.
FactorizationReport verify(const DensityMatrix &rho, const LocalChannel &ch, MeasureKind kind,
						   const OptimizerSettings &settings, double tol, const VerifyOptions &opts = {});

/// The part of the state a one-sided measurement on a can disturb,
/// x.X (x) I / d_b + sum t_ij X_i (x) Y_j.
ComplexMatrix varrho(const BlochForm &b);

struct VarrhoCheck
{
	double residual = 0.0;
	double q = 0.0;
	/// q came from a family classification rather than a least-squares fit.
	bool classified = false;
	FamilyClassification family;
};

/// ||varrho' - q varrho||_2 where q is the classified factor for members and
/// <varrho, varrho'>/<varrho, varrho> otherwise.
VarrhoCheck varrho_scaling_check(const DensityMatrix &rho, const LocalChannel &ch, double tol = kSupportTol);

struct WeylReport
{
	double before = 0.0;
	double after = 0.0;
	/// (q_a q_b)^2 before.
	double bound = 0.0;
	double gap = 0.0;
	bool holds = false;
};

inline constexpr double kWeylTol = 1e-9;

/// Two-norm discord under depolarizing channels on both qubits against the
/// (q_a q_b)^2 lower bound.
WeylReport weyl_bound_check(const DensityMatrix &rho, double q_a, double q_b);

} // namespace qcorr
