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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/state.hpp"

namespace qcorr
{

inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kScalingTol = 1e-10;
inline constexpr double kFactorGroupTol = 1e-9;
inline constexpr double kEpsilonClamp = 1e-12;

/// Kraus list fails sum E^dagger E = I.
class NotTracePreserving : public ValidationError
{
public:
	using ValidationError::ValidationError;
};

/// A requested scaling vector needs a negative Kraus weight.
class InfeasibleScaling : public ValidationError
{
public:
	using ValidationError::ValidationError;
};

/// Gell-Mann scaling vector violates the linear relations among the q_k.
class ScalingConstraintViolation : public ValidationError
{
public:
	using ValidationError::ValidationError;
};

/// Constructor parameter outside its CPTP range.
class ParameterOutOfRange : public ValidationError
{
public:
	using ValidationError::ValidationError;
};

/// CPTP map on one subsystem, S(rho) = sum_mu E_mu rho E_mu^dagger, with
/// sum_mu E_mu^dagger E_mu = I to 1e-10.
class KrausChannel
{
public:
	KrausChannel() = default;

	int dim() const { return dim_; }
	const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
	/// A short label such as "depol:d=2,q=0.3" for reports; may be empty.
	const std::string &label() const { return label_; }

	/// ||sum E^dagger E - I||_2.
	double completeness_residual() const;
	/// Smallest eigenvalue of the (unnormalized) Choi matrix.
	double choi_min_eigenvalue() const;
	bool is_identity(double tol = kScalingTol) const;

	KrausChannel with_label(std::string label) const;

private:
	friend KrausChannel make_channel(std::vector<ComplexMatrix>, bool);
	int dim_ = 0;
	std::vector<ComplexMatrix> kraus_;
	std::string label_;
};

/// Validates shapes and completeness; with `choi_check` also requires the
/// Choi matrix to be PSD to -1e-10.
KrausChannel make_channel(std::vector<ComplexMatrix> kraus, bool choi_check = false);

KrausChannel identity_channel(int d);

/// S_1 (x) S_2; either side may be the identity channel.
struct LocalChannel
{
	KrausChannel side_a;
	KrausChannel side_b;
};

LocalChannel tensor(const KrausChannel &a, const KrausChannel &b);
/// `ch` on `side`, identity of dimension `other_dim` on the other side.
LocalChannel one_sided(const KrausChannel &ch, Side side, int other_dim);

/// Single-system Schrodinger picture.
ComplexMatrix apply(const KrausChannel &ch, const ComplexMatrix &rho);
/// Double Kraus sum over E_mu (x) E_nu.
DensityMatrix apply(const LocalChannel &ch, const DensityMatrix &rho);
/// Heisenberg picture, S^dagger(A) = sum_mu E_mu^dagger A E_mu.
ComplexMatrix adjoint_apply(const KrausChannel &ch, const ComplexMatrix &a);

struct FactorGroup
{
	double factor = 0.0;
	IndexSet indices;
};

/// Per-generator record of S^dagger(G_k) = q_k G_k.
struct ScalingProfile
{
	int dim = 0;
	std::vector<std::optional<double>> factors;
	std::vector<double> residuals;
	/// Scaled generators grouped by common factor (within 1e-9), in order of
	/// first appearance.
	std::vector<FactorGroup> groups;

	bool fully_scaled() const { return groups.size() == 1 && static_cast<int>(groups[0].indices.size()) == size(); }
	int size() const { return static_cast<int>(factors.size()); }
};

ScalingProfile scaling_profile(const KrausChannel &ch);
/// Profile of the identity channel: a single group of factor 1.
ScalingProfile identity_profile(int d);

/// q rho + (1 - q) I/d, q in [-1/(d^2 - 1), 1].
KrausChannel depolarizing(int d, double q);
/// Pauli channel whose adjoint scales sigma_k by q_k.
KrausChannel pauli_from_q(double q1, double q2, double q3);
/// Pauli weights (eps_0..eps_3) realizing the scaling vector; negative
/// weights below -1e-12 throw.
std::array<double, 4> pauli_weights(double q1, double q2, double q3);
KrausChannel bit_flip(double q);
KrausChannel bit_phase_flip(double q);
KrausChannel phase_flip(double q);
/// Generalized amplitude damping; eta = 1 is the zero-temperature reservoir.
KrausChannel gad(double q, double eta);
/// Gell-Mann channel whose adjoint scales lambda_k by q_k.
KrausChannel gellmann_from_q(const RealVector &q);
std::array<double, 9> gellmann_weights(const RealVector &q);
/// Factor 1 on {lambda_k1, lambda_8}, q elsewhere; k1 is one-based in {1,2,3}.
KrausChannel gellmann_identity_pair(int k1, double q);
/// Factor q on {k1, k2, k3}, 3q - 2 elsewhere; one-based k1 in {1,2,3},
/// k2 in {4,5}, k3 in {6,7}; q in [1/2, 1].
KrausChannel gellmann_triple(int k1, int k2, int k3, double q);

} // namespace qcorr
