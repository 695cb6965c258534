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
#include <functional>
#include <optional>

#include "qcorr/optimizer.hpp"
#include "qcorr/state.hpp"

namespace qcorr
{

/// Rank-one von Neumann measurement {Pi_k = |u_k><u_k|}.
struct ProjectiveMeasurement
{
	int dim = 0;
	std::vector<ComplexMatrix> projectors;

	/// Projectors onto the columns of a unitary.
	static ProjectiveMeasurement from_basis(const ComplexMatrix &basis);
	/// max of idempotency, orthogonality and completeness residuals.
	double residual() const;
};

/// dim 2: (polar, azimuthal) of the measurement axis n.
/// dim 3: (theta12, theta13, theta23, delta, alpha, beta, gamma1, gamma2);
/// the last two are phases of the basis vectors and leave the projectors
/// unchanged.
struct MeasurementParams
{
	int dim = 0;
	RealVector angles;
};

/// Columns |+n>, |-n> for n = (sin t cos p, sin t sin p, cos t).
ComplexMatrix qubit_basis(double theta, double phi);
/// diag(1, e^{i alpha}, e^{i beta}) R23(theta23) U13(theta13, delta) R12(theta12);
/// covers every orthonormal qutrit basis up to vector phases.
ComplexMatrix qutrit_basis(const double *angles);

ComplexMatrix to_basis(const MeasurementParams &p);
ProjectiveMeasurement to_measurement(const MeasurementParams &p);

/// Sum_k (Pi_k (x) I) rho (Pi_k (x) I) and its b / two-sided analogues.
DensityMatrix measure_state(const DensityMatrix &rho, const std::optional<ProjectiveMeasurement> &m_a,
							const std::optional<ProjectiveMeasurement> &m_b);

/// The same map on an arbitrary operator, measurement given by basis
/// unitaries (empty matrix = no measurement on that side).
ComplexMatrix measure_operator(const ComplexMatrix &op, int d_a, int d_b, const ComplexMatrix &basis_a,
							   const ComplexMatrix &basis_b);

/// op - Pi(op) expressed in the measurement basis: the Schatten norms of
/// this matrix equal those of op - Pi(op).
ComplexMatrix disturbance_in_basis(const ComplexMatrix &op, int d_a, int d_b, const ComplexMatrix &basis_a,
								   const ComplexMatrix &basis_b);

/// A set of orthonormal bases V * blockdiag(U_1, ..., U_m): V is fixed and
/// each block of size 2 or 3 carries its own free rotation.
class MeasurementFamily
{
public:
	struct Block
	{
		int offset = 0;
		int size = 1;
	};

	MeasurementFamily() = default;
	MeasurementFamily(ComplexMatrix frame, std::vector<Block> blocks);

	/// All projective measurements on C^d.
	static MeasurementFamily projective(int d);
	/// A single fixed basis.
	static MeasurementFamily fixed(const ComplexMatrix &basis);

	int dim() const { return static_cast<int>(frame_.rows()); }
	int num_parameters() const;
	bool is_fixed() const { return num_parameters() == 0; }
	const std::vector<Block> &blocks() const { return blocks_; }
	std::vector<ParameterRange> ranges() const;
	ComplexMatrix basis(const RealVector &params) const;

private:
	ComplexMatrix frame_;
	std::vector<Block> blocks_;
};

/// Measurements that leave rho_a invariant: bases refining the spectral
/// projectors of rho_a, with eigenvalues closer than `tol` treated as one
/// degenerate block. rho_a = I/d yields the full projective family.
MeasurementFamily locally_invariant_params(const ComplexMatrix &rho_a, double tol = 1e-10);

using BasisObjective = std::function<double(const ComplexMatrix &basis)>;
using TwoSidedObjective = std::function<double(const ComplexMatrix &basis_a, const ComplexMatrix &basis_b)>;

struct MeasurementOptimum
{
	double value = 0.0;
	ComplexMatrix basis_a;
	ComplexMatrix basis_b;
	RealVector params;
	int evaluations = 0;
	int starts = 0;
	bool iteration_cap_hit = false;
};

MeasurementOptimum optimize(const BasisObjective &objective, const MeasurementFamily &family,
							const OptimizerSettings &settings, std::uint64_t seed);
MeasurementOptimum optimize_two_sided(const TwoSidedObjective &objective, const MeasurementFamily &family_a,
									  const MeasurementFamily &family_b, const OptimizerSettings &settings,
									  std::uint64_t seed);

} // namespace qcorr
