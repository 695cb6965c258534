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

#include "qcorr/types.hpp"

namespace qcorr
{

/// A bipartite density matrix on C^{d_a} (x) C^{d_b}.
///
/// Values built through `from_matrix` are Hermitian, unit trace and positive
/// semidefinite to 1e-10. `unchecked` skips validation for callers that
/// produce states by construction (channel outputs, measurement outputs).
class DensityMatrix
{
public:
	static constexpr double kTraceTol = 1e-10;
	static constexpr double kPositivityTol = 1e-10;

	DensityMatrix() = default;

	static DensityMatrix from_matrix(ComplexMatrix m, int d_a, int d_b);
	static DensityMatrix unchecked(ComplexMatrix m, int d_a, int d_b);

	const ComplexMatrix &matrix() const { return rho_; }
	int d_a() const { return d_a_; }
	int d_b() const { return d_b_; }
	int dim() const { return d_a_ * d_b_; }

	/// Reduced state of the `kept` subsystem.
	ComplexMatrix reduced(Side kept) const;
	/// The same state with the subsystems exchanged.
	DensityMatrix swapped() const;

	double purity() const;

private:
	DensityMatrix(ComplexMatrix m, int d_a, int d_b) : rho_(std::move(m)), d_a_(d_a), d_b_(d_b) {}

	ComplexMatrix rho_;
	int d_a_ = 0;
	int d_b_ = 0;
};

/// Throws ValidationError naming the violated invariant.
void validate_density(const ComplexMatrix &m, int d_a, int d_b);

ComplexMatrix swap_operator(int d_a, int d_b);

DensityMatrix pure_state(const ComplexVector &psi, int d_a, int d_b);
DensityMatrix product_state(const ComplexMatrix &rho_a, const ComplexMatrix &rho_b);
DensityMatrix maximally_mixed(int d_a, int d_b);
/// |Phi+> = (|00> + |11>)/sqrt(2).
DensityMatrix bell_phi_plus();
/// p |Phi+><Phi+| + (1 - p) I/4.
DensityMatrix werner(double p);
/// (U (x) V) rho (U (x) V)^dagger.
DensityMatrix local_unitary(const DensityMatrix &rho, const ComplexMatrix &u, const ComplexMatrix &v);

} // namespace qcorr
