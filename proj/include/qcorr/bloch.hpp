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

// Bloch / correlation-tensor coordinates of bipartite states.
//
//   rho = I/(d_a d_b) + sum_i x_i X_i (x) I/d_b + sum_j y_j I/d_a (x) Y_j
//         + sum_ij t_ij X_i (x) Y_j
//
// with {I/sqrt(d), X_i} orthonormal under the Hilbert-Schmidt product, so
// x_i = tr[rho (X_i (x) I)], y_j = tr[rho (I (x) Y_j)], t_ij = tr[rho (X_i (x) Y_j)].

#include <Eigen/Core>

#include "qcorr/state.hpp"

namespace qcorr
{

/// Orthonormal traceless Hermitian generators: generalized Gell-Mann
/// matrices divided by sqrt(2). For d = 2 the order is sigma_1, sigma_2,
/// sigma_3; for d = 3 it is lambda_1 ... lambda_8 in the standard listing.
struct GeneratorBasis
{
	int dim = 0;
	std::vector<ComplexMatrix> generators;

	int size() const { return static_cast<int>(generators.size()); }
	const ComplexMatrix &operator[](int k) const { return generators[static_cast<size_t>(k)]; }
};

GeneratorBasis basis_generators(int d);
/// Shared immutable basis for dimension d (built once per d).
const GeneratorBasis &generator_basis(int d);

/// Unnormalized Pauli (d = 2) / Gell-Mann (d = 3) matrix k, zero-based.
ComplexMatrix pauli(int k);
ComplexMatrix gell_mann(int k);

struct BlochForm
{
	int d_a = 0;
	int d_b = 0;
	RealVector x;
	RealVector y;
	RealMatrix t;
};

BlochForm decompose(const DensityMatrix &rho);
/// Same coefficients for an arbitrary operator on C^{d_a} (x) C^{d_b};
/// takes real parts and performs no validation.
BlochForm decompose_operator(const ComplexMatrix &m, int d_a, int d_b);

struct Reconstruction
{
	ComplexMatrix matrix;
	int d_a = 0;
	int d_b = 0;
	double min_eigenvalue = 0.0;

	bool positive(double tol = DensityMatrix::kPositivityTol) const { return min_eigenvalue >= -tol; }
	/// Throws ValidationError if the reconstruction is not a state.
	DensityMatrix state() const;
};

/// Inverse of decompose. Positivity is reported, never repaired.
Reconstruction reconstruct(const BlochForm &b);

/// Hermitian operator x.X (x) I/d_b + sum_ij t_ij X_i (x) Y_j; the part of
/// rho that one-sided measurements on a can disturb.
ComplexMatrix correlated_part(const BlochForm &b);

/// Coordinates in the unnormalized Pauli convention (qubit pairs only):
/// x_sigma = sqrt(2) x, y_sigma = sqrt(2) y, T_sigma = 2 T.
struct PauliCoordinates
{
	Eigen::Vector3d x;
	Eigen::Vector3d y;
	Eigen::Matrix3d t;
};

PauliCoordinates to_conventional(const BlochForm &b);

/// R = [[1/sqrt(d_a d_b), y^t], [x, T]].
RealMatrix correlation_matrix(const BlochForm &b);

struct SupportPattern
{
	IndexSet x_support;
	IndexSet y_support;
	IndexSet t_row_support;
	IndexSet t_col_support;
	double tolerance = 0.0;
};

SupportPattern support_pattern(const BlochForm &b, double tol);

BlochForm operator+(const BlochForm &l, const BlochForm &r);
BlochForm operator*(double s, const BlochForm &b);

} // namespace qcorr
