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

#include "qcorr/state.hpp"

#include <sstream>

#include "qcorr/linalg.hpp"

namespace qcorr
{

void validate_density(const ComplexMatrix &m, int d_a, int d_b)
{
	if (d_a < 2 || d_b < 2)
		throw ValidationError("state dims must be >= 2, got (" + std::to_string(d_a) + ","
							  + std::to_string(d_b) + ")");
	if (m.rows() != d_a * d_b || m.cols() != d_a * d_b)
	{
		std::ostringstream os;
		os << "dimension invariant violated: matrix is " << m.rows() << "x" << m.cols() << " but dims ("
		   << d_a << "," << d_b << ") need " << d_a * d_b << "x" << d_a * d_b;
		throw ValidationError(os.str());
	}
	if (!m.allFinite())
		throw ValidationError("finiteness invariant violated: matrix has non-finite entries");
	if (!linalg::is_hermitian(m))
		throw ValidationError("Hermiticity invariant violated: ||rho - rho^dagger|| = "
							  + std::to_string(linalg::hermitian_defect(m)));
	const Complex tr = m.trace();
	if (std::abs(tr - Complex(1.0)) > DensityMatrix::kTraceTol)
	{
		std::ostringstream os;
		os.precision(12);
		os << "unit-trace invariant violated: tr(rho) = " << tr.real();
		if (tr.imag() != 0.0)
			os << (tr.imag() < 0 ? " - " : " + ") << std::abs(tr.imag()) << "i";
		throw ValidationError(os.str());
	}
	const RealVector ev = linalg::eigenvalues_hermitian((m + m.adjoint()) / 2.0);
	if (ev(0) < -DensityMatrix::kPositivityTol)
	{
		std::ostringstream os;
		os.precision(12);
		os << "positivity invariant violated: minimum eigenvalue " << ev(0);
		throw ValidationError(os.str());
	}
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, int d_a, int d_b)
{
	validate_density(m, d_a, d_b);
	ComplexMatrix sym = (m + m.adjoint()) / 2.0;
	return DensityMatrix(std::move(sym), d_a, d_b);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, int d_a, int d_b)
{
	return DensityMatrix(std::move(m), d_a, d_b);
}

ComplexMatrix DensityMatrix::reduced(Side kept) const
{
	return linalg::partial_trace(rho_, d_a_, d_b_, kept == Side::A ? Side::B : Side::A);
}

DensityMatrix DensityMatrix::swapped() const
{
	const ComplexMatrix s = swap_operator(d_a_, d_b_);
	return DensityMatrix(s * rho_ * s.adjoint(), d_b_, d_a_);
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

ComplexMatrix swap_operator(int d_a, int d_b)
{
	// maps |i>_a |j>_b to |j>_b |i>_a
	const int n = d_a * d_b;
	ComplexMatrix s = ComplexMatrix::Zero(n, n);
	for (int i = 0; i < d_a; ++i)
		for (int j = 0; j < d_b; ++j)
			s(j * d_a + i, i * d_b + j) = 1.0;
	return s;
}

DensityMatrix pure_state(const ComplexVector &psi, int d_a, int d_b)
{
	if (psi.size() != d_a * d_b)
		throw ValidationError("pure_state: vector length does not match dims");
	const double n = psi.norm();
	if (n == 0.0)
		throw ValidationError("pure_state: zero vector");
	const ComplexVector u = psi / n;
	return DensityMatrix::unchecked(u * u.adjoint(), d_a, d_b);
}

DensityMatrix product_state(const ComplexMatrix &rho_a, const ComplexMatrix &rho_b)
{
	return DensityMatrix::from_matrix(linalg::kron(rho_a, rho_b), static_cast<int>(rho_a.rows()),
									  static_cast<int>(rho_b.rows()));
}

DensityMatrix maximally_mixed(int d_a, int d_b)
{
	const int n = d_a * d_b;
	return DensityMatrix::unchecked(ComplexMatrix::Identity(n, n) / static_cast<double>(n), d_a, d_b);
}

DensityMatrix bell_phi_plus()
{
	ComplexVector psi = ComplexVector::Zero(4);
	psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
	return pure_state(psi, 2, 2);
}

DensityMatrix werner(double p)
{
	if (p < -1.0 / 3.0 - 1e-12 || p > 1.0 + 1e-12)
		throw ValidationError("werner: p must lie in [-1/3, 1]");
	ComplexMatrix m = p * bell_phi_plus().matrix() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
	return DensityMatrix::unchecked(std::move(m), 2, 2);
}

DensityMatrix local_unitary(const DensityMatrix &rho, const ComplexMatrix &u, const ComplexMatrix &v)
{
	if (u.rows() != rho.d_a() || v.rows() != rho.d_b())
		throw ValidationError("local_unitary: unitary dims do not match the state");
	const ComplexMatrix w = linalg::kron(u, v);
	ComplexMatrix out = w * rho.matrix() * w.adjoint();
	return DensityMatrix::unchecked((out + out.adjoint()) / 2.0, rho.d_a(), rho.d_b());
}

} // namespace qcorr
