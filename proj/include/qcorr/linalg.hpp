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

// Small dense kernels (dimension <= 9) shared by every other module:
// tensor products, partial traces, Hermitian spectra, Schatten norms.

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcorr/types.hpp"

namespace qcorr::linalg
{

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b)
{
	using Scalar = typename DerivedA::Scalar;
	Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
	for (Eigen::Index i = 0; i < a.rows(); ++i)
		for (Eigen::Index j = 0; j < a.cols(); ++j)
			out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
	return out;
}

/// Traces out `traced` from an operator on H_a (x) H_b.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived> &m, int d_a, int d_b, Side traced)
{
	using Scalar = typename Derived::Scalar;
	using Out = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
	if (d_a < 1 || d_b < 1 || m.rows() != d_a * d_b || m.cols() != d_a * d_b)
		throw ValidationError("partial_trace: matrix is " + std::to_string(m.rows()) + "x"
							  + std::to_string(m.cols()) + ", expected " + std::to_string(d_a * d_b)
							  + " square for dims (" + std::to_string(d_a) + "," + std::to_string(d_b) + ")");
	if (traced == Side::B)
	{
		Out out = Out::Zero(d_a, d_a);
		for (int i = 0; i < d_a; ++i)
			for (int j = 0; j < d_a; ++j)
				for (int k = 0; k < d_b; ++k)
					out(i, j) += m(i * d_b + k, j * d_b + k);
		return out;
	}
	Out out = Out::Zero(d_b, d_b);
	for (int i = 0; i < d_b; ++i)
		for (int j = 0; j < d_b; ++j)
			for (int k = 0; k < d_a; ++k)
				out(i, j) += m(k * d_b + i, k * d_b + j);
	return out;
}

template <typename Derived>
auto hermitian_defect(const Eigen::MatrixBase<Derived> &h)
{
	return (h - h.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived> &h, double rel_tol = kHermitianTol)
{
	if (h.rows() != h.cols())
		return false;
	return hermitian_defect(h) <= rel_tol * std::max(1.0, static_cast<double>(h.norm()));
}

template <typename Real>
struct HermitianEig
{
	RVectorT<Real> eigenvalues; // ascending
	CMatrixT<Real> eigenvectors; // columns
};

template <typename Derived>
auto eig_hermitian(const Eigen::MatrixBase<Derived> &h)
{
	using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
	if (h.rows() != h.cols())
		throw ValidationError("eig_hermitian: matrix is not square");
	if (hermitian_defect(h) > kHermitianTol * std::max<Real>(Real(1), h.norm()))
		throw ValidationError("eig_hermitian: matrix is not Hermitian");
	const CMatrixT<Real> sym = (h + h.adjoint()) / Real(2);
	Eigen::SelfAdjointEigenSolver<CMatrixT<Real>> solver(sym);
	if (solver.info() != Eigen::Success)
		throw InternalError("eig_hermitian: eigensolver did not converge");
	return HermitianEig<Real>{solver.eigenvalues(), solver.eigenvectors()};
}

/// Eigenvalues only, skipping the Hermiticity check (caller guarantees it).
template <typename Derived>
auto eigenvalues_hermitian(const Eigen::MatrixBase<Derived> &h)
{
	using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
	using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
	Eigen::SelfAdjointEigenSolver<Mat> solver(h.eval(), Eigen::EigenvaluesOnly);
	return RVectorT<Real>(solver.eigenvalues());
}

template <typename Derived>
auto singular_values(const Eigen::MatrixBase<Derived> &m)
{
	using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
	Eigen::JacobiSVD<Mat> svd(m.eval());
	return svd.singularValues().eval();
}

/// ||M||_p^p for p in {1, 2}.
template <typename Derived>
auto schatten_power(const Eigen::MatrixBase<Derived> &m, int p)
{
	if (p == 2)
		return m.squaredNorm();
	if (p == 1)
		return singular_values(m).sum();
	throw ValidationError("schatten_norm: p must be 1 or 2, got " + std::to_string(p));
}

template <typename Derived>
auto schatten_norm(const Eigen::MatrixBase<Derived> &m, int p)
{
	if (p == 2)
		return m.norm();
	return schatten_power(m, p);
}

/// ||H||_p^p for Hermitian H; uses |eigenvalues| instead of an SVD.
template <typename Derived>
auto schatten_power_hermitian(const Eigen::MatrixBase<Derived> &h, int p)
{
	if (p == 2)
		return h.squaredNorm();
	if (p != 1)
		throw ValidationError("schatten_norm: p must be 1 or 2, got " + std::to_string(p));
	return eigenvalues_hermitian(h).cwiseAbs().sum();
}

/// Principal square root of a PSD matrix. Eigenvalues in [-kPsdTol, 0) are
/// clamped to zero; anything more negative is rejected.
template <typename Derived>
auto sqrt_psd(const Eigen::MatrixBase<Derived> &m)
{
	using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
	auto eig = eig_hermitian(m);
	if (eig.eigenvalues.size() > 0 && eig.eigenvalues(0) < -kPsdTol)
		throw ValidationError("matrix_sqrt_psd: eigenvalue " + std::to_string(eig.eigenvalues(0))
							  + " is below -1e-10");
	// eigenvalues at rounding level are zeros; their square roots would be
	// ~1e-8 and spoil exact cases such as sqrt(P) = P
	const Real top = eig.eigenvalues.size() > 0 ? eig.eigenvalues.cwiseAbs().maxCoeff() : Real(0);
	const Real cutoff = Real(16) * static_cast<Real>(m.rows()) * Eigen::NumTraits<Real>::epsilon() * top;
	const RVectorT<Real> roots =
		eig.eigenvalues.unaryExpr([cutoff](Real v) { return v <= cutoff ? Real(0) : v; }).cwiseSqrt();
	CMatrixT<Real> out = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
	return CMatrixT<Real>((out + out.adjoint()) / Real(2));
}

} // namespace qcorr::linalg
