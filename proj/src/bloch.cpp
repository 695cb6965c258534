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

#include "qcorr/bloch.hpp"

#include <array>
#include <cmath>

#include "qcorr/linalg.hpp"

namespace qcorr
{

namespace
{

constexpr int kMaxCachedDim = 9;

// Unnormalized generalized Gell-Mann matrices, ordered so that d = 2 gives
// the Pauli matrices and d = 3 the standard lambda_1..lambda_8: for each
// column c = 1..d-1, the symmetric then antisymmetric pair for every row
// r < c, followed by the c-th diagonal matrix.
std::vector<ComplexMatrix> gell_mann_family(int d)
{
	std::vector<ComplexMatrix> out;
	out.reserve(static_cast<size_t>(d * d - 1));
	const Complex i(0.0, 1.0);
	for (int c = 1; c < d; ++c)
	{
		for (int r = 0; r < c; ++r)
		{
			ComplexMatrix sym = ComplexMatrix::Zero(d, d);
			sym(r, c) = sym(c, r) = 1.0;
			out.push_back(sym);
			ComplexMatrix anti = ComplexMatrix::Zero(d, d);
			anti(r, c) = -i;
			anti(c, r) = i;
			out.push_back(anti);
		}
		ComplexMatrix diag = ComplexMatrix::Zero(d, d);
		const double scale = std::sqrt(2.0 / (c * (c + 1.0)));
		for (int k = 0; k < c; ++k)
			diag(k, k) = scale;
		diag(c, c) = -c * scale;
		out.push_back(diag);
	}
	return out;
}

// B_j = tr_b[m (I (x) Y_j)], a d_a x d_a matrix; t_ij = tr(B_j X_i).
ComplexMatrix contract_b(const ComplexMatrix &m, const ComplexMatrix &y, int d_a, int d_b)
{
	ComplexMatrix out = ComplexMatrix::Zero(d_a, d_a);
	for (int i = 0; i < d_a; ++i)
		for (int j = 0; j < d_a; ++j)
		{
			Complex acc = 0.0;
			for (int k = 0; k < d_b; ++k)
				for (int l = 0; l < d_b; ++l)
					acc += m(i * d_b + k, j * d_b + l) * y(l, k);
			out(i, j) = acc;
		}
	return out;
}

void append_support(const RealVector &v, double tol, IndexSet &out)
{
	for (Eigen::Index k = 0; k < v.size(); ++k)
		if (std::abs(v(k)) > tol)
			out.push_back(static_cast<int>(k));
}

} // namespace

GeneratorBasis basis_generators(int d)
{
	if (d < 2)
		throw ValidationError("basis_generators: dimension must be >= 2, got " + std::to_string(d));
	GeneratorBasis basis;
	basis.dim = d;
	basis.generators = gell_mann_family(d);
	for (auto &g : basis.generators)
		g /= std::sqrt(2.0);
	return basis;
}

const GeneratorBasis &generator_basis(int d)
{
	static const std::array<GeneratorBasis, kMaxCachedDim + 1> cache = [] {
		std::array<GeneratorBasis, kMaxCachedDim + 1> c;
		for (int k = 2; k <= kMaxCachedDim; ++k)
			c[static_cast<size_t>(k)] = basis_generators(k);
		return c;
	}();
	if (d < 2 || d > kMaxCachedDim)
		throw ValidationError("generator_basis: dimension must be in [2, 9], got " + std::to_string(d));
	return cache[static_cast<size_t>(d)];
}

ComplexMatrix pauli(int k)
{
	if (k < 0 || k > 2)
		throw ValidationError("pauli: index must be 0, 1 or 2");
	return generator_basis(2)[k] * std::sqrt(2.0);
}

ComplexMatrix gell_mann(int k)
{
	if (k < 0 || k > 7)
		throw ValidationError("gell_mann: index must be in [0, 7]");
	return generator_basis(3)[k] * std::sqrt(2.0);
}

BlochForm decompose_operator(const ComplexMatrix &m, int d_a, int d_b)
{
	if (m.rows() != d_a * d_b || m.cols() != d_a * d_b)
		throw ValidationError("decompose: operator does not match dims");
	const GeneratorBasis &ga = generator_basis(d_a);
	const GeneratorBasis &gb = generator_basis(d_b);
	BlochForm b;
	b.d_a = d_a;
	b.d_b = d_b;
	b.x.resize(ga.size());
	b.y.resize(gb.size());
	b.t.resize(ga.size(), gb.size());

	const ComplexMatrix m_a = linalg::partial_trace(m, d_a, d_b, Side::B);
	const ComplexMatrix m_b = linalg::partial_trace(m, d_a, d_b, Side::A);
	for (int i = 0; i < ga.size(); ++i)
		b.x(i) = (m_a * ga[i]).trace().real();
	for (int j = 0; j < gb.size(); ++j)
	{
		b.y(j) = (m_b * gb[j]).trace().real();
		const ComplexMatrix bj = contract_b(m, gb[j], d_a, d_b);
		for (int i = 0; i < ga.size(); ++i)
			b.t(i, j) = (bj * ga[i]).trace().real();
	}
	return b;
}

BlochForm decompose(const DensityMatrix &rho)
{
	validate_density(rho.matrix(), rho.d_a(), rho.d_b());
	return decompose_operator(rho.matrix(), rho.d_a(), rho.d_b());
}

namespace
{

ComplexMatrix assemble(const BlochForm &b, bool with_identity, bool with_y)
{
	const GeneratorBasis &ga = generator_basis(b.d_a);
	const GeneratorBasis &gb = generator_basis(b.d_b);
	if (b.x.size() != ga.size() || b.y.size() != gb.size() || b.t.rows() != ga.size() || b.t.cols() != gb.size())
		throw ValidationError("reconstruct: Bloch data lengths do not match dims ("
							  + std::to_string(b.d_a) + "," + std::to_string(b.d_b) + ")");
	const ComplexMatrix id_a = ComplexMatrix::Identity(b.d_a, b.d_a);
	const ComplexMatrix id_b = ComplexMatrix::Identity(b.d_b, b.d_b);

	ComplexMatrix local_a = ComplexMatrix::Zero(b.d_a, b.d_a);
	for (int i = 0; i < ga.size(); ++i)
		local_a += b.x(i) * ga[i];
	ComplexMatrix out = linalg::kron(local_a, id_b / static_cast<double>(b.d_b));
	if (with_identity)
		out += ComplexMatrix::Identity(b.d_a * b.d_b, b.d_a * b.d_b) / static_cast<double>(b.d_a * b.d_b);
	if (with_y)
	{
		ComplexMatrix local_b = ComplexMatrix::Zero(b.d_b, b.d_b);
		for (int j = 0; j < gb.size(); ++j)
			local_b += b.y(j) * gb[j];
		out += linalg::kron(id_a / static_cast<double>(b.d_a), local_b);
	}
	for (int j = 0; j < gb.size(); ++j)
	{
		ComplexMatrix col = ComplexMatrix::Zero(b.d_a, b.d_a);
		for (int i = 0; i < ga.size(); ++i)
			if (b.t(i, j) != 0.0)
				col += b.t(i, j) * ga[i];
		if (!col.isZero(0.0))
			out += linalg::kron(col, gb[j]);
	}
	return out;
}

} // namespace

Reconstruction reconstruct(const BlochForm &b)
{
	Reconstruction r;
	r.d_a = b.d_a;
	r.d_b = b.d_b;
	r.matrix = assemble(b, true, true);
	r.min_eigenvalue = linalg::eigenvalues_hermitian(r.matrix)(0);
	return r;
}

DensityMatrix Reconstruction::state() const { return DensityMatrix::from_matrix(matrix, d_a, d_b); }

ComplexMatrix correlated_part(const BlochForm &b) { return assemble(b, false, false); }

PauliCoordinates to_conventional(const BlochForm &b)
{
	if (b.d_a != 2 || b.d_b != 2)
		throw ValidationError("to_conventional: requires a two-qubit state, got dims ("
							  + std::to_string(b.d_a) + "," + std::to_string(b.d_b) + ")");
	PauliCoordinates p;
	p.x = std::sqrt(2.0) * b.x;
	p.y = std::sqrt(2.0) * b.y;
	p.t = 2.0 * b.t;
	return p;
}

RealMatrix correlation_matrix(const BlochForm &b)
{
	const auto na = b.x.size();
	const auto nb = b.y.size();
	RealMatrix r = RealMatrix::Zero(na + 1, nb + 1);
	r(0, 0) = 1.0 / std::sqrt(static_cast<double>(b.d_a * b.d_b));
	r.block(0, 1, 1, nb) = b.y.transpose();
	r.block(1, 0, na, 1) = b.x;
	r.block(1, 1, na, nb) = b.t;
	return r;
}

SupportPattern support_pattern(const BlochForm &b, double tol)
{
	SupportPattern s;
	s.tolerance = tol;
	append_support(b.x, tol, s.x_support);
	append_support(b.y, tol, s.y_support);
	append_support(b.t.cwiseAbs().rowwise().maxCoeff(), tol, s.t_row_support);
	append_support(b.t.cwiseAbs().colwise().maxCoeff().transpose(), tol, s.t_col_support);
	return s;
}

BlochForm operator+(const BlochForm &l, const BlochForm &r)
{
	if (l.d_a != r.d_a || l.d_b != r.d_b)
		throw ValidationError("BlochForm addition: dims differ");
	return BlochForm{l.d_a, l.d_b, l.x + r.x, l.y + r.y, l.t + r.t};
}

BlochForm operator*(double s, const BlochForm &b) { return BlochForm{b.d_a, b.d_b, s * b.x, s * b.y, s * b.t}; }

} // namespace qcorr
