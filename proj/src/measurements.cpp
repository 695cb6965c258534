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

#include "qcorr/measurements.hpp"

#include <cmath>
#include <numbers>

#include "qcorr/linalg.hpp"

namespace qcorr
{

namespace
{

constexpr double kPi = std::numbers::pi;

int block_parameters(int size)
{
	switch (size)
	{
	case 1:
		return 0;
	case 2:
		return 2;
	case 3:
		return 6;
	default:
		throw ValidationError("measurement blocks larger than 3 are not supported");
	}
}

inline Complex phase(double a) { return std::polar(1.0, a); }

} // namespace

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const ComplexMatrix &basis)
{
	ProjectiveMeasurement m;
	m.dim = static_cast<int>(basis.rows());
	for (Eigen::Index k = 0; k < basis.cols(); ++k)
		m.projectors.push_back(basis.col(k) * basis.col(k).adjoint());
	return m;
}

double ProjectiveMeasurement::residual() const
{
	double worst = 0.0;
	ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
	for (size_t k = 0; k < projectors.size(); ++k)
	{
		const auto &p = projectors[k];
		sum += p;
		worst = std::max(worst, (p * p - p).norm());
		worst = std::max(worst, (p - p.adjoint()).norm());
		for (size_t l = k + 1; l < projectors.size(); ++l)
			worst = std::max(worst, (p * projectors[l]).norm());
	}
	return std::max(worst, (sum - ComplexMatrix::Identity(dim, dim)).norm());
}

ComplexMatrix qubit_basis(double theta, double phi)
{
	const double c = std::cos(theta / 2);
	const double s = std::sin(theta / 2);
	ComplexMatrix u(2, 2);
	u(0, 0) = c;
	u(1, 0) = phase(phi) * s;
	u(0, 1) = -phase(-phi) * s;
	u(1, 1) = c;
	return u;
}

ComplexMatrix qutrit_basis(const double *angles)
{
	const double c12 = std::cos(angles[0]), s12 = std::sin(angles[0]);
	const double c13 = std::cos(angles[1]), s13 = std::sin(angles[1]);
	const double c23 = std::cos(angles[2]), s23 = std::sin(angles[2]);
	ComplexMatrix r12 = ComplexMatrix::Identity(3, 3);
	r12(0, 0) = r12(1, 1) = c12;
	r12(0, 1) = s12;
	r12(1, 0) = -s12;
	ComplexMatrix u13 = ComplexMatrix::Identity(3, 3);
	u13(0, 0) = u13(2, 2) = c13;
	u13(0, 2) = s13 * phase(-angles[3]);
	u13(2, 0) = -s13 * phase(angles[3]);
	ComplexMatrix r23 = ComplexMatrix::Identity(3, 3);
	r23(1, 1) = r23(2, 2) = c23;
	r23(1, 2) = s23;
	r23(2, 1) = -s23;
	ComplexMatrix out = r23 * u13 * r12;
	out.row(1) *= phase(angles[4]);
	out.row(2) *= phase(angles[5]);
	return out;
}

ComplexMatrix to_basis(const MeasurementParams &p)
{
	if (p.dim == 2)
	{
		if (p.angles.size() != 2)
			throw ValidationError("qubit measurement needs 2 angles, got " + std::to_string(p.angles.size()));
		return qubit_basis(p.angles(0), p.angles(1));
	}
	if (p.dim == 3)
	{
		if (p.angles.size() != 8)
			throw ValidationError("qutrit measurement needs 8 angles, got " + std::to_string(p.angles.size()));
		ComplexMatrix u = qutrit_basis(p.angles.data());
		u.col(1) *= phase(p.angles(6));
		u.col(2) *= phase(p.angles(7));
		return u;
	}
	throw ValidationError("measurement parametrization supports dim 2 or 3, got " + std::to_string(p.dim));
}

ProjectiveMeasurement to_measurement(const MeasurementParams &p) { return ProjectiveMeasurement::from_basis(to_basis(p)); }

namespace
{

ComplexMatrix rotation(int d_a, int d_b, const ComplexMatrix &basis_a, const ComplexMatrix &basis_b)
{
	const ComplexMatrix ua = basis_a.size() ? basis_a : ComplexMatrix::Identity(d_a, d_a);
	const ComplexMatrix ub = basis_b.size() ? basis_b : ComplexMatrix::Identity(d_b, d_b);
	return linalg::kron(ua, ub);
}

void check_sides(const ComplexMatrix &op, int d_a, int d_b, const ComplexMatrix &basis_a, const ComplexMatrix &basis_b)
{
	if (op.rows() != d_a * d_b || op.cols() != d_a * d_b)
		throw ValidationError("measure: operator does not match dims");
	if (basis_a.size() == 0 && basis_b.size() == 0)
		throw ValidationError("measure: at least one side must be measured");
	if ((basis_a.size() && basis_a.rows() != d_a) || (basis_b.size() && basis_b.rows() != d_b))
		throw ValidationError("measure: measurement dimension does not match the subsystem");
}

} // namespace

ComplexMatrix disturbance_in_basis(const ComplexMatrix &op, int d_a, int d_b, const ComplexMatrix &basis_a,
								   const ComplexMatrix &basis_b)
{
	check_sides(op, d_a, d_b, basis_a, basis_b);
	const ComplexMatrix w = rotation(d_a, d_b, basis_a, basis_b);
	ComplexMatrix rotated = w.adjoint() * op * w;
	const bool on_a = basis_a.size() != 0;
	const bool on_b = basis_b.size() != 0;
	// zero the entries the measurement keeps: equal a-index (and/or b-index)
	for (int i = 0; i < d_a; ++i)
		for (int k = 0; k < d_b; ++k)
			for (int j = 0; j < d_a; ++j)
				for (int l = 0; l < d_b; ++l)
				{
					const bool kept = (!on_a || i == j) && (!on_b || k == l);
					if (kept)
						rotated(i * d_b + k, j * d_b + l) = 0.0;
				}
	return rotated;
}

ComplexMatrix measure_operator(const ComplexMatrix &op, int d_a, int d_b, const ComplexMatrix &basis_a,
							   const ComplexMatrix &basis_b)
{
	const ComplexMatrix w = rotation(d_a, d_b, basis_a, basis_b);
	const ComplexMatrix off = disturbance_in_basis(op, d_a, d_b, basis_a, basis_b);
	return op - w * off * w.adjoint();
}

DensityMatrix measure_state(const DensityMatrix &rho, const std::optional<ProjectiveMeasurement> &m_a,
							const std::optional<ProjectiveMeasurement> &m_b)
{
	if (!m_a && !m_b)
		throw ValidationError("measure_state: at least one measurement is required");
	if ((m_a && m_a->dim != rho.d_a()) || (m_b && m_b->dim != rho.d_b()))
		throw ValidationError("measure_state: measurement dimension does not match the state");
	const ComplexMatrix id_a = ComplexMatrix::Identity(rho.d_a(), rho.d_a());
	const ComplexMatrix id_b = ComplexMatrix::Identity(rho.d_b(), rho.d_b());
	const std::vector<ComplexMatrix> pa = m_a ? m_a->projectors : std::vector<ComplexMatrix>{id_a};
	const std::vector<ComplexMatrix> pb = m_b ? m_b->projectors : std::vector<ComplexMatrix>{id_b};
	ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
	for (const auto &a : pa)
		for (const auto &b : pb)
		{
			const ComplexMatrix p = linalg::kron(a, b);
			out.noalias() += p * rho.matrix() * p;
		}
	return DensityMatrix::unchecked((out + out.adjoint()) / 2.0, rho.d_a(), rho.d_b());
}

MeasurementFamily::MeasurementFamily(ComplexMatrix frame, std::vector<Block> blocks)
	: frame_(std::move(frame)), blocks_(std::move(blocks))
{
	int covered = 0;
	for (const auto &b : blocks_)
	{
		if (b.offset != covered || b.size < 1)
			throw ValidationError("MeasurementFamily: blocks must tile the dimension in order");
		block_parameters(b.size);
		covered += b.size;
	}
	if (covered != frame_.rows() || frame_.rows() != frame_.cols())
		throw ValidationError("MeasurementFamily: blocks do not cover the frame");
}

MeasurementFamily MeasurementFamily::projective(int d)
{
	return MeasurementFamily(ComplexMatrix::Identity(d, d), {Block{0, d}});
}

MeasurementFamily MeasurementFamily::fixed(const ComplexMatrix &basis)
{
	std::vector<Block> blocks;
	for (int k = 0; k < basis.rows(); ++k)
		blocks.push_back(Block{k, 1});
	return MeasurementFamily(basis, std::move(blocks));
}

int MeasurementFamily::num_parameters() const
{
	int n = 0;
	for (const auto &b : blocks_)
		n += block_parameters(b.size);
	return n;
}

std::vector<ParameterRange> MeasurementFamily::ranges() const
{
	std::vector<ParameterRange> out;
	for (const auto &b : blocks_)
	{
		if (b.size == 2)
		{
			out.push_back({0.0, kPi, false});
			out.push_back({0.0, 2 * kPi, true});
		}
		else if (b.size == 3)
		{
			for (int k = 0; k < 3; ++k)
				out.push_back({0.0, kPi, false});
			for (int k = 0; k < 3; ++k)
				out.push_back({0.0, 2 * kPi, true});
		}
	}
	return out;
}

ComplexMatrix MeasurementFamily::basis(const RealVector &params) const
{
	if (params.size() != num_parameters())
		throw ValidationError("MeasurementFamily: expected " + std::to_string(num_parameters()) + " parameters, got "
							  + std::to_string(params.size()));
	if (params.size() == 0)
		return frame_;
	ComplexMatrix local = ComplexMatrix::Identity(dim(), dim());
	int p = 0;
	for (const auto &b : blocks_)
	{
		if (b.size == 2)
			local.block(b.offset, b.offset, 2, 2) = qubit_basis(params(p), params(p + 1));
		else if (b.size == 3)
			local.block(b.offset, b.offset, 3, 3) = qutrit_basis(params.data() + p);
		p += block_parameters(b.size);
	}
	return frame_ * local;
}

MeasurementFamily locally_invariant_params(const ComplexMatrix &rho_a, double tol)
{
	const auto eig = linalg::eig_hermitian(rho_a);
	std::vector<MeasurementFamily::Block> blocks;
	const int d = static_cast<int>(eig.eigenvalues.size());
	int start = 0;
	for (int k = 1; k <= d; ++k)
		if (k == d || eig.eigenvalues(k) - eig.eigenvalues(k - 1) > tol)
		{
			blocks.push_back({start, k - start});
			start = k;
		}
	return MeasurementFamily(eig.eigenvectors, std::move(blocks));
}

MeasurementOptimum optimize(const BasisObjective &objective, const MeasurementFamily &family,
							const OptimizerSettings &settings, std::uint64_t seed)
{
	const auto res = optimize_parameters([&](const RealVector &p) { return objective(family.basis(p)); },
										 family.ranges(), settings, seed);
	MeasurementOptimum out;
	out.value = res.value;
	out.params = res.params;
	out.basis_a = family.basis(res.params);
	out.evaluations = res.evaluations;
	out.starts = res.starts;
	out.iteration_cap_hit = res.iteration_cap_hit;
	return out;
}

MeasurementOptimum optimize_two_sided(const TwoSidedObjective &objective, const MeasurementFamily &family_a,
									  const MeasurementFamily &family_b, const OptimizerSettings &settings,
									  std::uint64_t seed)
{
	const int na = family_a.num_parameters();
	const int nb = family_b.num_parameters();
	auto ranges = family_a.ranges();
	const auto rb = family_b.ranges();
	ranges.insert(ranges.end(), rb.begin(), rb.end());
	const auto split = [&](const RealVector &p) {
		return std::pair{family_a.basis(p.head(na)), family_b.basis(p.tail(nb))};
	};
	const auto res = optimize_parameters(
		[&](const RealVector &p) {
			const auto [ua, ub] = split(p);
			return objective(ua, ub);
		},
		ranges, settings, seed);
	MeasurementOptimum out;
	out.value = res.value;
	out.params = res.params;
	std::tie(out.basis_a, out.basis_b) = split(res.params);
	out.evaluations = res.evaluations;
	out.starts = res.starts;
	out.iteration_cap_hit = res.iteration_cap_hit;
	return out;
}

} // namespace qcorr
