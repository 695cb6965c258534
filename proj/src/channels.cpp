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

#include "qcorr/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcorr/bloch.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr
{

namespace
{

std::string fmt(double v)
{
	std::ostringstream os;
	os.precision(12);
	os << v;
	return os.str();
}

void require_range(const char *what, double v, double lo, double hi)
{
	if (!(v >= lo - 1e-12 && v <= hi + 1e-12))
		throw ParameterOutOfRange(std::string(what) + " = " + fmt(v) + " is outside [" + fmt(lo) + ", "
								  + fmt(hi) + "]");
}

double clamp_weight(double eps, int k)
{
	if (eps < -kEpsilonClamp)
		throw InfeasibleScaling("requested scaling vector is not CPTP-realizable: weight eps_"
								+ std::to_string(k) + " = " + fmt(eps) + " < 0");
	return std::max(eps, 0.0);
}

// Drops exactly-zero Kraus operators so constructor outputs stay minimal.
std::vector<ComplexMatrix> weighted(const std::vector<std::pair<double, ComplexMatrix>> &terms)
{
	std::vector<ComplexMatrix> out;
	for (const auto &[w, m] : terms)
		if (w > 0.0)
			out.push_back(std::sqrt(w) * m);
	if (out.empty())
		throw InternalError("constructor produced an empty Kraus list");
	return out;
}

} // namespace

double KrausChannel::completeness_residual() const
{
	ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
	for (const auto &e : kraus_)
		sum += e.adjoint() * e;
	return (sum - ComplexMatrix::Identity(dim_, dim_)).norm();
}

double KrausChannel::choi_min_eigenvalue() const
{
	const int d = dim_;
	ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
	for (int i = 0; i < d; ++i)
		for (int j = 0; j < d; ++j)
		{
			ComplexMatrix eij = ComplexMatrix::Zero(d, d);
			eij(i, j) = 1.0;
			choi.block(i * d, j * d, d, d) = qcorr::apply(*this, eij);
		}
	return linalg::eigenvalues_hermitian((choi + choi.adjoint()) / 2.0)(0);
}

bool KrausChannel::is_identity(double tol) const
{
	// S^dagger fixes I always; fixing every generator pins the whole map.
	const GeneratorBasis &basis = generator_basis(dim_);
	for (int k = 0; k < basis.size(); ++k)
		if ((adjoint_apply(*this, basis[k]) - basis[k]).norm() > tol)
			return false;
	return true;
}

KrausChannel KrausChannel::with_label(std::string label) const
{
	KrausChannel out = *this;
	out.label_ = std::move(label);
	return out;
}

KrausChannel make_channel(std::vector<ComplexMatrix> kraus, bool choi_check)
{
	if (kraus.empty())
		throw ValidationError("make_channel: Kraus list is empty");
	const auto d = kraus.front().rows();
	for (const auto &e : kraus)
	{
		if (e.rows() != e.cols() || e.rows() != d)
			throw ValidationError("make_channel: Kraus operators must be square and of equal dimension");
		if (!e.allFinite())
			throw ValidationError("make_channel: Kraus operator has non-finite entries");
	}
	if (d < 2)
		throw ValidationError("make_channel: dimension must be >= 2");
	KrausChannel ch;
	ch.dim_ = static_cast<int>(d);
	ch.kraus_ = std::move(kraus);
	const double residual = ch.completeness_residual();
	if (residual > kCompletenessTol)
		throw NotTracePreserving("not trace-preserving: ||sum E^dagger E - I|| = " + fmt(residual));
	if (choi_check)
	{
		const double lmin = ch.choi_min_eigenvalue();
		if (lmin < -1e-10)
			throw ValidationError("Choi matrix is not positive semidefinite: min eigenvalue " + fmt(lmin));
	}
	return ch;
}

KrausChannel identity_channel(int d)
{
	return make_channel({ComplexMatrix::Identity(d, d)}).with_label("id:d=" + std::to_string(d));
}

LocalChannel tensor(const KrausChannel &a, const KrausChannel &b) { return LocalChannel{a, b}; }

LocalChannel one_sided(const KrausChannel &ch, Side side, int other_dim)
{
	if (side == Side::A)
		return LocalChannel{ch, identity_channel(other_dim)};
	return LocalChannel{identity_channel(other_dim), ch};
}

ComplexMatrix apply(const KrausChannel &ch, const ComplexMatrix &rho)
{
	if (rho.rows() != ch.dim() || rho.cols() != ch.dim())
		throw ValidationError("apply: operator dimension does not match the channel");
	ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
	for (const auto &e : ch.kraus())
		out.noalias() += e * rho * e.adjoint();
	return out;
}

DensityMatrix apply(const LocalChannel &ch, const DensityMatrix &rho)
{
	if (ch.side_a.dim() != rho.d_a() || ch.side_b.dim() != rho.d_b())
		throw ValidationError("apply: channel dims (" + std::to_string(ch.side_a.dim()) + ","
							  + std::to_string(ch.side_b.dim()) + ") do not match state dims ("
							  + std::to_string(rho.d_a()) + "," + std::to_string(rho.d_b()) + ")");
	ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
	for (const auto &ea : ch.side_a.kraus())
		for (const auto &eb : ch.side_b.kraus())
		{
			const ComplexMatrix e = linalg::kron(ea, eb);
			out.noalias() += e * rho.matrix() * e.adjoint();
		}
	return DensityMatrix::unchecked((out + out.adjoint()) / 2.0, rho.d_a(), rho.d_b());
}

ComplexMatrix adjoint_apply(const KrausChannel &ch, const ComplexMatrix &a)
{
	if (a.rows() != ch.dim() || a.cols() != ch.dim())
		throw ValidationError("adjoint_apply: operator dimension does not match the channel");
	ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
	for (const auto &e : ch.kraus())
		out.noalias() += e.adjoint() * a * e;
	return out;
}

ScalingProfile scaling_profile(const KrausChannel &ch)
{
	const GeneratorBasis &basis = generator_basis(ch.dim());
	ScalingProfile prof;
	prof.dim = ch.dim();
	prof.factors.resize(static_cast<size_t>(basis.size()));
	prof.residuals.resize(static_cast<size_t>(basis.size()));
	for (int k = 0; k < basis.size(); ++k)
	{
		const ComplexMatrix image = adjoint_apply(ch, basis[k]);
		// orthonormal projection onto G_k
		const double q = (basis[k] * image).trace().real();
		const double residual = (image - q * basis[k]).norm();
		prof.residuals[static_cast<size_t>(k)] = residual;
		if (residual > kScalingTol)
			continue;
		prof.factors[static_cast<size_t>(k)] = q;
		bool placed = false;
		for (auto &g : prof.groups)
			if (std::abs(g.factor - q) <= kFactorGroupTol)
			{
				g.indices.push_back(k);
				placed = true;
				break;
			}
		if (!placed)
			prof.groups.push_back(FactorGroup{q, {k}});
	}
	return prof;
}

ScalingProfile identity_profile(int d)
{
	ScalingProfile prof;
	prof.dim = d;
	const int n = d * d - 1;
	prof.factors.assign(static_cast<size_t>(n), 1.0);
	prof.residuals.assign(static_cast<size_t>(n), 0.0);
	FactorGroup g{1.0, {}};
	for (int k = 0; k < n; ++k)
		g.indices.push_back(k);
	prof.groups.push_back(std::move(g));
	return prof;
}

KrausChannel depolarizing(int d, double q)
{
	if (d < 2)
		throw ParameterOutOfRange("depolarizing: dimension must be >= 2");
	require_range("depolarizing q", q, -1.0 / (d * d - 1.0), 1.0);
	// sum_k G_k A G_k = tr(A) I - A/d over the orthonormal generators, so
	// alpha A + beta sum_k G_k A G_k = q A + (1 - q) tr(A) I/d.
	const double beta = (1.0 - q) / d;
	const double alpha = q + beta / d;
	std::vector<std::pair<double, ComplexMatrix>> terms{{std::max(alpha, 0.0), ComplexMatrix::Identity(d, d)}};
	const GeneratorBasis &basis = generator_basis(d);
	for (int k = 0; k < basis.size(); ++k)
		terms.emplace_back(beta, basis[k]);
	return make_channel(weighted(terms)).with_label("depol:d=" + std::to_string(d) + ",q=" + fmt(q));
}

std::array<double, 4> pauli_weights(double q1, double q2, double q3)
{
	const std::array<double, 4> raw{(1 + q1 + q2 + q3) / 4.0, (1 + q1 - q2 - q3) / 4.0, (1 - q1 + q2 - q3) / 4.0,
									(1 - q1 - q2 + q3) / 4.0};
	std::array<double, 4> out{};
	for (int k = 0; k < 4; ++k)
		out[static_cast<size_t>(k)] = clamp_weight(raw[static_cast<size_t>(k)], k);
	return out;
}

KrausChannel pauli_from_q(double q1, double q2, double q3)
{
	const auto eps = pauli_weights(q1, q2, q3);
	std::vector<std::pair<double, ComplexMatrix>> terms{{eps[0], ComplexMatrix::Identity(2, 2)}};
	for (int k = 0; k < 3; ++k)
		terms.emplace_back(eps[static_cast<size_t>(k + 1)], pauli(k));
	return make_channel(weighted(terms))
		.with_label("pauli:q1=" + fmt(q1) + ",q2=" + fmt(q2) + ",q3=" + fmt(q3));
}

KrausChannel bit_flip(double q)
{
	require_range("bit flip q", q, -1.0, 1.0);
	return pauli_from_q(1.0, q, q).with_label("bitflip:q=" + fmt(q));
}

KrausChannel bit_phase_flip(double q)
{
	require_range("bit-phase flip q", q, -1.0, 1.0);
	return pauli_from_q(q, 1.0, q).with_label("bitphaseflip:q=" + fmt(q));
}

KrausChannel phase_flip(double q)
{
	require_range("phase flip q", q, -1.0, 1.0);
	return pauli_from_q(q, q, 1.0).with_label("phaseflip:q=" + fmt(q));
}

KrausChannel gad(double q, double eta)
{
	require_range("gad q", q, 0.0, 1.0);
	require_range("gad eta", eta, 0.0, 1.0);
	q = std::clamp(q, 0.0, 1.0);
	eta = std::clamp(eta, 0.0, 1.0);
	const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
	const ComplexMatrix s3 = pauli(2);
	ComplexMatrix lower = ComplexMatrix::Zero(2, 2); // sigma_- = |1><0|
	lower(1, 0) = 1.0;
	const ComplexMatrix raise = lower.transpose(); // sigma_+
	const double damp = std::sqrt(1.0 - q * q);
	std::vector<ComplexMatrix> kraus;
	kraus.push_back(0.5 * std::sqrt(eta) * ((1 + q) * id - (1 - q) * s3));
	kraus.push_back(0.5 * std::sqrt(1 - eta) * ((1 + q) * id + (1 - q) * s3));
	kraus.push_back(std::sqrt(eta) * damp * lower);
	kraus.push_back(std::sqrt(1 - eta) * damp * raise);
	return make_channel(std::move(kraus)).with_label("gad:q=" + fmt(q) + ",eta=" + fmt(eta));
}

std::array<double, 9> gellmann_weights(const RealVector &q)
{
	if (q.size() != 8)
		throw ValidationError("gellmann_from_q: expected 8 scaling factors, got " + std::to_string(q.size()));
	const double r1 = (q(0) + q(1) + q(2)) - (q(5) + q(6) + q(7));
	const double r2 = (q(3) + q(4)) - (q(5) + q(6));
	if (std::abs(r1) > 1e-10 || std::abs(r2) > 1e-10)
		throw ScalingConstraintViolation("Gell-Mann scaling vector violates q1+q2+q3 = q6+q7+q8 (residual "
										 + fmt(r1) + ") or q4+q5 = q6+q7 (residual " + fmt(r2) + ")");
	const double common = -3 * q(5) - 3 * q(6) - 2 * q(7);
	const std::array<double, 9> raw{
		(1 + 3 * q(5) + 3 * q(6) + 2 * q(7)) / 9.0,
		(2 + 6 * q(0) + common) / 12.0,
		(2 + 6 * q(1) + common) / 12.0,
		(2 + 6 * q(2) + common) / 12.0,
		(2 + 3 * q(3) - 3 * q(4) - 2 * q(7)) / 12.0,
		(2 - 3 * q(3) + 3 * q(4) - 2 * q(7)) / 12.0,
		(2 + 3 * q(5) - 3 * q(6) - 2 * q(7)) / 12.0,
		(2 - 3 * q(5) + 3 * q(6) - 2 * q(7)) / 12.0,
		(2 - 3 * q(5) - 3 * q(6) + 4 * q(7)) / 12.0,
	};
	std::array<double, 9> out{};
	for (int k = 0; k < 9; ++k)
		out[static_cast<size_t>(k)] = clamp_weight(raw[static_cast<size_t>(k)], k);
	return out;
}

KrausChannel gellmann_from_q(const RealVector &q)
{
	const auto eps = gellmann_weights(q);
	std::vector<std::pair<double, ComplexMatrix>> terms{{eps[0], ComplexMatrix::Identity(3, 3)}};
	for (int k = 0; k < 8; ++k)
		terms.emplace_back(eps[static_cast<size_t>(k + 1)], gell_mann(k));
	std::ostringstream label;
	label << "gm:q=";
	for (int k = 0; k < 8; ++k)
		label << (k ? "+" : "") << fmt(q(k));
	return make_channel(weighted(terms)).with_label(label.str());
}

KrausChannel gellmann_identity_pair(int k1, double q)
{
	if (k1 < 1 || k1 > 3)
		throw ParameterOutOfRange("gm-pair: k1 must be 1, 2 or 3");
	require_range("gm-pair q", q, -0.5, 1.0);
	const std::vector<std::pair<double, ComplexMatrix>> terms{
		{std::max((1 + 2 * q) / 3.0, 0.0), ComplexMatrix::Identity(3, 3)},
		{std::max((1 - q) / 2.0, 0.0), gell_mann(k1 - 1)},
		{std::max((1 - q) / 2.0, 0.0), gell_mann(7)},
	};
	return make_channel(weighted(terms)).with_label("gm-pair:k1=" + std::to_string(k1) + ",q=" + fmt(q));
}

KrausChannel gellmann_triple(int k1, int k2, int k3, double q)
{
	if (k1 < 1 || k1 > 3 || k2 < 4 || k2 > 5 || k3 < 6 || k3 > 7)
		throw ParameterOutOfRange("gm-triple: need k1 in {1,2,3}, k2 in {4,5}, k3 in {6,7}");
	require_range("gm-triple q", q, 0.5, 1.0);
	// Square-root amplitudes; sum lambda_k^2 over the triple is 2 I.
	const double w = std::max(1 - q, 0.0);
	const std::vector<std::pair<double, ComplexMatrix>> terms{
		{std::max(2 * q - 1, 0.0), ComplexMatrix::Identity(3, 3)},
		{w, gell_mann(k1 - 1)},
		{w, gell_mann(k2 - 1)},
		{w, gell_mann(k3 - 1)},
	};
	return make_channel(weighted(terms))
		.with_label("gm-triple:k1=" + std::to_string(k1) + ",k2=" + std::to_string(k2) + ",k3="
					+ std::to_string(k3) + ",q=" + fmt(q));
}

} // namespace qcorr
