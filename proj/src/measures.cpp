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

#include "qcorr/measures.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "qcorr/bloch.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr
{

namespace
{

constexpr std::array<std::pair<MeasureKind, const char *>, 11> kKindNames{{
	{MeasureKind::GqdP1, "gqd-p1"},
	{MeasureKind::GqdP2, "gqd-p2"},
	{MeasureKind::MinP1, "min-p1"},
	{MeasureKind::MinP2, "min-p2"},
	{MeasureKind::HellingerP2, "hellinger-p2"},
	{MeasureKind::SymP1, "sym-p1"},
	{MeasureKind::SymP2, "sym-p2"},
	{MeasureKind::Nqt, "nqt"},
	{MeasureKind::Fqt, "fqt"},
	{MeasureKind::Frsp, "frsp"},
	{MeasureKind::Bmax, "bmax"},
}};

bool is_min_kind(MeasureKind k) { return k == MeasureKind::MinP1 || k == MeasureKind::MinP2; }
bool is_sym_kind(MeasureKind k) { return k == MeasureKind::SymP1 || k == MeasureKind::SymP2; }

void check_dims(const DensityMatrix &rho)
{
	const auto ok = [](int d) { return d == 2 || d == 3; };
	if (!ok(rho.d_a()) || !ok(rho.d_b()))
		throw ValidationError("measures: local dimensions must be 2 or 3, got " + std::to_string(rho.d_a()) + "x"
							  + std::to_string(rho.d_b()));
}

double disturbance(const ComplexMatrix &s, int d_a, int d_b, const ComplexMatrix &u_a, const ComplexMatrix &u_b,
				   int p)
{
	const ComplexMatrix off = disturbance_in_basis(s, d_a, d_b, u_a, u_b);
	if (p == 2)
		return off.squaredNorm();
	return linalg::schatten_power_hermitian(off, p);
}

/// G_il = tr(B_i B_l) and x_i = tr(B_i), B_i = tr_a[(s_i (x) I) rho].
std::pair<Eigen::Matrix3d, Eigen::Vector3d> qubit_side_gram(const DensityMatrix &rho)
{
	if (rho.d_a() != 2)
		throw ValidationError("closed form requires a qubit on the measured side, got d_a = "
							  + std::to_string(rho.d_a()));
	const ComplexMatrix id_b = ComplexMatrix::Identity(rho.d_b(), rho.d_b());
	std::array<ComplexMatrix, 3> b;
	Eigen::Vector3d x;
	for (int i = 0; i < 3; ++i)
	{
		b[static_cast<size_t>(i)] =
			linalg::partial_trace(linalg::kron(pauli(i), id_b) * rho.matrix(), 2, rho.d_b(), Side::A);
		x(i) = b[static_cast<size_t>(i)].trace().real();
	}
	Eigen::Matrix3d g;
	for (int i = 0; i < 3; ++i)
		for (int l = 0; l < 3; ++l)
			g(i, l) = (b[static_cast<size_t>(i)] * b[static_cast<size_t>(l)]).trace().real();
	return {(g + g.transpose()) / 2.0, x};
}

void require_two_qubits(const DensityMatrix &rho, const char *what)
{
	if (rho.d_a() != 2 || rho.d_b() != 2)
		throw ValidationError(std::string(what) + " requires a two-qubit state");
}

} // namespace

std::string to_string(MeasureKind kind)
{
	for (const auto &[k, name] : kKindNames)
		if (k == kind)
			return name;
	throw InternalError("unknown MeasureKind");
}

std::string to_string(Method method)
{
	switch (method)
	{
	case Method::Optimize:
		return "optimize";
	case Method::ClosedForm:
		return "closed-form";
	case Method::Auto:
		return "auto";
	}
	throw InternalError("unknown Method");
}

MeasureKind parse_measure_kind(const std::string &name)
{
	for (const auto &[k, n] : kKindNames)
		if (name == n)
			return k;
	throw ValidationError("unknown measure kind '" + name + "'");
}

Method parse_method(const std::string &name)
{
	if (name == "optimize")
		return Method::Optimize;
	if (name == "closed-form")
		return Method::ClosedForm;
	if (name == "auto")
		return Method::Auto;
	throw ValidationError("unknown method '" + name + "' (expected optimize, closed-form or auto)");
}

int schatten_exponent(MeasureKind kind)
{
	switch (kind)
	{
	case MeasureKind::GqdP1:
	case MeasureKind::MinP1:
	case MeasureKind::SymP1:
		return 1;
	case MeasureKind::GqdP2:
	case MeasureKind::MinP2:
	case MeasureKind::HellingerP2:
	case MeasureKind::SymP2:
		return 2;
	default:
		return 0;
	}
}

bool is_figure_of_merit(MeasureKind kind) { return schatten_exponent(kind) == 0; }

bool is_one_sided(MeasureKind kind) { return !is_figure_of_merit(kind) && !is_sym_kind(kind); }

bool has_closed_form(MeasureKind kind, int d_a, int d_b, Side side)
{
	if (is_figure_of_merit(kind))
		return d_a == 2 && d_b == 2;
	if (kind == MeasureKind::GqdP2 || kind == MeasureKind::MinP2)
		return (side == Side::A ? d_a : d_b) == 2;
	return false;
}

double clamp_nonnegative(double value, const std::string &what)
{
	if (value >= 0.0)
		return value;
	if (value >= -kNegativeClamp)
		return 0.0;
	throw InternalError(what + ": negative value " + std::to_string(value));
}

double d2_closed_two_qubit(const DensityMatrix &rho)
{
	require_two_qubits(rho, "d2_closed_two_qubit");
	const auto c = to_conventional(decompose(rho));
	const Eigen::Matrix3d k = c.x * c.x.transpose() + c.t * c.t.transpose();
	const double kmax = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(k, Eigen::EigenvaluesOnly).eigenvalues()(2);
	return clamp_nonnegative((c.x.squaredNorm() + c.t.squaredNorm() - kmax) / 4.0, "d2_closed_two_qubit");
}

double gqd2_closed_2xn(const DensityMatrix &rho)
{
	const auto [g, x] = qubit_side_gram(rho);
	const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(g, Eigen::EigenvaluesOnly).eigenvalues()(2);
	return clamp_nonnegative((g.trace() - lmax) / 2.0, "gqd2_closed_2xn");
}

double min2_closed_2xn(const DensityMatrix &rho)
{
	const auto [g, x] = qubit_side_gram(rho);
	double kept;
	if (x.norm() > kNegativeClamp)
		kept = x.dot(g * x) / x.squaredNorm();
	else
		kept = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(g, Eigen::EigenvaluesOnly).eigenvalues()(0);
	return clamp_nonnegative((g.trace() - kept) / 2.0, "min2_closed_2xn");
}

FiguresOfMerit figures_of_merit(const DensityMatrix &rho)
{
	require_two_qubits(rho, "figures_of_merit");
	const Eigen::Matrix3d t = to_conventional(decompose(rho)).t;
	const Eigen::Vector3d asc =
		Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(t.transpose() * t, Eigen::EigenvaluesOnly).eigenvalues();
	FiguresOfMerit f;
	for (int k = 0; k < 3; ++k)
		f.e(k) = std::max(0.0, asc(2 - k));
	// singular values, not sqrt(e): a rounding-level e3 would add ~1e-9
	f.nqt = Eigen::JacobiSVD<Eigen::Matrix3d>(t).singularValues().sum();
	f.fqt = 0.5 + f.nqt / 6.0;
	f.frsp = (f.e(1) + f.e(2)) / 2.0;
	f.bmax = 2.0 * std::sqrt(f.e(0) + f.e(1));
	return f;
}

double figure_of_merit(const FiguresOfMerit &f, MeasureKind kind)
{
	switch (kind)
	{
	case MeasureKind::Nqt:
		return f.nqt;
	case MeasureKind::Fqt:
		return f.fqt;
	case MeasureKind::Frsp:
		return f.frsp;
	case MeasureKind::Bmax:
		return f.bmax;
	default:
		throw ValidationError(to_string(kind) + " is not a figure of merit");
	}
}

MeasureResult symmetric_measure(const DensityMatrix &rho, int p, const OptimizerSettings &settings,
								std::uint64_t seed)
{
	check_dims(rho);
	if (p != 1 && p != 2)
		throw ValidationError("symmetric_measure: p must be 1 or 2");
	OptimizerSettings s = settings;
	s.direction = Direction::Min;
	const int d_a = rho.d_a(), d_b = rho.d_b();
	const auto opt = optimize_two_sided(
		[&](const ComplexMatrix &u_a, const ComplexMatrix &u_b) { return disturbance(rho.matrix(), d_a, d_b, u_a, u_b, p); },
		MeasurementFamily::projective(d_a), MeasurementFamily::projective(d_b), s, seed);
	MeasureResult r;
	r.value = clamp_nonnegative(opt.value, "symmetric_measure");
	r.method = Method::Optimize;
	r.starts = opt.starts;
	r.evaluations = opt.evaluations;
	r.iteration_cap_hit = opt.iteration_cap_hit;
	r.best_params = opt.params;
	return r;
}

MeasureResult geometric_measure(const DensityMatrix &rho_in, const MeasureSpec &spec, const OptimizerSettings &settings,
								std::uint64_t seed)
{
	if (is_figure_of_merit(spec.kind))
		throw ValidationError(to_string(spec.kind) + " is not a geometric measure");
	check_dims(rho_in);
	if (is_sym_kind(spec.kind))
	{
		if (spec.method == Method::ClosedForm)
			throw ValidationError(to_string(spec.kind) + " has no closed form");
		return symmetric_measure(rho_in, schatten_exponent(spec.kind), settings, seed);
	}

	const DensityMatrix rho = spec.side == Side::A ? rho_in : rho_in.swapped();
	const bool closed = has_closed_form(spec.kind, rho.d_a(), rho.d_b());
	if (spec.method == Method::ClosedForm && !closed)
		throw ValidationError(to_string(spec.kind) + " has no closed form on " + std::to_string(rho_in.d_a()) + "x"
							  + std::to_string(rho_in.d_b()) + " measured on side " + to_string(spec.side));

	MeasureResult r;
	std::optional<double> closed_value;
	if (closed && spec.method != Method::Optimize)
	{
		closed_value = spec.kind == MeasureKind::GqdP2 ? gqd2_closed_2xn(rho) : min2_closed_2xn(rho);
		r.value = *closed_value;
		r.method = Method::ClosedForm;
		if (spec.method == Method::ClosedForm)
			return r;
	}

	const int p = schatten_exponent(spec.kind);
	const ComplexMatrix s = spec.kind == MeasureKind::HellingerP2 ? ComplexMatrix(linalg::sqrt_psd(rho.matrix()))
																  : rho.matrix();
	OptimizerSettings os = settings;
	MeasurementFamily family;
	if (is_min_kind(spec.kind))
	{
		os.direction = Direction::Max;
		family = locally_invariant_params(rho.reduced(Side::A));
	}
	else
	{
		os.direction = Direction::Min;
		family = MeasurementFamily::projective(rho.d_a());
	}
	const ComplexMatrix none;
	const auto opt = optimize(
		[&](const ComplexMatrix &u) { return disturbance(s, rho.d_a(), rho.d_b(), u, none, p); }, family, os, seed);
	const double optimized = clamp_nonnegative(opt.value, to_string(spec.kind));
	r.starts = opt.starts;
	r.evaluations = opt.evaluations;
	r.iteration_cap_hit = opt.iteration_cap_hit;
	r.best_params = opt.params;
	if (closed_value)
		r.cross_check = std::abs(*closed_value - optimized);
	else
	{
		r.value = optimized;
		r.method = Method::Optimize;
	}
	return r;
}

MeasureResult evaluate(const DensityMatrix &rho, const MeasureSpec &spec, const OptimizerSettings &settings,
					   std::uint64_t seed)
{
	if (!is_figure_of_merit(spec.kind))
		return geometric_measure(rho, spec, settings, seed);
	if (spec.method == Method::Optimize)
		throw ValidationError(to_string(spec.kind) + " is computed in closed form only");
	MeasureResult r;
	r.value = figure_of_merit(figures_of_merit(rho), spec.kind);
	r.method = Method::ClosedForm;
	return r;
}

} // namespace qcorr
