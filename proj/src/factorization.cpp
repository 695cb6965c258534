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

#include "qcorr/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcorr
{

namespace
{

using VS = VectorSupport;
using TS = TensorSupport;
using FR = FactorRule;
using C = Configuration;

FamilyCase make_case(Theorem th, int family, char alt, C config, VS x, VS y, TS t, FR factor, bool equal = false)
{
	FamilyCase c;
	c.theorem = th;
	c.family = family;
	c.alternative = alt;
	c.configuration = config;
	c.x = x;
	c.y = y;
	c.t = t;
	c.factor = factor;
	c.equal_factors = equal;
	return c;
}

std::vector<FamilyCase> build_cases(Theorem th)
{
	switch (th)
	{
	case Theorem::T1:
		return {
			make_case(th, 1, 'a', C::A, VS::Free, VS::Free, TS::Free, FR::Qa),
			make_case(th, 2, 'a', C::AB, VS::Zero, VS::Free, TS::Free, FR::QaQb),
			make_case(th, 2, 'b', C::AB, VS::Free, VS::Free, TS::Zero, FR::Qa),
			make_case(th, 2, 'a', C::B, VS::Zero, VS::Free, TS::Free, FR::Qb),
			make_case(th, 2, 'b', C::B, VS::Free, VS::Free, TS::Zero, FR::One),
		};
	case Theorem::T2:
		return {
			make_case(th, 1, 'a', C::A, VS::Group, VS::Free, TS::Rows, FR::Qa),
			make_case(th, 2, 'a', C::B, VS::Zero, VS::Free, TS::Cols, FR::Qb),
			make_case(th, 2, 'b', C::B, VS::Free, VS::Free, TS::Zero, FR::One),
			make_case(th, 3, 'a', C::AB, VS::Zero, VS::Free, TS::Block, FR::QaQb),
			make_case(th, 3, 'b', C::AB, VS::Group, VS::Free, TS::Zero, FR::Qa),
		};
	case Theorem::T3:
		return {
			make_case(th, 1, 'a', C::A, VS::Free, VS::Zero, TS::Free, FR::Qa),
			make_case(th, 1, 'b', C::A, VS::Zero, VS::Free, TS::Zero, FR::One),
			make_case(th, 2, 'a', C::B, VS::Zero, VS::Free, TS::Free, FR::Qb),
			make_case(th, 2, 'b', C::B, VS::Free, VS::Zero, TS::Zero, FR::One),
			make_case(th, 3, 'a', C::AB, VS::Zero, VS::Zero, TS::Free, FR::QaQb),
			make_case(th, 3, 'b', C::AB, VS::Zero, VS::Free, TS::Zero, FR::Qb),
			make_case(th, 3, 'c', C::AB, VS::Free, VS::Zero, TS::Zero, FR::Qa),
			make_case(th, 3, 'd', C::AB, VS::Free, VS::Free, TS::Zero, FR::Qa, true),
		};
	case Theorem::T4:
		return {
			make_case(th, 1, 'a', C::A, VS::Group, VS::Zero, TS::Rows, FR::Qa),
			make_case(th, 1, 'b', C::A, VS::Zero, VS::Free, TS::Zero, FR::One),
			make_case(th, 2, 'a', C::B, VS::Zero, VS::Group, TS::Cols, FR::Qb),
			make_case(th, 2, 'b', C::B, VS::Free, VS::Zero, TS::Zero, FR::One),
			make_case(th, 3, 'a', C::AB, VS::Zero, VS::Zero, TS::Block, FR::QaQb),
			make_case(th, 3, 'b', C::AB, VS::Group, VS::Zero, TS::Zero, FR::Qa),
			make_case(th, 3, 'c', C::AB, VS::Zero, VS::Group, TS::Zero, FR::Qb),
			make_case(th, 3, 'd', C::AB, VS::Group, VS::Group, TS::Zero, FR::Qa, true),
		};
	case Theorem::FiguresOfMerit:
		return {
			make_case(th, 1, 'a', C::A, VS::Free, VS::Free, TS::Rows, FR::Qa),
			make_case(th, 2, 'a', C::B, VS::Free, VS::Free, TS::Cols, FR::Qb),
			make_case(th, 3, 'a', C::AB, VS::Free, VS::Free, TS::Block, FR::QaQb),
		};
	case Theorem::Auto:
		break;
	}
	throw ValidationError("no family table for theorem 'auto'");
}

std::string format_set(const IndexSet &s)
{
	std::ostringstream os;
	os << '{';
	for (size_t k = 0; k < s.size(); ++k)
		os << (k ? "," : "") << s[k] + 1;
	os << '}';
	return os.str();
}

IndexSet complement(const IndexSet &s, int n)
{
	IndexSet out;
	for (int k = 0; k < n; ++k)
		if (std::find(s.begin(), s.end(), k) == s.end())
			out.push_back(k);
	return out;
}

double norm_on(const RealVector &v, const IndexSet &idx)
{
	double s = 0.0;
	for (int k : idx)
		s += v(k) * v(k);
	return std::sqrt(s);
}

double rows_norm(const RealMatrix &t, const IndexSet &rows)
{
	double s = 0.0;
	for (int r : rows)
		s += t.row(r).squaredNorm();
	return std::sqrt(s);
}

double cols_norm(const RealMatrix &t, const IndexSet &cols)
{
	double s = 0.0;
	for (int c : cols)
		s += t.col(c).squaredNorm();
	return std::sqrt(s);
}

IndexSet all_indices(int n)
{
	IndexSet s(static_cast<size_t>(n));
	std::iota(s.begin(), s.end(), 0);
	return s;
}

/// Factor groups usable as K (or L), largest first.
std::vector<FactorGroup> candidate_groups(const ScalingProfile &p, bool needs_full, const char *side)
{
	if (is_identity_profile(p))
		return {FactorGroup{1.0, all_indices(p.size())}};
	if (needs_full && !p.fully_scaled())
		throw ValidationError(std::string("channel on side ") + side
							  + " does not scale every generator by one common factor; use t2/t4");
	std::vector<FactorGroup> g = p.groups;
	std::stable_sort(g.begin(), g.end(),
					 [](const FactorGroup &l, const FactorGroup &r) { return l.indices.size() > r.indices.size(); });
	return g;
}

/// Empty when the case holds, otherwise the first violated condition.
std::string check_case(const FamilyCase &c, const BlochForm &b, const FactorGroup &k, const FactorGroup &l,
					   double tol)
{
	std::ostringstream os;
	os.precision(3);
	const int na = static_cast<int>(b.x.size());
	const int nb = static_cast<int>(b.y.size());
	const IndexSet k_out = complement(k.indices, na);
	const IndexSet l_out = complement(l.indices, nb);
	if (c.x == VS::Zero && b.x.norm() > tol)
		os << "x nonzero (norm " << b.x.norm() << ")";
	else if (c.x == VS::Group && norm_on(b.x, k_out) > tol)
		os << "x outside K=" << format_set(k.indices) << " (norm " << norm_on(b.x, k_out) << ")";
	else if (c.y == VS::Zero && b.y.norm() > tol)
		os << "y nonzero (norm " << b.y.norm() << ")";
	else if (c.y == VS::Group && norm_on(b.y, l_out) > tol)
		os << "y outside L=" << format_set(l.indices) << " (norm " << norm_on(b.y, l_out) << ")";
	else if (c.t == TS::Zero && b.t.norm() > tol)
		os << "T nonzero (norm " << b.t.norm() << ")";
	else if ((c.t == TS::Rows || c.t == TS::Block) && rows_norm(b.t, k_out) > tol)
		os << "T rows outside K=" << format_set(k.indices) << " (norm " << rows_norm(b.t, k_out) << ")";
	else if ((c.t == TS::Cols || c.t == TS::Block) && cols_norm(b.t, l_out) > tol)
		os << "T columns outside L=" << format_set(l.indices) << " (norm " << cols_norm(b.t, l_out) << ")";
	else if (c.equal_factors && std::abs(k.factor - l.factor) > kFactorGroupTol)
		os << "q_a = " << k.factor << " differs from q_b = " << l.factor;
	return os.str();
}

double apply_rule(FactorRule r, double q_a, double q_b)
{
	switch (r)
	{
	case FR::One:
		return 1.0;
	case FR::Qa:
		return q_a;
	case FR::Qb:
		return q_b;
	case FR::QaQb:
		return q_a * q_b;
	}
	return 1.0;
}

BlochForm swap_sides(const BlochForm &b)
{
	return BlochForm{b.d_b, b.d_a, b.y, b.x, b.t.transpose()};
}

} // namespace

std::string to_string(Theorem t)
{
	switch (t)
	{
	case Theorem::T1:
		return "t1";
	case Theorem::T2:
		return "t2";
	case Theorem::T3:
		return "t3";
	case Theorem::T4:
		return "t4";
	case Theorem::FiguresOfMerit:
		return "fom";
	case Theorem::Auto:
		return "auto";
	}
	return "?";
}

Theorem parse_theorem(const std::string &name)
{
	for (Theorem t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::FiguresOfMerit, Theorem::Auto})
		if (name == to_string(t))
			return t;
	throw ValidationError("unknown theorem '" + name + "' (expected t1, t2, t3, t4, fom or auto)");
}

std::string to_string(Configuration c)
{
	switch (c)
	{
	case C::A:
		return "S1(x)I";
	case C::B:
		return "I(x)S2";
	case C::AB:
		return "S1(x)S2";
	}
	return "?";
}

std::string FamilyCase::name() const
{
	std::string s = to_string(theorem) + ".f" + std::to_string(family);
	const auto &all = family_cases(theorem);
	const bool several = std::count_if(all.begin(), all.end(), [&](const FamilyCase &c) {
		return c.family == family && c.alternative != 'a';
	}) > 0;
	if (several)
		s += alternative;
	return s;
}

const std::vector<FamilyCase> &family_cases(Theorem theorem)
{
	static const std::vector<FamilyCase> t1 = build_cases(Theorem::T1);
	static const std::vector<FamilyCase> t2 = build_cases(Theorem::T2);
	static const std::vector<FamilyCase> t3 = build_cases(Theorem::T3);
	static const std::vector<FamilyCase> t4 = build_cases(Theorem::T4);
	static const std::vector<FamilyCase> fom = build_cases(Theorem::FiguresOfMerit);
	switch (theorem)
	{
	case Theorem::T1:
		return t1;
	case Theorem::T2:
		return t2;
	case Theorem::T3:
		return t3;
	case Theorem::T4:
		return t4;
	case Theorem::FiguresOfMerit:
		return fom;
	case Theorem::Auto:
		break;
	}
	throw ValidationError("no family table for theorem 'auto'");
}

const FamilyCase &family_case(Theorem theorem, int family, char alternative)
{
	for (const auto &c : family_cases(theorem))
		if (c.family == family && c.alternative == alternative)
			return c;
	throw ValidationError("theorem " + to_string(theorem) + " has no family " + std::to_string(family)
						  + std::string(1, alternative));
}

std::string FamilyClassification::family_name() const
{
	if (!member)
		return "";
	return family_case(theorem, family, alternative).name();
}

bool is_identity_profile(const ScalingProfile &p)
{
	return p.fully_scaled() && std::abs(p.groups[0].factor - 1.0) <= kFactorGroupTol;
}

Theorem default_theorem(MeasureKind kind, const ScalingProfile &prof_a, const ScalingProfile &prof_b)
{
	if (is_figure_of_merit(kind))
		return Theorem::FiguresOfMerit;
	const bool full = prof_a.fully_scaled() && prof_b.fully_scaled();
	if (kind == MeasureKind::SymP1 || kind == MeasureKind::SymP2)
		return full ? Theorem::T3 : Theorem::T4;
	return full ? Theorem::T1 : Theorem::T2;
}

FamilyClassification classify(const BlochForm &b, const ScalingProfile &prof_a, const ScalingProfile &prof_b,
							  Theorem theorem, double tol)
{
	if (theorem == Theorem::Auto)
		throw ValidationError("classify needs an explicit theorem");
	if (prof_a.size() != b.x.size() || prof_b.size() != b.y.size())
		throw ValidationError("classify: scaling profiles do not match the state dimensions");

	FamilyClassification out;
	out.theorem = theorem;
	const bool id_a = is_identity_profile(prof_a);
	const bool id_b = is_identity_profile(prof_b);
	out.configuration = id_a ? (id_b ? C::A : C::B) : (id_b ? C::A : C::AB);

	const bool needs_full = theorem == Theorem::T1 || theorem == Theorem::T3;
	const auto groups_a = candidate_groups(prof_a, needs_full, "a");
	const auto groups_b = candidate_groups(prof_b, needs_full, "b");
	if (groups_a.empty() || groups_b.empty())
	{
		out.witness = std::string("no scaled generators on side ") + (groups_a.empty() ? "a" : "b");
		return out;
	}

	std::vector<std::string> failures;
	for (const auto &k : groups_a)
		for (const auto &l : groups_b)
			for (const auto &c : family_cases(theorem))
			{
				if (c.configuration != out.configuration)
					continue;
				const std::string why = check_case(c, b, k, l, tol);
				if (why.empty())
				{
					out.member = true;
					out.family = c.family;
					out.alternative = c.alternative;
					out.q_a = k.factor;
					out.q_b = l.factor;
					out.k_group = k.indices;
					out.l_group = l.indices;
					out.q = apply_rule(c.factor, k.factor, l.factor);
					out.witness.clear();
					return out;
				}
				failures.push_back(c.name() + " with K=" + format_set(k.indices) + ", L=" + format_set(l.indices)
								   + ": " + why);
			}
	if (failures.empty())
		out.witness = "no family of " + to_string(theorem) + " for " + to_string(out.configuration);
	for (size_t k = 0; k < failures.size(); ++k)
		out.witness += (k ? "; " : "") + failures[k];
	return out;
}

double predicted_factor(MeasureKind kind, const FamilyClassification &family)
{
	if (!family.member)
		throw ValidationError("no decay law for a state outside the families: " + family.witness);
	const double q = std::abs(family.q);
	switch (kind)
	{
	case MeasureKind::Nqt:
	case MeasureKind::Bmax:
	case MeasureKind::Fqt:
		return q;
	case MeasureKind::Frsp:
		return q * q;
	default:
		return std::pow(q, schatten_exponent(kind));
	}
}

double predicted_value(MeasureKind kind, const FamilyClassification &family, double before)
{
	const double f = predicted_factor(kind, family);
	if (kind == MeasureKind::Fqt)
		return 0.5 + f * (before - 0.5);
	return f * before;
}

FamilyClassification classify_for_measure(const DensityMatrix &rho, const LocalChannel &ch, MeasureKind kind,
										  const VerifyOptions &opts)
{
	ScalingProfile prof_a = scaling_profile(ch.side_a);
	ScalingProfile prof_b = scaling_profile(ch.side_b);
	BlochForm b = decompose(rho);
	if (is_one_sided(kind) && opts.side == Side::B)
	{
		b = swap_sides(b);
		std::swap(prof_a, prof_b);
	}
	const Theorem th = opts.theorem == Theorem::Auto ? default_theorem(kind, prof_a, prof_b) : opts.theorem;
	return classify(b, prof_a, prof_b, th, opts.support_tol);
}

FactorizationReport verify(const DensityMatrix &rho, const LocalChannel &ch, MeasureKind kind,
						   const OptimizerSettings &settings, double tol, const VerifyOptions &opts)
{
	FactorizationReport r;
	r.kind = kind;
	r.side = opts.side;
	r.tolerance = tol;
	r.family = classify_for_measure(rho, ch, kind, opts);
	if (!r.family.member)
		throw ValidationError("state is not in a family of " + to_string(r.family.theorem) + ": "
							  + r.family.witness);

	const MeasureSpec spec{kind, opts.side, opts.method};
	const auto before = evaluate(rho, spec, settings, opts.seed);
	const auto after = evaluate(apply(ch, rho), spec, settings, opts.seed);
	r.before = before.value;
	r.after = after.value;
	r.method_before = before.method;
	r.method_after = after.method;
	r.factor = predicted_factor(kind, r.family);
	r.predicted = predicted_value(kind, r.family, r.before);
	r.abs_error = std::abs(r.after - r.predicted);
	r.rel_error = r.abs_error / std::max(std::abs(r.before), kNegativeClamp);
	r.pass = r.abs_error <= tol * std::max(1.0, r.before);
	return r;
}

ComplexMatrix varrho(const BlochForm &b) { return correlated_part(b); }

VarrhoCheck varrho_scaling_check(const DensityMatrix &rho, const LocalChannel &ch, double tol)
{
	const auto prof_a = scaling_profile(ch.side_a);
	const auto prof_b = scaling_profile(ch.side_b);
	const BlochForm before = decompose(rho);
	const ComplexMatrix v = varrho(before);
	const ComplexMatrix v_after = varrho(decompose(apply(ch, rho)));

	VarrhoCheck out;
	out.family = classify(before, prof_a, prof_b, default_theorem(MeasureKind::GqdP2, prof_a, prof_b), tol);
	if (out.family.member)
	{
		out.q = out.family.q;
		out.classified = true;
	}
	else
	{
		const double vv = v.squaredNorm();
		out.q = vv > 0.0 ? (v.adjoint() * v_after).trace().real() / vv : 0.0;
	}
	out.residual = (v_after - out.q * v).norm();
	return out;
}

WeylReport weyl_bound_check(const DensityMatrix &rho, double q_a, double q_b)
{
	if (rho.d_a() != 2 || rho.d_b() != 2)
		throw ValidationError("weyl_bound_check requires a two-qubit state");
	if (q_a < 0.0 || q_a > 1.0 || q_b < 0.0 || q_b > 1.0)
		throw ParameterOutOfRange("weyl_bound_check: q_a, q_b must lie in [0, 1]");
	WeylReport r;
	r.before = d2_closed_two_qubit(rho);
	r.after = d2_closed_two_qubit(apply(tensor(depolarizing(2, q_a), depolarizing(2, q_b)), rho));
	r.bound = std::pow(q_a * q_b, 2) * r.before;
	r.gap = r.after - r.bound;
	r.holds = r.gap >= -kWeylTol;
	return r;
}

} // namespace qcorr
