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


#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qcorr/ensembles.hpp"
#include "qcorr/factorization.hpp"

using namespace qcorr;
using testing::random_state;

namespace
{

FamilyClassification classify_state(const DensityMatrix &rho, const LocalChannel &ch, Theorem th)
{
	return classify(decompose(rho), scaling_profile(ch.side_a), scaling_profile(ch.side_b), th);
}

DensityMatrix frozen_state(std::uint64_t seed)
{
	FamilyDescriptor f;
	f.theorem = Theorem::T2;
	f.family = 1;
	f.k = {2};
	return random_in_family(f, seed);
}

} // namespace

TEST_CASE("family table: names, lookup, theorem names")
{
	CHECK(family_case(Theorem::T2, 3, 'b').name() == "t2.f3b");
	CHECK(family_case(Theorem::T1, 1, 'a').name() == "t1.f1");
	CHECK(family_case(Theorem::FiguresOfMerit, 2, 'a').name() == "fom.f2");
	CHECK(family_case(Theorem::T3, 3, 'd').equal_factors);
	CHECK(family_case(Theorem::T4, 3, 'd').equal_factors);
	CHECK_THROWS_AS(family_case(Theorem::T1, 4, 'a'), ValidationError);
	CHECK_THROWS_AS(family_cases(Theorem::Auto), ValidationError);
	for (auto t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::FiguresOfMerit, Theorem::Auto})
		CHECK(parse_theorem(to_string(t)) == t);
	CHECK_THROWS_AS(parse_theorem("t5"), ValidationError);
	CHECK(family_cases(Theorem::T3).size() == 8);
	CHECK(family_cases(Theorem::T4).size() == 8);
	CHECK(family_cases(Theorem::T1).size() == 5);
	CHECK(family_cases(Theorem::FiguresOfMerit).size() == 3);
}

TEST_CASE("classify: examples")
{
	const double q = 0.45;
	for (std::uint64_t s = 0; s < 10; ++s)
	{
		const LocalChannel ch = one_sided(depolarizing(2, q), Side::A, 2);
		const FamilyClassification c = classify_state(random_state(2, 2, s), ch, Theorem::T1);
		CHECK(c.member);
		CHECK(c.family == 1);
		CHECK(c.configuration == Configuration::A);
		CHECK(c.q_a == doctest::Approx(q).epsilon(1e-12));
		CHECK(c.q == doctest::Approx(q).epsilon(1e-12));
	}

	const LocalChannel pf = one_sided(phase_flip(0.5), Side::A, 2);
	const FamilyClassification bell = classify_state(bell_phi_plus(), pf, Theorem::T2);
	CHECK_FALSE(bell.member);
	CHECK(bell.witness.find("K={1,2}") != std::string::npos);
	CHECK(bell.witness.find("K={3}") != std::string::npos);
	CHECK(bell.witness.find("T rows outside") != std::string::npos);

	BlochForm b{2, 2, RealVector::Zero(3), RealVector::Zero(3), RealMatrix::Zero(3, 3)};
	b.y << 0.1, -0.2, 0.15;
	b.t.row(2) << 0.2, 0.1, -0.1;
	const FamilyClassification fr =
		classify(b, scaling_profile(phase_flip(0.5)), identity_profile(2), Theorem::T2);
	CHECK(fr.member);
	CHECK(fr.family == 1);
	CHECK(fr.k_group == IndexSet{2});
	CHECK(fr.q == doctest::Approx(1.0));
	CHECK(fr.family_name() == "t2.f1");
}

TEST_CASE("classify: T1 and T3 need fully scaling channels")
{
	const BlochForm b = decompose(random_state(2, 2, 3));
	CHECK_THROWS_AS(classify(b, scaling_profile(phase_flip(0.4)), identity_profile(2), Theorem::T1), ValidationError);
	CHECK_THROWS_AS(classify(b, scaling_profile(depolarizing(2, 0.4)), scaling_profile(gad(0.4, 0.2)), Theorem::T3),
					ValidationError);
	CHECK_THROWS_AS(classify(b, identity_profile(3), identity_profile(2), Theorem::T1), ValidationError);
	CHECK_THROWS_AS(classify(b, identity_profile(2), identity_profile(2), Theorem::Auto), ValidationError);
}

TEST_CASE("classify: configurations and two-sided families")
{
	const double qa = 0.6, qb = 0.3;
	const auto pa = scaling_profile(depolarizing(2, qa));
	const auto pb = scaling_profile(depolarizing(2, qb));
	const ScalingProfile id = identity_profile(2);

	BlochForm b = decompose(werner(0.7)); // x = y = 0
	FamilyClassification c = classify(b, pa, pb, Theorem::T1);
	CHECK(c.configuration == Configuration::AB);
	CHECK(c.member);
	CHECK(c.q == doctest::Approx(qa * qb));

	c = classify(b, id, pb, Theorem::T1);
	CHECK(c.configuration == Configuration::B);
	CHECK(c.q == doctest::Approx(qb));

	// T3 3d: rho_c = 0 and equal channels
	BlochForm local = b;
	local.t.setZero();
	local.x << 0.1, 0.2, 0.0;
	local.y << 0.0, 0.1, 0.3;
	CHECK_FALSE(classify(local, pa, pb, Theorem::T3).member);
	c = classify(local, pa, pa, Theorem::T3);
	CHECK(c.member);
	CHECK(c.family_name() == "t3.f3d");
	CHECK(c.q == doctest::Approx(qa));
}

TEST_CASE("predicted_factor: examples")
{
	FamilyClassification f;
	f.member = true;
	f.q = 0.5;
	CHECK(predicted_factor(MeasureKind::GqdP2, f) == doctest::Approx(0.25));
	CHECK(predicted_factor(MeasureKind::GqdP1, f) == doctest::Approx(0.5));
	CHECK(predicted_factor(MeasureKind::Frsp, f) == doctest::Approx(0.25));
	CHECK(predicted_factor(MeasureKind::Nqt, f) == doctest::Approx(0.5));
	CHECK(predicted_factor(MeasureKind::Bmax, f) == doctest::Approx(0.5));
	f.q = -0.5;
	CHECK(predicted_factor(MeasureKind::GqdP1, f) == doctest::Approx(0.5));
	CHECK(predicted_value(MeasureKind::Fqt, f, 0.9) == doctest::Approx(0.5 + 0.5 * 0.4));
	CHECK(predicted_value(MeasureKind::GqdP2, f, 0.4) == doctest::Approx(0.1));
	f.member = false;
	CHECK_THROWS_AS(predicted_factor(MeasureKind::GqdP2, f), ValidationError);
}

TEST_CASE("verify: examples")
{
	const OptimizerSettings st;
	const FactorizationReport w = verify(werner(0.8), one_sided(depolarizing(2, 0.5), Side::A, 2), MeasureKind::GqdP2,
										 st, 1e-9);
	CHECK(w.before == doctest::Approx(0.32).epsilon(1e-12));
	CHECK(w.after == doctest::Approx(0.08).epsilon(1e-12));
	CHECK(w.predicted == doctest::Approx(0.08).epsilon(1e-12));
	CHECK(w.pass);
	CHECK(w.predicted == w.factor * w.before);

	const FactorizationReport bm = verify(bell_phi_plus(), one_sided(depolarizing(2, 0.6), Side::A, 2),
										  MeasureKind::Bmax, st, 1e-10);
	CHECK(bm.before == doctest::Approx(2 * std::sqrt(2.0)));
	CHECK(bm.after == doctest::Approx(2 * std::sqrt(2.0) * 0.6));
	CHECK(bm.abs_error <= 1e-10);
	CHECK(bm.pass);

	for (std::uint64_t s = 0; s < 3; ++s)
	{
		const DensityMatrix fz = frozen_state(40 + s);
		for (double q : {1.0, 0.75, 0.5, 0.25, 0.0})
			for (auto k : {MeasureKind::GqdP2, MeasureKind::GqdP1, MeasureKind::Nqt})
			{
				const FactorizationReport r = verify(fz, one_sided(phase_flip(q), Side::A, 2), k, st, 1e-6);
				CHECK(r.factor == doctest::Approx(1.0));
				CHECK(r.abs_error <= 1e-6);
			}
	}

	CHECK_THROWS_AS(verify(bell_phi_plus(), one_sided(phase_flip(0.5), Side::A, 2), MeasureKind::GqdP2, st, 1e-4),
					ValidationError);
}

TEST_CASE("verify: side b measured on the swapped problem")
{
	const DensityMatrix rho = random_state(3, 2, 61);
	VerifyOptions o;
	o.side = Side::B;
	const FactorizationReport r =
		verify(rho, one_sided(depolarizing(2, 0.4), Side::B, 3), MeasureKind::GqdP2, OptimizerSettings{}, 1e-9, o);
	CHECK(r.family.member);
	CHECK(r.family.configuration == Configuration::A);
	CHECK(r.pass);
	CHECK(r.method_before == Method::ClosedForm);
}

TEST_CASE("invariant: soundness on random family members")
{
	const OptimizerSettings st;
	const std::vector<std::pair<FamilyDescriptor, LocalChannel>> cases{
		{parse_family("t2.f1:K=1+2"), one_sided(phase_flip(0.6), Side::A, 2)},
		{parse_family("t2.f1:K=1+3"), one_sided(bit_phase_flip(0.6), Side::A, 2)},
		{parse_family("t2.f3a:K=2+3,L=1+2"), tensor(bit_flip(0.7), phase_flip(0.5))},
		{parse_family("t1.f2a"), tensor(depolarizing(2, 0.5), depolarizing(2, 0.8))},
	};
	for (const auto &[fam, ch] : cases)
		for (std::uint64_t s = 0; s < 4; ++s)
		{
			const DensityMatrix rho = random_in_family(fam, 70 + s);
			REQUIRE(classify_for_measure(rho, ch, MeasureKind::GqdP2).member);
			CHECK(verify(rho, ch, MeasureKind::GqdP2, st, 1e-9).pass);
			CHECK(verify(rho, ch, MeasureKind::MinP2, st, 1e-9).pass);
			CHECK(verify(rho, ch, MeasureKind::GqdP1, st, 1e-4).pass);
			CHECK(verify(rho, ch, MeasureKind::MinP1, st, 1e-4).pass);
		}
}

TEST_CASE("invariant: T1 family (1) contains T2 family (1) for the same channel")
{
	const LocalChannel ch = one_sided(depolarizing(2, 0.3), Side::A, 2);
	for (std::uint64_t s = 0; s < 20; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 90 + s);
		const bool t2 = classify_state(rho, ch, Theorem::T2).member;
		const FamilyClassification t1 = classify_state(rho, ch, Theorem::T1);
		if (t2)
			CHECK(t1.member);
		CHECK(t1.member);
	}
}

TEST_CASE("invariant: figure-of-merit families depend on T only")
{
	const LocalChannel ch = one_sided(phase_flip(0.4), Side::A, 2);
	for (std::uint64_t s = 0; s < 10; ++s)
	{
		const DensityMatrix rho = random_in_family(parse_family("fom.f1:K=1+2"), 100 + s);
		const FamilyClassification c = classify_state(rho, ch, Theorem::FiguresOfMerit);
		CHECK(c.member);
		CHECK(decompose(rho).x.norm() > 1e-6); // x unrestricted
		for (auto k : {MeasureKind::Nqt, MeasureKind::Bmax, MeasureKind::Frsp, MeasureKind::Fqt})
		{
			const FactorizationReport r = verify(rho, ch, k, OptimizerSettings{}, 1e-9);
			CHECK(r.pass);
			CHECK(r.abs_error <= 1e-9);
		}
	}
}

TEST_CASE("varrho_scaling_check: examples")
{
	for (std::uint64_t s = 0; s < 10; ++s)
	{
		const int db = 2 + static_cast<int>(s % 2);
		const VarrhoCheck v =
			varrho_scaling_check(random_state(2, db, 120 + s), one_sided(depolarizing(2, 0.35), Side::A, db));
		CHECK(v.classified);
		CHECK(v.residual <= 1e-12);
	}
	for (std::uint64_t s = 0; s < 5; ++s)
	{
		FamilyDescriptor f = parse_family("t2.f1:K=2+3+4+5+6+7,da=3,db=3");
		const DensityMatrix rho = random_in_family(f, 130 + s);
		const VarrhoCheck v = varrho_scaling_check(rho, one_sided(gellmann_identity_pair(1, 0.4), Side::A, 3));
		CHECK(v.classified);
		CHECK(v.q == doctest::Approx(0.4));
		CHECK(v.residual <= 1e-12);
	}
	const VarrhoCheck g = varrho_scaling_check(bell_phi_plus(), one_sided(gad(0.5, 1.0), Side::A, 2));
	CHECK_FALSE(g.classified);
	CHECK(g.residual > 1e-3);
	CHECK(varrho(decompose(bell_phi_plus())).norm() > 0.0);
}

TEST_CASE("invariant: small varrho residual implies the gqd law")
{
	const LocalChannel ch = tensor(bit_flip(0.6), identity_channel(3));
	for (std::uint64_t s = 0; s < 5; ++s)
	{
		const DensityMatrix rho = random_in_family(parse_family("t2.f1:K=2+3,db=3"), 140 + s);
		const VarrhoCheck v = varrho_scaling_check(rho, ch);
		REQUIRE(v.residual <= 1e-12);
		CHECK(verify(rho, ch, MeasureKind::GqdP2, OptimizerSettings{}, 1e-9).pass);
		CHECK(verify(rho, ch, MeasureKind::GqdP1, OptimizerSettings{}, 1e-4).pass);
	}
}

TEST_CASE("weyl_bound_check: examples")
{
	const WeylReport bell = weyl_bound_check(bell_phi_plus(), 0.5, 0.5);
	CHECK(bell.after == doctest::Approx(0.03125).epsilon(1e-12));
	CHECK(bell.bound == doctest::Approx(0.03125).epsilon(1e-12));
	CHECK(std::abs(bell.gap) <= 1e-12);
	CHECK(bell.holds);

	int strict = 0;
	for (std::uint64_t s = 0; s < 10; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 150 + s);
		REQUIRE(decompose(rho).x.norm() > 1e-3);
		const WeylReport r = weyl_bound_check(rho, 0.7, 0.4);
		CHECK(r.holds);
		strict += r.gap > 1e-9 ? 1 : 0;
		const WeylReport one = weyl_bound_check(rho, 1.0, 1.0);
		CHECK(std::abs(one.gap) <= 1e-12);
	}
	CHECK(strict >= 8);
	CHECK_THROWS_AS(weyl_bound_check(bell_phi_plus(), 1.2, 0.5), ParameterOutOfRange);
	CHECK_THROWS_AS(weyl_bound_check(random_state(2, 3, 1), 0.5, 0.5), ValidationError);
}

TEST_CASE("observed: hellinger does not follow the q^2 law outside pure scaling")
{
	// sqrt(rho) is not linear in the Bloch data, so no family guarantee applies
	const FactorizationReport r = verify(werner(0.8), one_sided(depolarizing(2, 0.5), Side::A, 2),
										 MeasureKind::HellingerP2, OptimizerSettings{}, 1e-4);
	CHECK(r.abs_error > 1e-3);
	CHECK_FALSE(r.pass);
}
