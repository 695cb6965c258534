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
#include "qcorr/bloch.hpp"
#include "qcorr/measures.hpp"

using namespace qcorr;
using testing::random_state;

namespace
{

double value(const DensityMatrix &rho, MeasureKind k, Method m = Method::Auto, Side side = Side::A,
			 std::uint64_t seed = 0)
{
	return evaluate(rho, MeasureSpec{k, side, m}, OptimizerSettings{}, seed).value;
}

DensityMatrix cq_state(const DensityMatrix &a, const DensityMatrix &b, const ComplexMatrix &basis, double p)
{
	// p |u0><u0| (x) rho_0 + (1 - p) |u1><u1| (x) rho_1 in the basis `basis`
	const ComplexMatrix u0 = basis.col(0) * basis.col(0).adjoint();
	const ComplexMatrix u1 = basis.col(1) * basis.col(1).adjoint();
	const ComplexMatrix m = p * oracle::kron(u0, a.reduced(Side::B)) + (1 - p) * oracle::kron(u1, b.reduced(Side::B));
	return DensityMatrix::from_matrix(m, 2, a.d_b());
}

} // namespace

TEST_CASE("names round-trip")
{
	for (auto k : {MeasureKind::GqdP1, MeasureKind::GqdP2, MeasureKind::MinP1, MeasureKind::MinP2,
				   MeasureKind::HellingerP2, MeasureKind::SymP1, MeasureKind::SymP2, MeasureKind::Nqt, MeasureKind::Fqt,
				   MeasureKind::Frsp, MeasureKind::Bmax})
		CHECK(parse_measure_kind(to_string(k)) == k);
	for (auto m : {Method::Optimize, Method::ClosedForm, Method::Auto})
		CHECK(parse_method(to_string(m)) == m);
	CHECK(to_string(MeasureKind::HellingerP2) == "hellinger-p2");
	CHECK_THROWS_AS(parse_measure_kind("gqd-p3"), ValidationError);
	CHECK_THROWS_AS(parse_method("fast"), ValidationError);
	CHECK(schatten_exponent(MeasureKind::GqdP1) == 1);
	CHECK(schatten_exponent(MeasureKind::SymP2) == 2);
	CHECK(is_figure_of_merit(MeasureKind::Bmax));
	CHECK_FALSE(is_one_sided(MeasureKind::SymP1));
	CHECK(is_one_sided(MeasureKind::HellingerP2));
}

TEST_CASE("closed-form legality")
{
	CHECK(has_closed_form(MeasureKind::GqdP2, 2, 2));
	CHECK(has_closed_form(MeasureKind::MinP2, 2, 2));
	CHECK(has_closed_form(MeasureKind::Nqt, 2, 2));
	CHECK_FALSE(has_closed_form(MeasureKind::Nqt, 2, 3));
	CHECK_FALSE(has_closed_form(MeasureKind::GqdP1, 2, 2));
	CHECK_FALSE(has_closed_form(MeasureKind::HellingerP2, 2, 2));
	CHECK(has_closed_form(MeasureKind::GqdP2, 2, 3, Side::A));
	CHECK_FALSE(has_closed_form(MeasureKind::GqdP2, 2, 3, Side::B));
	CHECK_FALSE(has_closed_form(MeasureKind::GqdP2, 3, 3));

	const DensityMatrix bell = bell_phi_plus();
	CHECK_THROWS_AS(value(bell, MeasureKind::GqdP1, Method::ClosedForm), ValidationError);
	CHECK_THROWS_AS(value(bell, MeasureKind::SymP2, Method::ClosedForm), ValidationError);
	CHECK_THROWS_AS(value(bell, MeasureKind::Nqt, Method::Optimize), ValidationError);
	CHECK_THROWS_AS(value(random_state(2, 3, 1), MeasureKind::GqdP2, Method::ClosedForm, Side::B), ValidationError);
	CHECK_THROWS_AS(figures_of_merit(random_state(2, 3, 1)), ValidationError);
	CHECK_THROWS_AS(d2_closed_two_qubit(random_state(3, 2, 1)), ValidationError);
	CHECK_THROWS_AS(min2_closed_2xn(random_state(3, 2, 1)), ValidationError);
}

TEST_CASE("geometric_measure: product states vanish")
{
	for (std::uint64_t s = 0; s < 4; ++s)
	{
		const DensityMatrix r = random_state(2, 3, 10 + s);
		const DensityMatrix prod = product_state(r.reduced(Side::A), r.reduced(Side::B));
		CHECK(value(prod, MeasureKind::GqdP2, Method::Optimize) <= 1e-10);
		CHECK(value(prod, MeasureKind::GqdP2) <= 1e-12);
		CHECK(value(prod, MeasureKind::GqdP1) <= 1e-6);
		CHECK(value(prod, MeasureKind::MinP2) <= 1e-12);
	}
}

TEST_CASE("geometric_measure: Bell examples against the grid oracle")
{
	const DensityMatrix bell = bell_phi_plus();
	const ComplexMatrix m = bell.matrix();
	const double o2 = oracle::one_sided_qubit(m, 2, 2, 1.0);
	const double o1 = oracle::one_sided_qubit(m, 2, 1, 1.0);
	const double omin = oracle::min_qubit(m, 2, 2);
	const double ohel = oracle::one_sided_qubit(oracle::sqrt_psd(m), 2, 2, 1.0);
	CHECK(o2 == doctest::Approx(0.5).epsilon(1e-9));
	CHECK(o1 == doctest::Approx(1.0).epsilon(1e-9));
	CHECK(omin == doctest::Approx(0.5).epsilon(1e-9));
	CHECK(ohel == doctest::Approx(0.5).epsilon(1e-9));

	CHECK(std::abs(value(bell, MeasureKind::GqdP2, Method::Optimize) - o2) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::GqdP2) - o2) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::GqdP1) - o1) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::MinP2, Method::Optimize) - omin) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::MinP2) - omin) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::MinP1) - oracle::min_qubit(m, 2, 1)) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::HellingerP2) - ohel) < 1e-6);
}

TEST_CASE("geometric_measure: random states against the grid oracle")
{
	for (std::uint64_t s = 0; s < 6; ++s)
	{
		const int db = 2 + static_cast<int>(s % 2);
		const DensityMatrix rho = random_state(2, db, 30 + s);
		const ComplexMatrix m = rho.matrix();
		CHECK(std::abs(value(rho, MeasureKind::GqdP2, Method::Optimize) - oracle::one_sided_qubit(m, db, 2, 1.0))
			  < 1e-6);
		CHECK(std::abs(value(rho, MeasureKind::GqdP1) - oracle::one_sided_qubit(m, db, 1, 1.0)) < 1e-6);
		CHECK(std::abs(value(rho, MeasureKind::MinP1) - oracle::min_qubit(m, db, 1)) < 1e-6);
		CHECK(std::abs(value(rho, MeasureKind::MinP2, Method::Optimize) - oracle::min_qubit(m, db, 2)) < 1e-6);
		CHECK(std::abs(value(rho, MeasureKind::HellingerP2) - oracle::one_sided_qubit(oracle::sqrt_psd(m), db, 2, 1.0))
			  < 1e-6);
	}
}

TEST_CASE("geometric_measure: side b equals side a of the swapped state")
{
	for (std::uint64_t s = 0; s < 3; ++s)
	{
		const DensityMatrix rho = random_state(3, 2, 50 + s);
		const DensityMatrix sw = rho.swapped();
		CHECK(std::abs(value(rho, MeasureKind::GqdP2, Method::Auto, Side::B) - value(sw, MeasureKind::GqdP2)) < 1e-12);
		CHECK(std::abs(value(rho, MeasureKind::GqdP1, Method::Auto, Side::B)
					   - oracle::one_sided_qubit(sw.matrix(), 3, 1, 1.0))
			  < 1e-6);
		CHECK(std::abs(value(rho, MeasureKind::MinP2, Method::Auto, Side::B) - oracle::min_qubit(sw.matrix(), 3, 2))
			  < 1e-6);
	}
}

TEST_CASE("d2_closed_two_qubit: examples")
{
	CHECK(d2_closed_two_qubit(bell_phi_plus()) == doctest::Approx(0.5).epsilon(1e-14));
	for (double p : {0.1, 0.5, 0.9})
		CHECK(d2_closed_two_qubit(werner(p)) == doctest::Approx(p * p / 2).epsilon(1e-12));
	CHECK(d2_closed_two_qubit(maximally_mixed(2, 2)) == 0.0);
	for (std::uint64_t s = 0; s < 20; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 70 + s);
		CHECK(std::abs(d2_closed_two_qubit(rho) - oracle::d2_formula(rho.matrix())) < 1e-14);
		CHECK(std::abs(d2_closed_two_qubit(rho) - gqd2_closed_2xn(rho)) < 1e-14);
	}
}

TEST_CASE("gqd2_closed_2xn: agrees with brute force at 2x3")
{
	for (std::uint64_t s = 0; s < 6; ++s)
	{
		const DensityMatrix rho = random_state(2, 3, 90 + s);
		CHECK(std::abs(gqd2_closed_2xn(rho) - oracle::one_sided_qubit(rho.matrix(), 3, 2, 1.0)) < 1e-8);
	}
}

TEST_CASE("min2_closed_2xn: examples and optimizer agreement")
{
	CHECK(min2_closed_2xn(bell_phi_plus()) == doctest::Approx(0.5).epsilon(1e-14));
	ComplexVector u(2), v(2);
	u << std::sqrt(0.8), std::sqrt(0.2);
	v << Complex(0.6, 0.0), Complex(0.0, 0.8);
	const DensityMatrix prod = pure_state(oracle::kron(u, v).col(0), 2, 2);
	CHECK(std::abs(min2_closed_2xn(prod)) < 1e-14);
	for (std::uint64_t s = 0; s < 30; ++s)
	{
		const int db = 2 + static_cast<int>(s % 2);
		const DensityMatrix rho = random_state(2, db, 110 + s);
		const double opt = value(rho, MeasureKind::MinP2, Method::Optimize);
		CHECK(std::abs(min2_closed_2xn(rho) - opt) <= 1e-5);
		CHECK(std::abs(min2_closed_2xn(rho) - oracle::min_qubit(rho.matrix(), db, 2)) <= 1e-10);
	}
	// x = 0 branch with a non-Bell T
	const DensityMatrix w = werner(0.4);
	CHECK(min2_closed_2xn(w) == doctest::Approx(0.08).epsilon(1e-12));
}

TEST_CASE("figures_of_merit: examples")
{
	const FiguresOfMerit b = figures_of_merit(bell_phi_plus());
	CHECK(b.nqt == doctest::Approx(3.0));
	CHECK(b.fqt == doctest::Approx(1.0));
	CHECK(b.frsp == doctest::Approx(1.0));
	CHECK(b.bmax == doctest::Approx(2.0 * std::sqrt(2.0)));
	CHECK((b.e - Eigen::Vector3d::Ones()).norm() < 1e-14);

	for (double p : {0.2, 0.6, 1.0})
	{
		const FiguresOfMerit w = figures_of_merit(werner(p));
		CHECK(w.nqt == doctest::Approx(3 * p));
		CHECK(w.fqt == doctest::Approx((1 + p) / 2));
		CHECK(w.frsp == doctest::Approx(p * p));
		CHECK(w.bmax == doctest::Approx(2 * std::sqrt(2.0) * p));
	}

	ComplexVector u(2), v(2);
	u << 0.6, Complex(0.0, 0.8);
	v << std::sqrt(0.5), std::sqrt(0.5);
	const FiguresOfMerit pp = figures_of_merit(pure_state(oracle::kron(u, v).col(0), 2, 2));
	CHECK(std::abs(pp.frsp) < 1e-14);
	CHECK(pp.bmax == doctest::Approx(2.0));

	for (std::uint64_t s = 0; s < 5; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 130 + s);
		const FiguresOfMerit f = figures_of_merit(rho);
		const Eigen::Matrix3d t = oracle::pauli_coordinates(rho.matrix()).t;
		CHECK(std::abs(f.nqt - oracle::nqt_bruteforce(t)) < 1e-6);
		CHECK(std::abs(f.bmax - oracle::bmax_bruteforce(t)) < 1e-6);
		CHECK(std::abs(f.frsp - oracle::frsp_bruteforce(t)) < 1e-8);
		CHECK(figure_of_merit(f, MeasureKind::Fqt) == doctest::Approx(0.5 + f.nqt / 6));
		CHECK_THROWS_AS(figure_of_merit(f, MeasureKind::GqdP2), ValidationError);
	}
}

TEST_CASE("figures_of_merit depend only on T")
{
	// T-only state with small local parts added back: stays positive
	for (std::uint64_t s = 0; s < 10; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 150 + s);
		BlochForm b = decompose(rho);
		BlochForm c = b;
		c.x *= 0.3;
		c.y = -0.5 * c.y;
		const Reconstruction r = reconstruct(c);
		if (!r.positive())
			continue;
		const FiguresOfMerit f1 = figures_of_merit(rho), f2 = figures_of_merit(r.state());
		CHECK(std::abs(f1.nqt - f2.nqt) <= 1e-12);
		CHECK(std::abs(f1.frsp - f2.frsp) <= 1e-12);
		CHECK(std::abs(f1.bmax - f2.bmax) <= 1e-12);
		CHECK(std::abs(f1.fqt - f2.fqt) <= 1e-12);
	}
}

TEST_CASE("symmetric_measure: examples")
{
	ComplexMatrix cc = ComplexMatrix::Zero(4, 4);
	cc(0, 0) = 0.1;
	cc(1, 1) = 0.2;
	cc(2, 2) = 0.3;
	cc(3, 3) = 0.4;
	const DensityMatrix ccs = DensityMatrix::from_matrix(cc, 2, 2);
	CHECK(symmetric_measure(ccs, 2).value <= 1e-10);
	CHECK(symmetric_measure(ccs, 1).value <= 1e-6);

	const DensityMatrix bell = bell_phi_plus();
	const double o = oracle::two_sided_qubits(bell.matrix(), 2);
	CHECK(o == doctest::Approx(0.5).epsilon(1e-9));
	CHECK(std::abs(symmetric_measure(bell, 2).value - o) < 1e-6);
	CHECK(std::abs(value(bell, MeasureKind::SymP1) - oracle::two_sided_qubits(bell.matrix(), 1)) < 1e-6);
	CHECK_THROWS_AS(symmetric_measure(bell, 3), ValidationError);
}

TEST_CASE("symmetric_measure: dominates the one-sided value and matches brute force")
{
	for (std::uint64_t s = 0; s < 4; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 170 + s);
		const double sym2 = symmetric_measure(rho, 2).value;
		CHECK(sym2 >= value(rho, MeasureKind::GqdP2) - 1e-6);
		CHECK(sym2 >= value(rho.swapped(), MeasureKind::GqdP2) - 1e-6);
		CHECK(std::abs(sym2 - oracle::two_sided_qubits(rho.matrix(), 2)) < 1e-6);
		const double sym1 = symmetric_measure(rho, 1).value;
		CHECK(sym1 >= value(rho, MeasureKind::GqdP1) - 1e-6);
	}
	const DensityMatrix r23 = random_state(2, 3, 5);
	CHECK(symmetric_measure(r23, 2).value >= value(r23, MeasureKind::GqdP2) - 1e-6);
}

TEST_CASE("invariant: local-unitary covariance")
{
	for (std::uint64_t s = 0; s < 3; ++s)
	{
		const DensityMatrix rho = random_state(2, 2, 190 + s);
		const DensityMatrix rot = local_unitary(rho, random_unitary(2, 10 + s), random_unitary(2, 20 + s));
		for (auto k : {MeasureKind::GqdP2, MeasureKind::MinP2, MeasureKind::Nqt, MeasureKind::Fqt, MeasureKind::Frsp,
					   MeasureKind::Bmax})
			CHECK(std::abs(value(rho, k) - value(rot, k)) <= 1e-10);
		for (auto k : {MeasureKind::GqdP1, MeasureKind::MinP1, MeasureKind::HellingerP2, MeasureKind::SymP2})
			CHECK(std::abs(value(rho, k, Method::Optimize) - value(rot, k, Method::Optimize)) <= 1e-5);
		CHECK(std::abs(value(rho, MeasureKind::GqdP2, Method::Optimize) - value(rot, MeasureKind::GqdP2, Method::Optimize))
			  <= 1e-5);
	}
}

TEST_CASE("invariant: gqd vanishes on classical-quantum states")
{
	for (std::uint64_t s = 0; s < 5; ++s)
	{
		const int db = 2 + static_cast<int>(s % 2);
		const DensityMatrix cq = cq_state(random_state(2, db, 210 + s), random_state(2, db, 220 + s),
										  random_unitary(2, 230 + s), 0.1 + 0.15 * static_cast<double>(s));
		CHECK(value(cq, MeasureKind::GqdP2, Method::Optimize) <= 1e-6);
		CHECK(value(cq, MeasureKind::GqdP1) <= 1e-6);
		CHECK(value(cq, MeasureKind::HellingerP2) <= 1e-6);
	}
}

TEST_CASE("invariant: auto cross-check within 1e-5")
{
	for (std::uint64_t s = 0; s < 20; ++s)
	{
		const int db = 2 + static_cast<int>(s % 2);
		const DensityMatrix rho = random_state(2, db, 250 + s);
		for (auto k : {MeasureKind::GqdP2, MeasureKind::MinP2})
		{
			const MeasureResult r = evaluate(rho, MeasureSpec{k, Side::A, Method::Auto});
			CHECK(r.method == Method::ClosedForm);
			REQUIRE(r.cross_check.has_value());
			CHECK(*r.cross_check <= kCrossCheckTol);
		}
	}
	const MeasureResult opt = evaluate(bell_phi_plus(), MeasureSpec{MeasureKind::GqdP2, Side::A, Method::Optimize});
	CHECK(opt.method == Method::Optimize);
	CHECK_FALSE(opt.cross_check.has_value());
	CHECK(opt.starts > 0);
}

TEST_CASE("clamp_nonnegative")
{
	CHECK(clamp_nonnegative(0.3, "x") == 0.3);
	CHECK(clamp_nonnegative(-5e-11, "x") == 0.0);
	CHECK_THROWS_AS(clamp_nonnegative(-1e-9, "x"), InternalError);
}

TEST_CASE("qutrit measured side")
{
	const DensityMatrix rho = random_state(3, 2, 300);
	const double gqd = value(rho, MeasureKind::GqdP2);
	// qutrit-side gqd equals the optimizer result measured on b of the swap
	CHECK(gqd >= 0.0);
	CHECK(std::abs(gqd - value(rho.swapped(), MeasureKind::GqdP2, Method::Auto, Side::B)) < 1e-4);
	CHECK_THROWS_AS(value(DensityMatrix::from_matrix(ComplexMatrix::Identity(8, 8) / 8.0, 2, 4), MeasureKind::GqdP2),
					ValidationError);
}
