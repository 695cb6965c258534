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

#include "qcorr/ensembles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <Eigen/QR>

namespace qcorr
{

namespace
{

void check_local_dims(int d_a, int d_b)
{
	const auto ok = [](int d) { return d == 2 || d == 3; };
	if (!ok(d_a) || !ok(d_b))
		throw ValidationError("ensembles: local dimensions must be 2 or 3, got " + std::to_string(d_a) + "x"
							  + std::to_string(d_b));
}

IndexSet resolve(const IndexSet &s, int n)
{
	if (!s.empty())
		return s;
	IndexSet all;
	for (int k = 0; k < n; ++k)
		all.push_back(k);
	return all;
}

bool contains(const IndexSet &s, int k) { return std::find(s.begin(), s.end(), k) != s.end(); }

IndexSet parse_indices(const std::string &text, const std::string &key)
{
	IndexSet out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, '+'))
	{
		size_t used = 0;
		int v = 0;
		try
		{
			v = std::stoi(item, &used);
		}
		catch (const std::exception &)
		{
			used = 0;
		}
		if (used == 0 || used != item.size() || v < 1)
			throw ValidationError("family: bad index '" + item + "' in " + key + " (one-based integers joined by '+')");
		if (contains(out, v - 1))
			throw ValidationError("family: index " + item + " repeated in " + key);
		out.push_back(v - 1);
	}
	std::sort(out.begin(), out.end());
	if (out.empty())
		throw ValidationError("family: empty index set for " + key);
	return out;
}

} // namespace

ComplexMatrix ginibre(int rows, int cols, Rng &rng)
{
	std::normal_distribution<double> n(0.0, 1.0);
	ComplexMatrix g(rows, cols);
	for (int j = 0; j < cols; ++j)
		for (int i = 0; i < rows; ++i)
		{
			const double re = n(rng);
			const double im = n(rng);
			g(i, j) = Complex(re, im);
		}
	return g;
}

ComplexMatrix random_unitary(int d, Rng &rng)
{
	Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(d, d, rng));
	ComplexMatrix q = qr.householderQ();
	const ComplexMatrix r = qr.matrixQR();
	for (int k = 0; k < d; ++k)
	{
		const double a = std::abs(r(k, k));
		if (a > 0.0)
			q.col(k) *= r(k, k) / a;
	}
	return q;
}

ComplexMatrix random_unitary(int d, std::uint64_t seed)
{
	Rng rng(seed);
	return random_unitary(d, rng);
}

DensityMatrix random_pure(int d_a, int d_b, Rng &rng)
{
	check_local_dims(d_a, d_b);
	const ComplexVector psi = ginibre(d_a * d_b, 1, rng).col(0);
	return pure_state(psi / psi.norm(), d_a, d_b);
}

DensityMatrix random_pure(int d_a, int d_b, std::uint64_t seed)
{
	Rng rng(seed);
	return random_pure(d_a, d_b, rng);
}

DensityMatrix random_mixed(int d_a, int d_b, int rank, Rng &rng)
{
	check_local_dims(d_a, d_b);
	if (rank < 1 || rank > d_a * d_b)
		throw ValidationError("random_mixed: rank must lie in [1, " + std::to_string(d_a * d_b) + "], got "
							  + std::to_string(rank));
	const ComplexMatrix g = ginibre(d_a * d_b, rank, rng);
	ComplexMatrix rho = g * g.adjoint();
	rho /= rho.trace().real();
	return DensityMatrix::from_matrix((rho + rho.adjoint()) / 2.0, d_a, d_b);
}

DensityMatrix random_mixed(int d_a, int d_b, int rank, std::uint64_t seed)
{
	Rng rng(seed);
	return random_mixed(d_a, d_b, rank, rng);
}

const FamilyCase &FamilyDescriptor::family_case() const { return qcorr::family_case(theorem, family, alternative); }

void FamilyDescriptor::validate() const
{
	check_local_dims(d_a, d_b);
	family_case();
	for (int i : k)
		if (i < 0 || i >= d_a * d_a - 1)
			throw ValidationError("family: K index " + std::to_string(i + 1) + " out of range for d_a = "
								  + std::to_string(d_a));
	for (int j : l)
		if (j < 0 || j >= d_b * d_b - 1)
			throw ValidationError("family: L index " + std::to_string(j + 1) + " out of range for d_b = "
								  + std::to_string(d_b));
}

FamilyDescriptor parse_family(const std::string &text)
{
	FamilyDescriptor f;
	const auto colon = text.find(':');
	const std::string head = text.substr(0, colon);
	const auto dot = head.find('.');
	if (dot == std::string::npos || head.size() < dot + 3 || head[dot + 1] != 'f')
		throw ValidationError("family: expected <theorem>.f<n>[alt], got '" + text + "'");
	f.theorem = parse_theorem(head.substr(0, dot));
	if (f.theorem == Theorem::Auto)
		throw ValidationError("family: theorem must be explicit");
	std::string rest = head.substr(dot + 2);
	if (rest.empty() || !std::isdigit(static_cast<unsigned char>(rest[0])))
		throw ValidationError("family: missing family number in '" + text + "'");
	f.family = rest[0] - '0';
	if (rest.size() == 2 && std::islower(static_cast<unsigned char>(rest[1])))
		f.alternative = rest[1];
	else if (rest.size() != 1)
		throw ValidationError("family: bad family designator '" + rest + "'");

	if (colon != std::string::npos)
	{
		std::stringstream ss(text.substr(colon + 1));
		std::string kv;
		while (std::getline(ss, kv, ','))
		{
			const auto eq = kv.find('=');
			if (eq == std::string::npos)
				throw ValidationError("family: expected key=value, got '" + kv + "'");
			const std::string key = kv.substr(0, eq);
			const std::string value = kv.substr(eq + 1);
			if (key == "K")
				f.k = parse_indices(value, key);
			else if (key == "L")
				f.l = parse_indices(value, key);
			else if (key == "da" || key == "db")
			{
				int d = 0;
				try
				{
					d = std::stoi(value);
				}
				catch (const std::exception &)
				{
					throw ValidationError("family: bad value for " + key + ": '" + value + "'");
				}
				(key == "da" ? f.d_a : f.d_b) = d;
			}
			else
				throw ValidationError("family: unknown key '" + key + "' (expected K, L, da, db)");
		}
	}
	f.validate();
	return f;
}

std::string to_string(const FamilyDescriptor &f)
{
	std::ostringstream os;
	os << f.family_case().name();
	std::vector<std::string> parts;
	const auto join = [](const IndexSet &s) {
		std::string out;
		for (size_t k = 0; k < s.size(); ++k)
			out += (k ? "+" : "") + std::to_string(s[k] + 1);
		return out;
	};
	if (!f.k.empty())
		parts.push_back("K=" + join(f.k));
	if (!f.l.empty())
		parts.push_back("L=" + join(f.l));
	if (f.d_a != 2)
		parts.push_back("da=" + std::to_string(f.d_a));
	if (f.d_b != 2)
		parts.push_back("db=" + std::to_string(f.d_b));
	for (size_t k = 0; k < parts.size(); ++k)
		os << (k ? ',' : ':') << parts[k];
	return os.str();
}

DensityMatrix mix_to_state(const BlochForm &b)
{
	if (reconstruct(b).positive(0.0))
		return reconstruct(b).state();
	double lo = 0.0;
	double hi = 1.0;
	for (int it = 0; it < 60; ++it)
	{
		const double mid = (lo + hi) / 2;
		(reconstruct(mid * b).positive(0.0) ? lo : hi) = mid;
	}
	return reconstruct((0.99 * lo) * b).state();
}

DensityMatrix random_in_family(const FamilyDescriptor &f, Rng &rng)
{
	f.validate();
	const FamilyCase &c = f.family_case();
	const int na = f.d_a * f.d_a - 1;
	const int nb = f.d_b * f.d_b - 1;
	const IndexSet k = resolve(f.k, na);
	const IndexSet l = resolve(f.l, nb);

	const auto allowed = [](VectorSupport s, const IndexSet &group, int i) {
		return s == VectorSupport::Free || (s == VectorSupport::Group && contains(group, i));
	};
	const auto allowed_t = [&](int i, int j) {
		switch (c.t)
		{
		case TensorSupport::Free:
			return true;
		case TensorSupport::Zero:
			return false;
		case TensorSupport::Rows:
			return contains(k, i);
		case TensorSupport::Cols:
			return contains(l, j);
		case TensorSupport::Block:
			return contains(k, i) && contains(l, j);
		}
		return false;
	};

	std::normal_distribution<double> n(0.0, 1.0);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	// independent weights keep local and correlated parts from always
	// arriving in the same proportion
	const double wx = u(rng), wy = u(rng), wt = u(rng);
	BlochForm b{f.d_a, f.d_b, RealVector::Zero(na), RealVector::Zero(nb), RealMatrix::Zero(na, nb)};
	for (int i = 0; i < na; ++i)
		if (allowed(c.x, k, i))
			b.x(i) = wx * n(rng);
	for (int j = 0; j < nb; ++j)
		if (allowed(c.y, l, j))
			b.y(j) = wy * n(rng);
	for (int i = 0; i < na; ++i)
		for (int j = 0; j < nb; ++j)
			if (allowed_t(i, j))
				b.t(i, j) = wt * n(rng);
	return mix_to_state(b);
}

DensityMatrix random_in_family(const FamilyDescriptor &f, std::uint64_t seed)
{
	Rng rng(seed);
	return random_in_family(f, rng);
}

} // namespace qcorr
