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

#include <cstdint>
#include <random>
#include <string>

#include "qcorr/factorization.hpp"

namespace qcorr
{

/// All generators are seeded std::mt19937_64 streams; nothing is global.
using Rng = std::mt19937_64;

ComplexMatrix ginibre(int rows, int cols, Rng &rng);
/// Haar unitary from the QR decomposition of a Ginibre matrix.
ComplexMatrix random_unitary(int d, Rng &rng);
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// Normalized complex Gaussian vector.
DensityMatrix random_pure(int d_a, int d_b, Rng &rng);
DensityMatrix random_pure(int d_a, int d_b, std::uint64_t seed);
/// G G^dagger / tr(G G^dagger) with G of shape d x rank.
DensityMatrix random_mixed(int d_a, int d_b, int rank, Rng &rng);
DensityMatrix random_mixed(int d_a, int d_b, int rank, std::uint64_t seed);

/// A family alternative together with the index sets K (side a) and L
/// (side b). Empty K or L means all generators of that side.
struct FamilyDescriptor
{
	Theorem theorem = Theorem::T1;
	int family = 1;
	char alternative = 'a';
	int d_a = 2;
	int d_b = 2;
	IndexSet k;
	IndexSet l;

	const FamilyCase &family_case() const;
	/// Throws ValidationError on unsupported dims or out-of-range indices.
	void validate() const;
};

/// Grammar: <theorem>.f<n>[<alt>][:key=value,...] with theorem in
/// t1..t4 or fom, keys K and L (one-based indices joined by '+') and da, db.
/// Example: "t4.f3a:K=1+2,L=3".
FamilyDescriptor parse_family(const std::string &text);
std::string to_string(const FamilyDescriptor &f);

/// Random Bloch data honoring the zero pattern of the family, pulled toward
/// I/(d_a d_b) by bisection on the mixing weight until positive, keeping a
/// 1% margin from the boundary.
DensityMatrix random_in_family(const FamilyDescriptor &f, Rng &rng);
DensityMatrix random_in_family(const FamilyDescriptor &f, std::uint64_t seed);

/// Scales the traceless part of `b` to 99% of the largest weight that keeps
/// the reconstruction positive.
DensityMatrix mix_to_state(const BlochForm &b);

} // namespace qcorr
