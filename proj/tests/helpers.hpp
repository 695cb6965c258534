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


// Shared fixtures for the unit tests.

#pragma once

#include <cstdint>

#include <doctest.h>

#include "qcorr/ensembles.hpp"
#include "qcorr/types.hpp"

namespace testing
{

inline qcorr::ComplexMatrix random_matrix(int rows, int cols, std::uint64_t seed)
{
	qcorr::Rng rng(seed);
	return qcorr::ginibre(rows, cols, rng);
}

inline qcorr::ComplexMatrix random_hermitian(int d, std::uint64_t seed)
{
	const qcorr::ComplexMatrix g = random_matrix(d, d, seed);
	return (g + g.adjoint()) / 2.0;
}

/// Full-rank, rank-deficient and pure states in rotation.
inline qcorr::DensityMatrix random_state(int d_a, int d_b, std::uint64_t seed)
{
	const int n = d_a * d_b;
	const int rank = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n));
	return qcorr::random_mixed(d_a, d_b, rank, seed);
}

inline double max_abs(const qcorr::ComplexMatrix &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testing
