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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcorr
{

// Dense types are templated on the real scalar; the library itself is
// instantiated with double throughout.
template <typename Real>
using CMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RMatrixT = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = CMatrixT<double>;
using ComplexVector = CVectorT<double>;
using RealMatrix = RMatrixT<double>;
using RealVector = RVectorT<double>;

/// Zero-based generator indices. User-facing output (CLI, JSON) prints them
/// one-based so they line up with the sigma_k / lambda_k labels.
using IndexSet = std::vector<int>;

enum class Side
{
	A,
	B
};

inline const char *to_string(Side s) { return s == Side::A ? "a" : "b"; }

/// Input failed a documented invariant (bad dimensions, trace, positivity,
/// completeness, parameter range). The CLI maps it to exit status 1.
class ValidationError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// A numerical result contradicted an internal consistency bound.
class InternalError : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

} // namespace qcorr
