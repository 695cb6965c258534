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
#include <functional>
#include <vector>

#include "qcorr/types.hpp"

namespace qcorr
{

enum class Direction
{
	Min,
	Max
};

struct OptimizerSettings
{
	Direction direction = Direction::Min;
	/// Seeding grid for two-parameter searches (polar x azimuthal).
	int theta_steps = 24;
	int phi_steps = 48;
	/// Points per parameter for seeding grids in 3 or more dimensions; used
	/// only while the grid stays below `max_grid_points`.
	int grid_resolution = 8;
	int max_grid_points = 20000;
	/// Random multistarts (always used above two parameters).
	int restarts = 32;
	/// Best seeding-grid points handed to the simplex refinement.
	int refine_starts = 4;
	/// Simplex stops once the spread of objective values drops below this
	/// and the simplex diameter below `param_tolerance`.
	double tolerance = 1e-12;
	double param_tolerance = 1e-8;
	int max_iterations = 4000;

	/// Throws ValidationError unless resolutions >= 8, restarts >= 4,
	/// tolerances > 0.
	void validate() const;
};

struct ParameterRange
{
	double lo = 0.0;
	double hi = 1.0;
	/// Periodic ranges exclude `hi` from seeding grids.
	bool periodic = false;
};

struct OptimizationResult
{
	double value = 0.0;
	RealVector params;
	int evaluations = 0;
	int starts = 0;
	bool iteration_cap_hit = false;
};

using Objective = std::function<double(const RealVector &)>;

/// Grid or random seeding followed by Nelder-Mead refinement from the best
/// seeds. Deterministic for a given seed. The reported value is the best
/// objective value seen at any evaluated point.
OptimizationResult optimize_parameters(const Objective &f, const std::vector<ParameterRange> &ranges,
									   const OptimizerSettings &settings, std::uint64_t seed);

struct NelderMeadResult
{
	RealVector x;
	double value = 0.0;
	int iterations = 0;
	bool converged = false;
};

NelderMeadResult nelder_mead(const Objective &f, const RealVector &start, double step, double f_tol,
							 double x_tol, int max_iterations);

} // namespace qcorr
