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

#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qcorr
{

void OptimizerSettings::validate() const
{
	if (theta_steps < 8 || phi_steps < 8 || grid_resolution < 8)
		throw ValidationError("optimizer: grid resolution must be >= 8 per angle");
	if (restarts < 4)
		throw ValidationError("optimizer: restarts must be >= 4");
	if (refine_starts < 1)
		throw ValidationError("optimizer: refine_starts must be >= 1");
	if (!(tolerance > 0.0) || !(param_tolerance > 0.0))
		throw ValidationError("optimizer: tolerances must be > 0");
	if (max_iterations < 1)
		throw ValidationError("optimizer: max_iterations must be >= 1");
}

NelderMeadResult nelder_mead(const Objective &f, const RealVector &start, double step, double f_tol,
							 double x_tol, int max_iterations)
{
	const auto n = start.size();
	std::vector<RealVector> simplex(static_cast<size_t>(n + 1), start);
	for (Eigen::Index k = 0; k < n; ++k)
		simplex[static_cast<size_t>(k + 1)](k) += step;
	std::vector<double> values(simplex.size());
	for (size_t k = 0; k < simplex.size(); ++k)
		values[k] = f(simplex[k]);

	std::vector<size_t> order(simplex.size());
	NelderMeadResult result;
	for (int iter = 0; iter < max_iterations; ++iter)
	{
		std::iota(order.begin(), order.end(), size_t{0});
		std::stable_sort(order.begin(), order.end(), [&](size_t l, size_t r) { return values[l] < values[r]; });
		const size_t best = order.front();
		const size_t worst = order.back();
		const size_t second = order[order.size() - 2];

		double diameter = 0.0;
		for (const auto &v : simplex)
			diameter = std::max(diameter, (v - simplex[best]).cwiseAbs().maxCoeff());
		result.iterations = iter;
		if (values[worst] - values[best] <= f_tol && diameter <= x_tol)
		{
			result.converged = true;
			break;
		}

		RealVector centroid = RealVector::Zero(n);
		for (size_t k = 0; k < simplex.size(); ++k)
			if (k != worst)
				centroid += simplex[k];
		centroid /= static_cast<double>(n);

		const RealVector reflected = centroid + (centroid - simplex[worst]);
		const double f_r = f(reflected);
		if (f_r < values[best])
		{
			const RealVector expanded = centroid + 2.0 * (centroid - simplex[worst]);
			const double f_e = f(expanded);
			if (f_e < f_r)
			{
				simplex[worst] = expanded;
				values[worst] = f_e;
			}
			else
			{
				simplex[worst] = reflected;
				values[worst] = f_r;
			}
			continue;
		}
		if (f_r < values[second])
		{
			simplex[worst] = reflected;
			values[worst] = f_r;
			continue;
		}
		const bool outside = f_r < values[worst];
		const RealVector contracted =
			outside ? RealVector(centroid + 0.5 * (reflected - centroid)) : RealVector(centroid + 0.5 * (simplex[worst] - centroid));
		const double f_c = f(contracted);
		if (f_c < (outside ? f_r : values[worst]))
		{
			simplex[worst] = contracted;
			values[worst] = f_c;
			continue;
		}
		// shrink toward the best vertex
		for (size_t k = 0; k < simplex.size(); ++k)
			if (k != best)
			{
				simplex[k] = simplex[best] + 0.5 * (simplex[k] - simplex[best]);
				values[k] = f(simplex[k]);
			}
	}
	const auto it = std::min_element(values.begin(), values.end());
	result.value = *it;
	result.x = simplex[static_cast<size_t>(it - values.begin())];
	return result;
}

namespace
{

std::vector<double> axis(const ParameterRange &r, int steps)
{
	std::vector<double> out(static_cast<size_t>(steps));
	const int denom = r.periodic ? steps : steps - 1;
	for (int k = 0; k < steps; ++k)
		out[static_cast<size_t>(k)] = r.lo + (r.hi - r.lo) * k / denom;
	return out;
}

struct Seed
{
	double value;
	RealVector x;
};

} // namespace

OptimizationResult optimize_parameters(const Objective &objective, const std::vector<ParameterRange> &ranges,
									   const OptimizerSettings &settings, std::uint64_t seed)
{
	settings.validate();
	const double sign = settings.direction == Direction::Min ? 1.0 : -1.0;
	const int n = static_cast<int>(ranges.size());

	OptimizationResult result;
	double best = std::numeric_limits<double>::infinity();
	RealVector best_x = RealVector::Zero(n);
	// Every evaluation goes through here so the reported optimum is never
	// worse than any point actually visited.
	const Objective f = [&](const RealVector &x) {
		const double v = sign * objective(x);
		++result.evaluations;
		if (v < best)
		{
			best = v;
			best_x = x;
		}
		return v;
	};

	if (n == 0)
	{
		f(RealVector());
		result.value = sign * best;
		result.params = best_x;
		return result;
	}

	std::vector<Seed> seeds;
	std::vector<std::vector<double>> axes;
	if (n == 1)
		axes = {axis(ranges[0], settings.theta_steps)};
	else if (n == 2)
		axes = {axis(ranges[0], settings.theta_steps), axis(ranges[1], settings.phi_steps)};
	else if (std::pow(static_cast<double>(settings.grid_resolution), n) <= settings.max_grid_points)
		for (const auto &r : ranges)
			axes.push_back(axis(r, settings.grid_resolution));

	if (!axes.empty())
	{
		std::vector<size_t> idx(static_cast<size_t>(n), 0);
		RealVector x(n);
		while (true)
		{
			for (int k = 0; k < n; ++k)
				x(k) = axes[static_cast<size_t>(k)][idx[static_cast<size_t>(k)]];
			seeds.push_back(Seed{f(x), x});
			int k = n - 1;
			while (k >= 0 && ++idx[static_cast<size_t>(k)] == axes[static_cast<size_t>(k)].size())
			{
				idx[static_cast<size_t>(k)] = 0;
				--k;
			}
			if (k < 0)
				break;
		}
		const auto keep = std::min<size_t>(seeds.size(), static_cast<size_t>(settings.refine_starts));
		std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(keep), seeds.end(),
						  [](const Seed &l, const Seed &r) { return l.value < r.value; });
		seeds.resize(keep);
	}

	std::mt19937_64 rng(seed);
	if (axes.empty())
	{
		RealVector x(n);
		for (int r = 0; r < settings.restarts; ++r)
		{
			for (int k = 0; k < n; ++k)
			{
				std::uniform_real_distribution<double> u(ranges[static_cast<size_t>(k)].lo,
														 ranges[static_cast<size_t>(k)].hi);
				x(k) = u(rng);
			}
			seeds.push_back(Seed{f(x), x});
		}
	}

	double step = 0.0;
	for (const auto &r : ranges)
		step = std::max(step, (r.hi - r.lo) / std::max(settings.theta_steps, settings.grid_resolution));
	for (const auto &s : seeds)
	{
		++result.starts;
		auto nm = nelder_mead(f, s.x, step, settings.tolerance, settings.param_tolerance, settings.max_iterations);
		// one fresh-simplex restart from the converged point guards against
		// simplex collapse on flat directions
		auto again = nelder_mead(f, nm.x, step * 0.1, settings.tolerance, settings.param_tolerance,
								 settings.max_iterations);
		if (!nm.converged || !again.converged)
			result.iteration_cap_hit = true;
	}

	result.value = sign * best;
	result.params = best_x;
	return result;
}

} // namespace qcorr
