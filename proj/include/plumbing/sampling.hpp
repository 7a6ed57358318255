#pragma once

#include "plumbing/model.hpp"
#include "plumbing/pairing.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace plumbing {

/// Draws tuples satisfying the position constraints whose six poles all keep
/// at least pole_distance from the unit circle and from each other.
class TupleSampler {
  public:
	explicit TupleSampler(std::uint64_t seed, double pole_distance = 0.05)
	    : rng_(seed), pole_distance_(pole_distance)
	{}

	PrePunctures operator()()
	{
		while (true) {
			PrePunctures pre{
			    polar(0.0, 1.0 - pole_distance_),
			    polar(0.0, 1.0 - pole_distance_),
			    polar(1.0 + pole_distance_, 12.0),
			    polar(1.0 + pole_distance_, 3.0),
			};
			if (acceptable(pre))
				return pre;
		}
	}

	bool acceptable(PrePunctures const& pre) const
	{
		auto report = check_constraints(pre);
		if (!report.holds_with(pole_distance_) ||
		    min_pole_distance(pre) < pole_distance_)
			return false;
		auto p = poles(pre);
		for (std::size_t i = 0; i < p.size(); ++i)
			for (std::size_t j = i + 1; j < p.size(); ++j)
				if (std::abs(p[i] - p[j]) < pole_distance_)
					return false;
		return true;
	}

  private:
	complex polar(double rmin, double rmax)
	{
		// uniform in area
		double r = std::sqrt(uniform_(rng_) * (rmax * rmax - rmin * rmin) +
		                     rmin * rmin);
		return std::polar(r, 2.0 * std::numbers::pi * uniform_(rng_));
	}

	std::mt19937_64 rng_;
	std::uniform_real_distribution<double> uniform_{0.0, 1.0};
	double pole_distance_;
};

} // namespace plumbing
