#pragma once

// Gluing map phi(z) = (z - R)^2, puncture data and the position constraints
// that put a, b on one side of phi(unit circle) and c, infinity on the other.

#include "plumbing/contour.hpp"
#include "plumbing/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace plumbing {

/// Margin below which pairing evaluations treat a constraint as violated.
inline constexpr double kCheckingMargin = 1e-6;

/// phi(z) = (z - R)^2. Injective on the unit circle iff |R| > 1.
struct PlumbingMap {
	complex R;

	bool embeds_unit_circle() const { return std::abs(R) > 1.0; }
};

/// Preimages A, B, C of the punctures a, b, c together with the map parameter.
struct PrePunctures {
	complex A;
	complex B;
	complex C;
	complex R;

	PlumbingMap map() const { return {R}; }
};

/// Finite punctures of the four-punctured sphere; the fourth sits at infinity.
struct Punctures {
	complex a;
	complex b;
	complex c;
};

struct ConstraintReport {
	static constexpr std::array<std::string_view, 6> names{"m1", "m2", "m3",
	                                                       "m4", "m5", "m6"};
	static constexpr std::array<std::string_view, 6> descriptions{
	    "1-|A|", "1-|B|", "|A-B|", "|C|-1", "|R|-1", "|C-2R|-1"};

	std::array<double, 6> margins{};
	bool satisfied = false;

	double min_margin() const
	{
		double m = margins[0];
		for (double v : margins)
			m = std::min(m, v);
		return m;
	}

	bool holds_with(double min_required) const
	{
		for (double v : margins)
			if (!(v >= min_required))
				return false;
		return true;
	}

	/// Names of margins below min_required (all non-positive ones by default).
	std::vector<std::string_view> violated(double min_required = 0.0) const
	{
		std::vector<std::string_view> out;
		for (std::size_t i = 0; i < margins.size(); ++i)
			if (min_required > 0.0 ? !(margins[i] >= min_required)
			                       : !(margins[i] > 0.0))
				out.push_back(names[i]);
		return out;
	}
};

/// Prefactor of the cocycle field z d/dz on the gluing annulus.
class TangentDirection {
  public:
	TangentDirection() = default;
	explicit TangentDirection(complex scale) : scale_(scale)
	{
		if (scale == complex(0.0) || !std::isfinite(scale.real()) ||
		    !std::isfinite(scale.imag()))
			throw Error(ErrorKind::invalid_argument,
			            "tangent direction scale must be nonzero and finite");
	}

	complex scale() const noexcept { return scale_; }

  private:
	complex scale_{1.0, 0.0};
};

/// Plumbing parameter t = (1 - eps)/(1 + eps) of the annulus
/// 1 - eps < |z| < 1 + eps. Informational only.
struct GluingRecord {
	double epsilon;
	complex t;

	static GluingRecord from_epsilon(double epsilon)
	{
		if (!(epsilon > 0.0 && epsilon < 1.0))
			throw Error(ErrorKind::invalid_argument,
			            "gluing epsilon must lie in (0, 1)");
		return {epsilon, complex((1.0 - epsilon) / (1.0 + epsilon), 0.0)};
	}
};

inline complex phi(PlumbingMap const& map, complex z)
{
	complex d = z - map.R;
	return d * d;
}

inline complex phi_prime(PlumbingMap const& map, complex z)
{
	return 2.0 * (z - map.R);
}

/// a = phi(A), b = phi(B), c = phi(C). Distinct preimages can share an image
/// since phi(z) = phi(2R - z); that case is rejected.
inline Punctures images(PrePunctures const& pre)
{
	auto map = pre.map();
	Punctures p{phi(map, pre.A), phi(map, pre.B), phi(map, pre.C)};
	if (p.a == p.b || p.a == p.c || p.b == p.c)
		throw Error(ErrorKind::degenerate,
		            "puncture images coincide (a preimage pair sums to 2R)");
	return p;
}

inline ConstraintReport check_constraints(PrePunctures const& pre)
{
	ConstraintReport r;
	r.margins = {
	    1.0 - std::abs(pre.A),
	    1.0 - std::abs(pre.B),
	    std::abs(pre.A - pre.B),
	    std::abs(pre.C) - 1.0,
	    std::abs(pre.R) - 1.0,
	    std::abs(pre.C - 2.0 * pre.R) - 1.0,
	};
	r.satisfied = true;
	for (double m : r.margins)
		r.satisfied = r.satisfied && m > 0.0;
	return r;
}

/// Minimum over distinct sample pairs on the unit circle of
/// |phi(z1) - phi(z2)| / |z1 - z2|. Brute force over all pairs.
inline double check_circle_injectivity(PlumbingMap const& map, int samples)
{
	if (samples < 8)
		throw Error(ErrorKind::invalid_argument, "need at least 8 samples");
	auto const path = CirclePath::unit();
	std::vector<complex> z(samples), w(samples);
	for (int k = 0; k < samples; ++k) {
		z[k] = path.node(k, samples);
		w[k] = phi(map, z[k]);
	}
	double gap = std::numeric_limits<double>::infinity();
	for (int i = 0; i < samples; ++i)
		for (int j = i + 1; j < samples; ++j)
			gap = std::min(gap, std::abs(w[i] - w[j]) / std::abs(z[i] - z[j]));
	return gap;
}

/// Lower bound on check_circle_injectivity for |R| > 1, from
/// |z1 + z2 - 2R| >= 2|R| - 2.
inline double injectivity_lower_bound(PlumbingMap const& map)
{
	return std::max(0.0, 2.0 * (std::abs(map.R) - 1.0));
}

} // namespace plumbing
