#pragma once

// Pairing of the cocycle z d/dz on the gluing annulus with the quadratic
// differential dw^2 / ((w-a)(w-b)(w-c)), evaluated either by contour
// quadrature on |z| = 1 or by residues at the two poles inside the disc.

#include "plumbing/contour.hpp"
#include "plumbing/error.hpp"
#include "plumbing/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace plumbing {

enum class PairingMethod { numeric, closed_form };

constexpr std::string_view to_string(PairingMethod m) noexcept
{
	return m == PairingMethod::numeric ? "numeric" : "closed_form";
}

struct PairingResult {
	complex value;
	double err_estimate = 0.0; // always 0 for closed_form
	PairingMethod method = PairingMethod::closed_form;
	complex scale_applied{1.0, 0.0};
	/// smallest ||pole| - 1| over the six poles of the integrand
	double min_pole_distance = 0.0;
	std::int64_t nodes = 0;
	/// numeric only: mean |integrand| on the final nodes times 2 pi, scaled
	double floor_scale = 0.0;
};

struct ResidueDatum {
	complex pole;
	complex residue;
	bool inside_unit_circle = false;
};

/// Poles of the substituted integrand, ordered (A, 2R-A, B, 2R-B, C, 2R-C).
inline std::array<complex, 6> poles(PrePunctures const& pre)
{
	complex two_r = 2.0 * pre.R;
	return {pre.A, two_r - pre.A, pre.B, two_r - pre.B, pre.C, two_r - pre.C};
}

inline std::array<double, 6> pole_distances(PrePunctures const& pre)
{
	std::array<double, 6> d{};
	auto p = poles(pre);
	for (std::size_t i = 0; i < p.size(); ++i)
		d[i] = std::abs(std::abs(p[i]) - 1.0);
	return d;
}

inline double min_pole_distance(PrePunctures const& pre)
{
	auto d = pole_distances(pre);
	return *std::min_element(d.begin(), d.end());
}

/// 4z(z-R)^2 / ((z-A)(z+A-2R)(z-B)(z+B-2R)(z-C)(z+C-2R))
inline complex integrand(PrePunctures const& pre, complex z)
{
	complex two_r = 2.0 * pre.R;
	complex den = (z - pre.A) * (z + pre.A - two_r) * (z - pre.B) *
	              (z + pre.B - two_r) * (z - pre.C) * (z + pre.C - two_r);
	if (den == complex(0.0))
		throw Error(ErrorKind::evaluation, "integrand evaluated at a pole");
	complex d = z - pre.R;
	return 4.0 * z * d * d / den;
}

/// The same integrand written through phi: z phi'(z)^2 / prod (phi(z) - p).
inline complex integrand_via_phi(PrePunctures const& pre, complex z)
{
	auto map = pre.map();
	Punctures p = images(pre);
	complex w = phi(map, z);
	complex den = (w - p.a) * (w - p.b) * (w - p.c);
	if (den == complex(0.0))
		throw Error(ErrorKind::evaluation, "integrand evaluated at a pole");
	complex dw = phi_prime(map, z);
	return z * dw * dw / den;
}

namespace detail {

inline void require_constraints(PrePunctures const& pre)
{
	auto report = check_constraints(pre);
	if (!report.holds_with(kCheckingMargin)) {
		std::string names;
		for (auto n : report.violated(kCheckingMargin))
			names += (names.empty() ? "" : ",") + std::string(n);
		throw Error(ErrorKind::constraint_violation,
		            "position constraints violated: " + names);
	}
}

} // namespace detail

/// Simple-pole residues at all six poles, in the order of poles().
inline std::vector<ResidueDatum> residues_inside(PrePunctures const& pre)
{
	detail::require_constraints(pre);
	auto p = poles(pre);
	for (std::size_t i = 0; i < p.size(); ++i)
		for (std::size_t j = i + 1; j < p.size(); ++j)
			if (p[i] == p[j])
				throw Error(ErrorKind::degenerate, "integrand has a repeated pole");

	std::vector<ResidueDatum> out;
	out.reserve(p.size());
	for (std::size_t i = 0; i < p.size(); ++i) {
		complex d = p[i] - pre.R;
		complex num = 4.0 * p[i] * d * d;
		complex den = 1.0;
		for (std::size_t j = 0; j < p.size(); ++j)
			if (j != i)
				den *= p[i] - p[j];
		out.push_back({p[i], num / den, std::abs(p[i]) < 1.0});
	}
	return out;
}

/// 4 pi times the largest residue magnitude at A or B; the natural size of the
/// two terms whose cancellation makes the pairing vanish.
inline double closed_form_scale(PrePunctures const& pre)
{
	complex two_r = 2.0 * pre.R;
	complex ab = (pre.A - pre.B) * (pre.A + pre.B - two_r);
	complex res_a = 2.0 * pre.A * (pre.A - pre.R) /
	                (ab * (pre.A - pre.C) * (pre.A + pre.C - two_r));
	complex res_b = 2.0 * pre.B * (pre.B - pre.R) /
	                (-ab * (pre.B - pre.C) * (pre.B + pre.C - two_r));
	return 4.0 * std::numbers::pi * std::max(std::abs(res_a), std::abs(res_b));
}

inline PairingResult pairing_closed_form(PrePunctures const& pre,
                                         TangentDirection dir = {})
{
	complex two_r = 2.0 * pre.R;
	complex pref = (pre.A - pre.B) * (pre.A + pre.B - two_r);
	complex den_a = (pre.A - pre.C) * (pre.A + pre.C - two_r);
	complex den_b = (pre.B - pre.C) * (pre.B + pre.C - two_r);
	if (pref == complex(0.0) || den_a == complex(0.0) || den_b == complex(0.0))
		throw Error(ErrorKind::degenerate,
		            "closed form has a vanishing denominator");
	complex bracket = pre.A * (pre.A - pre.R) / den_a -
	                  pre.B * (pre.B - pre.R) / den_b;
	complex value = complex(0.0, 4.0 * std::numbers::pi) * bracket / pref;

	PairingResult r;
	r.value = dir.scale() * value;
	r.method = PairingMethod::closed_form;
	r.scale_applied = dir.scale();
	r.min_pole_distance = min_pole_distance(pre);
	return r;
}

inline PairingResult pairing_numeric(PrePunctures const& pre,
                                     QuadratureSettings const& settings = {},
                                     TangentDirection dir = {})
{
	detail::require_constraints(pre);
	auto q = integrate_adaptive(
	    [&pre](complex z) { return integrand(pre, z); }, CirclePath::unit(),
	    settings);

	PairingResult r;
	r.value = dir.scale() * q.value;
	r.err_estimate = std::abs(dir.scale()) * q.err_estimate;
	r.method = PairingMethod::numeric;
	r.scale_applied = dir.scale();
	r.min_pole_distance = min_pole_distance(pre);
	r.nodes = q.nodes;
	r.floor_scale = std::abs(dir.scale()) * q.floor_scale;
	return r;
}

} // namespace plumbing
