#pragma once

// Trapezoidal integration of complex functions along origin-centred circles.
// For integrands analytic in an annulus around the contour the equispaced rule
// converges geometrically, with rate set by the nearest singularity.

#include "plumbing/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>

namespace plumbing {

using complex = std::complex<double>;

template <typename F>
concept ComplexFunction = std::invocable<F const&, complex> &&
    std::convertible_to<std::invoke_result_t<F const&, complex>, complex>;

/// Counterclockwise circle |z| = radius.
class CirclePath {
  public:
	constexpr CirclePath() = default;
	explicit CirclePath(double radius) : radius_(radius)
	{
		if (!(radius > 0.0) || !std::isfinite(radius))
			throw Error(ErrorKind::invalid_argument,
			            "circle radius must be positive and finite");
	}

	static CirclePath unit() { return CirclePath{}; }

	double radius() const noexcept { return radius_; }
	double circumference() const noexcept
	{
		return 2.0 * std::numbers::pi * radius_;
	}

	/// k-th of n equispaced nodes, starting on the positive real axis
	complex node(std::int64_t k, std::int64_t n) const
	{
		return std::polar(radius_, 2.0 * std::numbers::pi *
		                               static_cast<double>(k) /
		                               static_cast<double>(n));
	}

  private:
	double radius_ = 1.0;
};

struct QuadratureSettings {
	std::int64_t initial_nodes = 64;
	double rel_tol = 1e-12;
	std::int64_t max_nodes = std::int64_t{1} << 20;

	void validate() const
	{
		auto pow2 = [](std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; };
		if (initial_nodes < 8 || !pow2(initial_nodes))
			throw Error(ErrorKind::invalid_argument,
			            "initial_nodes must be a power of two >= 8");
		if (max_nodes < initial_nodes)
			throw Error(ErrorKind::invalid_argument,
			            "max_nodes must be >= initial_nodes");
		if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
			throw Error(ErrorKind::invalid_argument, "rel_tol must be positive");
	}
};

namespace detail {

template <ComplexFunction F>
complex evaluate_at_node(F const& f, complex z)
{
	complex v;
	try {
		v = f(z);
	} catch (Error const& e) {
		throw Error(ErrorKind::evaluation,
		            std::string("integrand evaluation failed: ") + e.what());
	}
	if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
		throw Error(ErrorKind::evaluation,
		            "integrand is not finite at a quadrature node");
	return v;
}

} // namespace detail

/// Equispaced trapezoidal approximation of the contour integral of f dz.
template <ComplexFunction F>
complex integrate_circle(F const& f, CirclePath const& path, std::int64_t nodes)
{
	if (nodes < 2)
		throw Error(ErrorKind::invalid_argument, "need at least two nodes");
	// dz = i z dtheta
	complex sum = 0.0;
	for (std::int64_t k = 0; k < nodes; ++k) {
		complex z = path.node(k, nodes);
		sum += detail::evaluate_at_node(f, z) * z;
	}
	return complex(0.0, 2.0 * std::numbers::pi / static_cast<double>(nodes)) *
	       sum;
}

struct AdaptiveResult {
	complex value;
	double err_estimate = 0.0;
	std::int64_t nodes = 0;
	/// mean |f| over the final node set times circumference
	double floor_scale = 0.0;
};

/**
 * Doubles the node count from settings.initial_nodes until successive
 * trapezoid sums differ by at most rel_tol * max(|I|, floor_scale). Samples of
 * the previous level are reused, so each doubling only evaluates the new odd
 * nodes. Throws ErrorKind::non_convergence once max_nodes is reached.
 */
template <ComplexFunction F>
AdaptiveResult integrate_adaptive(F const& f, CirclePath const& path,
                                  QuadratureSettings const& settings = {})
{
	settings.validate();

	std::int64_t n = settings.initial_nodes;
	complex weighted = 0.0; // sum of f(z) z over current nodes
	double abs_sum = 0.0;   // sum of |f(z)| over current nodes
	for (std::int64_t k = 0; k < n; ++k) {
		complex z = path.node(k, n);
		complex v = detail::evaluate_at_node(f, z);
		weighted += v * z;
		abs_sum += std::abs(v);
	}
	auto trapezoid = [](complex s, std::int64_t m) {
		return complex(0.0, 2.0 * std::numbers::pi / static_cast<double>(m)) * s;
	};
	complex previous = trapezoid(weighted, n);

	while (true) {
		if (2 * n > settings.max_nodes)
			throw Error(ErrorKind::non_convergence,
			            "adaptive quadrature did not converge within " +
			                std::to_string(settings.max_nodes) + " nodes");
		std::int64_t m = 2 * n;
		for (std::int64_t k = 1; k < m; k += 2) {
			complex z = path.node(k, m);
			complex v = detail::evaluate_at_node(f, z);
			weighted += v * z;
			abs_sum += std::abs(v);
		}
		complex current = trapezoid(weighted, m);
		double delta = std::abs(current - previous);
		double floor_scale =
		    abs_sum / static_cast<double>(m) * path.circumference();
		if (delta <= settings.rel_tol * std::max(std::abs(current), floor_scale))
			return {current, delta, m, floor_scale};
		previous = current;
		n = m;
	}
}

} // namespace plumbing
