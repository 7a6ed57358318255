#pragma once

// Search for parameter tuples satisfying the position constraints at which
// the pairing vanishes. For fixed B, R the vanishing locus is solved for A in
// closed form; C is walked outward along a ray until the solved A lands in the
// unit disc with every margin at least min_margin.

#include "plumbing/contour.hpp"
#include "plumbing/error.hpp"
#include "plumbing/model.hpp"
#include "plumbing/pairing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace plumbing {

/// Non-trivial root in A of vanishing_defect (the other root is A = B).
inline complex solve_A(complex B, complex C, complex R)
{
	complex den = C * C - 2.0 * R * C + R * B;
	if (den == complex(0.0))
		throw Error(ErrorKind::degenerate, "solve_A denominator C^2-2RC+RB vanishes");
	return C * (R - B) * (C - 2.0 * R) / den;
}

/// A(A-R)(B-C)(B+C-2R) - B(B-R)(A-C)(A+C-2R); divisible by A - B.
inline complex vanishing_defect(PrePunctures const& pre)
{
	auto const& [A, B, C, R] = pre;
	complex two_r = 2.0 * R;
	return A * (A - R) * (B - C) * (B + C - two_r) -
	       B * (B - R) * (A - C) * (A + C - two_r);
}

/// Magnitude scale of vanishing_defect, which is homogeneous of degree 4.
inline double degree4_scale(PrePunctures const& pre)
{
	double s = std::abs(pre.A) + std::abs(pre.B) + std::abs(pre.C) +
	           std::abs(pre.R);
	return s * s * s * s;
}

/// Distance of the solved A from its limit R - B as C grows.
inline double limit_gap(complex B, complex R, complex C)
{
	return std::abs(solve_A(B, C, R) - (R - B));
}

/// C_k = c0 * factor^k * e^{i angle}, k = 0 .. steps-1.
struct CSchedule {
	double c0 = 8.0;
	double factor = 2.0;
	int steps = 33;
	/// ray direction; certify() rotates it away from 2R when needed
	double angle = 0.0;

	void validate() const
	{
		if (!(c0 > 0.0) || !(factor > 1.0) || steps < 1)
			throw Error(ErrorKind::invalid_argument,
			            "schedule needs c0 > 0, factor > 1, steps >= 1");
	}

	complex at(int k) const
	{
		return std::polar(c0 * std::pow(factor, k), angle);
	}
};

inline constexpr double kRayRotation = 0.1;

/// Rotates the ray by kRayRotation until the searched part of it, {s e^{i
/// angle} : s >= c0}, stays at least min_margin away from 2R.
inline double choose_ray_angle(complex R, double c0, double min_margin,
                               double start_angle = 0.0)
{
	complex target = 2.0 * R;
	double angle = start_angle;
	for (int i = 0; i < 63; ++i) {
		complex dir = std::polar(1.0, angle);
		double s = std::max(c0, (target * std::conj(dir)).real());
		if (std::abs(target - s * dir) >= min_margin)
			return angle;
		angle += kRayRotation;
	}
	return angle;
}

struct TraceEntry {
	complex C;
	std::string reason;
};

struct CertifyOptions {
	CSchedule schedule{};
	double min_margin = 1e-2;
	QuadratureSettings quadrature{};
	int injectivity_samples = 512;
};

struct Certificate {
	PrePunctures pre;
	ConstraintReport constraint_report;
	complex closed_form_value;
	complex numeric_value;
	double numeric_err = 0.0;
	std::int64_t numeric_nodes = 0;
	complex vanishing_defect;
	double injectivity_gap = 0.0;
	double closed_form_scale = 0.0;
	double defect_scale = 0.0;
	double min_pole_distance = 0.0;
	std::vector<TraceEntry> search_trace;
	CertifyOptions options;
};

inline constexpr double kClosedFormZeroTol = 1e-12;
inline constexpr double kNumericZeroTol = 1e-8;

/// Certificate invariants that do not depend on the search itself.
inline bool certificate_holds(Certificate const& c)
{
	return c.constraint_report.satisfied &&
	       c.constraint_report.holds_with(c.options.min_margin) &&
	       std::abs(c.closed_form_value) <=
	           kClosedFormZeroTol * c.closed_form_scale &&
	       std::abs(c.numeric_value) <=
	           std::max(c.numeric_err, kNumericZeroTol * c.closed_form_scale) &&
	       c.injectivity_gap > 0.0;
}

class ScheduleExhausted : public Error {
  public:
	explicit ScheduleExhausted(std::vector<TraceEntry> trace)
	    : Error(ErrorKind::exhausted,
	            "C schedule exhausted after " + std::to_string(trace.size()) +
	                " attempts without a certificate"),
	      trace_(std::move(trace))
	{}

	std::vector<TraceEntry> const& trace() const noexcept { return trace_; }

  private:
	std::vector<TraceEntry> trace_;
};

namespace detail {

inline std::string format_margin(std::string_view name, double value)
{
	std::ostringstream os;
	os.precision(6);
	os << name << '=' << value;
	return std::string(os.str());
}

} // namespace detail

inline void check_seed(complex B, complex R, double min_margin)
{
	if (!(min_margin > 0.0) || !(min_margin < 1.0))
		throw Error(ErrorKind::invalid_argument, "min_margin must lie in (0, 1)");
	if (!(std::abs(B) < 1.0))
		throw Error(ErrorKind::precondition, "seed requires |B| < 1");
	if (!(std::abs(R) > 1.0))
		throw Error(ErrorKind::precondition, "seed requires |R| > 1");
	// |R - B| >= |R| - |B| > |R| - 1, so no B in the disc satisfies
	// |R - B| < 1 - min_margin unless |R| < 2 - min_margin.
	if (!(std::abs(R) < 2.0 - min_margin))
		throw Error(ErrorKind::precondition,
		            "seed condition |R-B| < 1 is unsatisfiable: |R| >= 2 - min_margin");
}

/**
 * Walks C through the schedule, solving for A at each step. The first C whose
 * tuple keeps every constraint margin and every pole-to-circle distance at or
 * above min_margin, and whose pairings pass the certificate zero tests, is
 * returned with both pairing values and the circle injectivity gap.
 *
 * Seeds with |R - B| >= 1 are searched, not rejected: A tends to R - B, so
 * they exhaust the schedule and the trace shows why.
 */
inline Certificate certify(complex B, complex R, CertifyOptions options = {})
{
	options.schedule.validate();
	options.quadrature.validate();
	check_seed(B, R, options.min_margin);
	options.schedule.angle = choose_ray_angle(R, options.schedule.c0,
	                                          options.min_margin,
	                                          options.schedule.angle);

	std::vector<TraceEntry> trace;
	for (int k = 0; k < options.schedule.steps; ++k) {
		complex C = options.schedule.at(k);
		complex A;
		try {
			A = solve_A(B, C, R);
		} catch (Error const& e) {
			trace.push_back({C, e.what()});
			continue;
		}
		PrePunctures pre{A, B, C, R};

		auto report = check_constraints(pre);
		if (!report.holds_with(options.min_margin)) {
			std::string reason;
			for (std::size_t i = 0; i < report.margins.size(); ++i)
				if (!(report.margins[i] >= options.min_margin))
					reason += (reason.empty() ? "" : "; ") +
					          detail::format_margin(ConstraintReport::names[i],
					                                report.margins[i]);
			trace.push_back({C, "margin below min_margin: " + reason});
			continue;
		}
		double pole_gap = min_pole_distance(pre);
		if (!(pole_gap >= options.min_margin)) {
			trace.push_back(
			    {C, detail::format_margin("pole distance", pole_gap) +
			            " below min_margin"});
			continue;
		}

		Certificate cert;
		try {
			images(pre);
			cert.closed_form_value = pairing_closed_form(pre).value;
			auto numeric = pairing_numeric(pre, options.quadrature);
			cert.numeric_value = numeric.value;
			cert.numeric_err = numeric.err_estimate;
			cert.numeric_nodes = numeric.nodes;
		} catch (Error const& e) {
			trace.push_back({C, e.what()});
			continue;
		}
		cert.pre = pre;
		cert.constraint_report = report;
		cert.vanishing_defect = vanishing_defect(pre);
		cert.closed_form_scale = closed_form_scale(pre);
		cert.defect_scale = degree4_scale(pre);
		cert.min_pole_distance = pole_gap;
		cert.injectivity_gap =
		    check_circle_injectivity(pre.map(), options.injectivity_samples);
		cert.options = options;
		if (!certificate_holds(cert)) {
			trace.push_back({C, "pairing zero test failed"});
			continue;
		}
		trace.push_back({C, "certified"});
		cert.search_trace = std::move(trace);
		return cert;
	}
	throw ScheduleExhausted(std::move(trace));
}

} // namespace plumbing
