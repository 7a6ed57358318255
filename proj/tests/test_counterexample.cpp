#include "catch2/catch_amalgamated.hpp"

#include "oracles.hpp"
#include "plumbing/counterexample.hpp"
#include "plumbing/sampling.hpp"

#include <random>

using namespace plumbing;
using Catch::Approx;

TEST_CASE("solve_A examples")
{
	complex A = solve_A(0.5, 10.0, 1.2);
	CHECK(A.real() == Approx(53.2 / 76.6).epsilon(1e-15));
	CHECK(A.real() == Approx(0.6945169712793733681).epsilon(1e-15));
	CHECK(A.imag() == 0.0);

	CHECK(solve_A(1.2, 10.0, 1.2) == complex(0.0));
	CHECK(solve_A(0.5, 2.4, 1.2) == complex(0.0));

	// C^2 - 2RC + RB = 0 at C = 2 for R = 1, B = 0
	try {
		solve_A(0.0, 2.0, 1.0);
		FAIL("expected degenerate denominator");
	} catch (Error const& e) {
		CHECK(e.kind() == ErrorKind::degenerate);
	}
}

TEST_CASE("vanishing_defect examples")
{
	std::mt19937_64 rng(31);
	std::normal_distribution<double> g;
	for (int i = 0; i < 50; ++i) {
		complex A(g(rng), g(rng));
		CHECK(vanishing_defect({A, A, complex(g(rng), g(rng)), complex(g(rng), g(rng))}) == complex(0.0));
	}

	PrePunctures solved{solve_A(0.5, 10.0, 1.2), 0.5, 10.0, 1.2};
	CHECK(std::abs(vanishing_defect(solved)) <= 1e-12 * degree4_scale(solved));
	CHECK(std::abs(pairing_closed_form(solved).value) <= 1e-12 * closed_form_scale(solved));

	complex d = vanishing_defect({0.7, 0.5, 10.0, 1.2});
	CHECK(d.real() == Approx(-0.084).epsilon(1e-13));
	CHECK(pairing_closed_form({0.7, 0.5, 10.0, 1.2}).value != complex(0.0));
}

TEST_CASE("solve_A matches the non-trivial root of a fitted quadratic")
{
	// vanishing_defect is quadratic in A with roots B and solve_A(B, C, R)
	TupleSampler sample(32);
	for (int i = 0; i < 200; ++i) {
		auto seed = sample();
		auto defect_in_A = [&](complex A) { return vanishing_defect({A, seed.B, seed.C, seed.R}); };
		auto coeffs = oracle::fit_quadratic(defect_in_A, complex(-1.0, 0.5), complex(0.25, -0.75), complex(1.5, 1.0));
		auto roots = oracle::quadratic_roots(coeffs);
		complex other = std::abs(roots[0] - seed.B) > std::abs(roots[1] - seed.B) ? roots[0] : roots[1];
		complex A = solve_A(seed.B, seed.C, seed.R);
		double s = std::abs(seed.B) + std::abs(seed.C) + std::abs(seed.R);
		INFO("B=" << seed.B << " C=" << seed.C << " R=" << seed.R);
		CHECK(std::abs(A - other) <= 1e-8 * std::max(1.0, s));
	}
}

TEST_CASE("defect vanishes at the solved A across the seed domain")
{
	TupleSampler sample(33);
	for (int i = 0; i < 1000; ++i) {
		auto seed = sample();
		PrePunctures pre{solve_A(seed.B, seed.C, seed.R), seed.B, seed.C, seed.R};
		CHECK(std::abs(vanishing_defect(pre)) <= 1e-12 * degree4_scale(pre));
	}
}

TEST_CASE("limit_gap follows its series")
{
	complex B = 0.5, R = 1.2;
	CHECK(limit_gap(B, R, 10.0) == Approx(0.005483028720626631854).epsilon(1e-12));

	// A = (R-B) (1 - RB / (C^2 - 2RC + RB)), so gap = |R-B||RB| / |C^2 - 2RC + RB|
	for (double C : {10.0, 100.0, 1e3, 1e4, 1e5}) {
		double series = std::abs((R - B) * R * B / (C * C - 2.0 * R * C + R * B));
		CHECK(limit_gap(B, R, C) == Approx(series).epsilon(1e-9).margin(8 * std::numeric_limits<double>::epsilon()));
	}
	CHECK(limit_gap(B, R, 100.0) < limit_gap(B, R, 10.0) / 10.0);

	// gap * |C| stays bounded (it decays) along the default schedule
	CSchedule schedule;
	double bound = limit_gap(B, R, schedule.at(0)) * std::abs(schedule.at(0));
	for (int k = 1; k < schedule.steps; ++k) {
		complex C = schedule.at(k);
		CHECK(limit_gap(B, R, C) * std::abs(C) <= bound);
	}
	// the rate is 1/|C|^2
	for (double C : {1e2, 1e3, 1e4})
		CHECK(limit_gap(B, R, C) * C * C == Approx(std::abs((R - B) * R * B)).epsilon(0.05));
}

TEST_CASE("certify the default seed")
{
	auto cert = certify(0.5, 1.2);
	CHECK(cert.pre.B == complex(0.5));
	CHECK(cert.pre.R == complex(1.2));
	CHECK(std::abs(cert.pre.C) <= 16.0);
	CHECK(std::abs(cert.pre.A - 0.7) < 0.02);
	CHECK(cert.constraint_report.satisfied);
	CHECK(cert.constraint_report.holds_with(1e-2));
	CHECK(certificate_holds(cert));
	CHECK(cert.injectivity_gap >= injectivity_lower_bound(cert.pre.map()) - 1e-12);
	CHECK(cert.search_trace.back().reason == "certified");

	// re-derive each field from the module functions
	CHECK(cert.pre.A == solve_A(cert.pre.B, cert.pre.C, cert.pre.R));
	CHECK(cert.vanishing_defect == vanishing_defect(cert.pre));
	CHECK(std::abs(vanishing_defect(cert.pre)) <= 1e-12 * degree4_scale(cert.pre));
	CHECK(std::abs(cert.closed_form_value) <= 1e-12 * cert.closed_form_scale);
	auto again = pairing_numeric(cert.pre, cert.options.quadrature);
	CHECK(std::abs(again.value - cert.numeric_value) <= cert.numeric_err);
	CHECK(std::abs(cert.numeric_value) <= std::max(cert.numeric_err, 1e-8 * cert.closed_form_scale));
}

TEST_CASE("the certified zero is isolated")
{
	auto cert = certify(0.5, 1.2);
	double scale = cert.closed_form_scale;
	for (int k = 0; k < 8; ++k) {
		auto pre = cert.pre;
		pre.A += std::polar(1e-3, k * std::numbers::pi / 4.0);
		CHECK(std::abs(pairing_closed_form(pre).value) >= 1e-7 * scale);
	}
}

TEST_CASE("certify preconditions and exhaustion")
{
	try {
		certify(0.5, 2.0);
		FAIL("expected precondition error");
	} catch (Error const& e) {
		CHECK(e.kind() == ErrorKind::precondition);
	}
	CHECK_THROWS_AS(certify(1.2, 1.5), Error);
	CHECK_THROWS_AS(certify(0.5, 0.9), Error);

	try {
		certify(0.0, 1.1);
		FAIL("expected schedule exhaustion");
	} catch (ScheduleExhausted const& e) {
		CHECK(e.kind() == ErrorKind::exhausted);
		CHECK(e.trace().size() == 33);
		for (auto const& t : e.trace())
			CHECK(t.reason.find("m1") != std::string::npos);
	}
}

TEST_CASE("certify with complex seeds")
{
	complex B(0.3, 0.4), R(1.1, 0.3);
	REQUIRE(std::abs(R - B) < 1.0);
	auto cert = certify(B, R);
	CHECK(certificate_holds(cert));
	CHECK(cert.options.schedule.angle == 0.0);
	CHECK(std::abs(cert.pre.A - (R - B)) < 0.1);
}

TEST_CASE("ray rotation")
{
	// the searched segment starts at c0, so a small 2R never blocks the real ray
	CHECK(choose_ray_angle(1.2, 8.0, 1e-2) == 0.0);
	// 2R = 10 sits on the positive real ray beyond c0
	double angle = choose_ray_angle(5.0, 8.0, 1e-2);
	CHECK(angle == Approx(0.1));
	CSchedule s{8.0, 2.0, 10, angle};
	for (int k = 0; k < s.steps; ++k)
		CHECK(std::abs(s.at(k) - 10.0) >= 1e-2);
}
