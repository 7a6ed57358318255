#include "catch2/catch_amalgamated.hpp"

#include "oracles.hpp"
#include "plumbing/counterexample.hpp"
#include "plumbing/pairing.hpp"
#include "plumbing/sampling.hpp"

#include <numbers>

using namespace plumbing;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
PrePunctures const reference{0.7, 0.5, 10.0, 1.2};
// 4 pi i times the closed-form bracket at the reference tuple, 40-digit value
constexpr double reference_im = 7.404713220865537706966457267315806288884e-4;
} // namespace

TEST_CASE("integrand zeros and poles")
{
	CHECK(integrand(reference, 0.0) == complex(0.0));
	CHECK(integrand(reference, 1.2) == complex(0.0));
	try {
		integrand(reference, 0.7);
		FAIL("pole evaluation must throw");
	} catch (Error const& e) {
		CHECK(e.kind() == ErrorKind::evaluation);
	}
	CHECK_THROWS_AS(integrand(reference, 2.4 - 0.5), Error);
}

TEST_CASE("integrand matches the composed form and a frozen value")
{
	complex v = integrand(reference, 1.0);
	CHECK(std::abs(v - integrand_via_phi(reference, 1.0)) <= 1e-15 * std::abs(v));
	CHECK(std::abs(v - complex(-0.02187495727547407133970441463981515661102)) <= 1e-15);

	TupleSampler sample(21);
	for (int i = 0; i < 500; ++i) {
		auto pre = sample();
		complex z = std::polar(0.3 + 2.0 * (i % 7) / 7.0, 0.37 * i);
		bool near_pole = false;
		for (auto p : poles(pre))
			near_pole = near_pole || std::abs(z - p) < 1e-3;
		if (near_pole)
			continue;
		complex a = integrand(pre, z), b = integrand_via_phi(pre, z);
		CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
	}
}

TEST_CASE("closed form at the reference tuple")
{
	auto r = pairing_closed_form(reference);
	CHECK(r.method == PairingMethod::closed_form);
	CHECK(r.err_estimate == 0.0);
	CHECK(std::abs(r.value.real()) < 1e-18);
	CHECK(std::abs(r.value.imag() - reference_im) <= 1e-14 * closed_form_scale(reference));
	CHECK(r.min_pole_distance == Catch::Approx(0.3));
}

TEST_CASE("closed form equals 2 pi i times the inside residues")
{
	auto res = residues_inside(reference);
	REQUIRE(res.size() == 6);
	std::array<bool, 6> inside{true, false, true, false, false, false};
	for (std::size_t i = 0; i < 6; ++i)
		CHECK(res[i].inside_unit_circle == inside[i]);

	// residue at A, written out by hand
	complex A = 0.7, B = 0.5, C = 10.0, R = 1.2;
	complex res_a = 2.0 * A * (A - R) / ((A - B) * (A + B - 2.0 * R) * (A - C) * (A + C - 2.0 * R));
	CHECK(std::abs(res[0].residue - res_a) <= 1e-15 * std::abs(res_a));

	complex sum_inside = res[0].residue + res[2].residue;
	complex cf = pairing_closed_form(reference).value;
	CHECK(std::abs(complex(0.0, two_pi) * sum_inside - cf) <= 1e-14 * closed_form_scale(reference));

	complex total = 0.0;
	double scale = 0.0;
	for (auto const& r : res) {
		total += r.residue;
		scale = std::max(scale, std::abs(r.residue));
	}
	CHECK(std::abs(total) <= 1e-14 * scale);
}

TEST_CASE("residues agree with small-circle quadrature")
{
	TupleSampler sample(22);
	for (int t = 0; t < 30; ++t) {
		auto pre = sample();
		auto res = residues_inside(pre);
		auto f = [&](complex z) { return integrand(pre, z); };
		for (auto const& r : res) {
			double rho = 1e9;
			for (auto p : poles(pre))
				if (p != r.pole)
					rho = std::min(rho, std::abs(p - r.pole));
			complex want = oracle::residue_on_small_circle(f, r.pole, 0.4 * rho);
			CHECK(std::abs(r.residue - want) <= 1e-9 * std::max(1.0, std::abs(want)));
		}
	}
}

TEST_CASE("residues_inside error paths")
{
	CHECK_THROWS_AS(residues_inside({1.5, 0.5, 10.0, 1.2}), Error);
	// C = R makes C and 2R - C coincide while all margins stay positive
	try {
		residues_inside({0.7, 0.5, complex(1.2), complex(1.2)});
		FAIL("expected failure");
	} catch (Error const& e) {
		CHECK((e.kind() == ErrorKind::degenerate || e.kind() == ErrorKind::constraint_violation));
	}
	try {
		residues_inside({0.7, 0.5, complex(1.5, 0.0), complex(1.5, 0.0)});
		FAIL("expected repeated pole");
	} catch (Error const& e) {
		CHECK(e.kind() == ErrorKind::degenerate);
	}
}

TEST_CASE("closed form is symmetric in A and B")
{
	auto swapped = reference;
	std::swap(swapped.A, swapped.B);
	CHECK(pairing_closed_form(swapped).value == pairing_closed_form(reference).value);

	TupleSampler sample(23);
	for (int i = 0; i < 300; ++i) {
		auto pre = sample();
		auto sw = pre;
		std::swap(sw.A, sw.B);
		double d = std::abs(pairing_closed_form(pre).value - pairing_closed_form(sw).value);
		CHECK(d <= 4.0 * std::numeric_limits<double>::epsilon() * closed_form_scale(pre));
	}
}

TEST_CASE("closed form rejects degenerate configurations")
{
	try {
		pairing_closed_form({0.5, 0.5, 10.0, 1.2});
		FAIL("A = B must be degenerate");
	} catch (Error const& e) {
		CHECK(e.kind() == ErrorKind::degenerate);
	}
	CHECK_THROWS_AS(pairing_closed_form({0.5, 1.9, 10.0, 1.2}), Error);
	CHECK_THROWS_AS(pairing_closed_form({0.7, 0.5, 0.7, 1.2}), Error);
}

TEST_CASE("numeric pairing agrees with the closed form")
{
	auto num = pairing_numeric(reference);
	auto cf = pairing_closed_form(reference);
	CHECK(num.method == PairingMethod::numeric);
	CHECK(std::abs(num.value - cf.value) <= 1e-9 * std::abs(cf.value));
	CHECK(num.nodes >= 128);

	TupleSampler sample(24);
	for (int i = 0; i < 100; ++i) {
		auto pre = sample();
		auto n = pairing_numeric(pre);
		auto c = pairing_closed_form(pre);
		double ref = std::max(std::abs(c.value), closed_form_scale(pre));
		CHECK(std::abs(n.value - c.value) <= 1e-9 * ref);
	}
}

TEST_CASE("pairing is linear in the tangent direction")
{
	TangentDirection two(complex(2.0));
	auto n1 = pairing_numeric(reference);
	auto n2 = pairing_numeric(reference, {}, two);
	CHECK(n2.value == 2.0 * n1.value);
	CHECK(n2.err_estimate == 2.0 * n1.err_estimate);
	CHECK(n2.scale_applied == complex(2.0));

	TangentDirection rot(complex(0.3, -0.8));
	auto c1 = pairing_closed_form(reference);
	auto c2 = pairing_closed_form(reference, rot);
	CHECK(std::abs(c2.value - rot.scale() * c1.value) <= 1e-16 * std::abs(c2.value));
}

TEST_CASE("numeric pairing rejects constraint violations")
{
	try {
		pairing_numeric({1.5, 0.5, 10.0, 1.2});
		FAIL("expected constraint violation");
	} catch (Error const& e) {
		CHECK(e.kind() == ErrorKind::constraint_violation);
		CHECK(std::string(e.what()).find("m1") != std::string::npos);
	}
}

TEST_CASE("pole distances")
{
	auto d = pole_distances(reference);
	std::array<double, 6> want{0.3, 0.7, 0.5, 0.9, 9.0, 6.6};
	for (std::size_t i = 0; i < 6; ++i)
		CHECK(d[i] == Catch::Approx(want[i]));
}
