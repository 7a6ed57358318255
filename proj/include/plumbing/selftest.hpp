#pragma once

// Built-in consistency checks run by `plumbing selftest`.

#include "plumbing/contour.hpp"
#include "plumbing/counterexample.hpp"
#include "plumbing/model.hpp"
#include "plumbing/pairing.hpp"
#include "plumbing/sampling.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace plumbing {

struct SelfCheck {
	std::string name;
	bool passed = false;
	std::string detail;
};

namespace detail {

inline SelfCheck run_check(std::string name, std::function<std::string()> body)
{
	// body returns an empty string on success, a description otherwise
	SelfCheck c{std::move(name), false, {}};
	try {
		c.detail = body();
		c.passed = c.detail.empty();
	} catch (std::exception const& e) {
		c.detail = std::string("exception: ") + e.what();
	}
	return c;
}

inline std::string describe(std::string_view what, double got, double limit)
{
	std::ostringstream os;
	os.precision(3);
	os << what << ' ' << got << " exceeds " << limit;
	return os.str();
}

} // namespace detail

inline std::vector<SelfCheck> run_selftest(int random_tuples = 200)
{
	constexpr double two_pi = 2.0 * std::numbers::pi;
	auto const unit = CirclePath::unit();
	std::vector<SelfCheck> out;

	out.push_back(detail::run_check("contour: integral of dz/z is 2 pi i", [&] {
		complex v = integrate_circle([](complex z) { return 1.0 / z; }, unit, 64);
		double err = std::abs(v - complex(0.0, two_pi)) / two_pi;
		return err <= 1e-13 ? std::string{} : detail::describe("relative error", err, 1e-13);
	}));

	out.push_back(detail::run_check("contour: integral of z^k dz vanishes for k != -1", [&] {
		for (int k = -5; k <= 5; ++k) {
			if (k == -1)
				continue;
			complex v = integrate_circle([k](complex z) { return std::pow(z, k); },
			                             unit, 64);
			if (std::abs(v) > 1e-13)
				return detail::describe("k=" + std::to_string(k) + " |integral|",
				                        std::abs(v), 1e-13);
		}
		return std::string{};
	}));

	out.push_back(detail::run_check("integrand: six-pole form matches phi form", [&] {
		TupleSampler sample(11);
		for (int n = 0; n < random_tuples; ++n) {
			auto pre = sample();
			for (int k = 0; k < 8; ++k) {
				complex z = std::polar(1.0, 0.7 * k + 0.1);
				complex a = integrand(pre, z), b = integrand_via_phi(pre, z);
				double rel = std::abs(a - b) / std::abs(b);
				if (rel > 1e-12)
					return detail::describe("relative difference", rel, 1e-12);
			}
		}
		return std::string{};
	}));

	out.push_back(detail::run_check("pairing: numeric agrees with closed form", [&] {
		TupleSampler sample(12);
		for (int n = 0; n < random_tuples; ++n) {
			auto pre = sample();
			auto num = pairing_numeric(pre);
			auto cf = pairing_closed_form(pre);
			double rel = std::abs(num.value - cf.value) /
			             std::max(std::abs(cf.value), closed_form_scale(pre));
			if (rel > 1e-9)
				return detail::describe("relative disagreement", rel, 1e-9);
		}
		return std::string{};
	}));

	out.push_back(detail::run_check("pairing: symmetric under A <-> B", [&] {
		TupleSampler sample(13);
		for (int n = 0; n < random_tuples; ++n) {
			auto pre = sample();
			auto swapped = pre;
			std::swap(swapped.A, swapped.B);
			double d = std::abs(pairing_closed_form(pre).value -
			                    pairing_closed_form(swapped).value);
			double tol = 4.0 * std::numeric_limits<double>::epsilon() *
			             closed_form_scale(pre);
			if (d > tol)
				return detail::describe("asymmetry", d, tol);
		}
		return std::string{};
	}));

	out.push_back(detail::run_check("residues: inside sum gives closed form, total sum vanishes", [&] {
		TupleSampler sample(14);
		for (int n = 0; n < random_tuples; ++n) {
			auto pre = sample();
			auto res = residues_inside(pre);
			complex inside = 0.0, total = 0.0;
			double scale = 0.0;
			for (auto const& r : res) {
				total += r.residue;
				scale = std::max(scale, std::abs(r.residue));
				if (r.inside_unit_circle)
					inside += r.residue;
			}
			if (std::abs(total) > 1e-12 * scale)
				return detail::describe("residue sum", std::abs(total), 1e-12 * scale);
			complex cf = pairing_closed_form(pre).value;
			double rel = std::abs(complex(0.0, two_pi) * inside - cf) /
			             std::max(std::abs(cf), closed_form_scale(pre));
			if (rel > 1e-12)
				return detail::describe("relative difference", rel, 1e-12);
		}
		return std::string{};
	}));

	out.push_back(detail::run_check("solve_A: defect vanishes at the solved A", [&] {
		TupleSampler sample(15);
		for (int n = 0; n < random_tuples; ++n) {
			auto seed = sample();
			PrePunctures pre{solve_A(seed.B, seed.C, seed.R), seed.B, seed.C, seed.R};
			double d = std::abs(vanishing_defect(pre));
			double tol = 1e-12 * degree4_scale(pre);
			if (d > tol)
				return detail::describe("|defect|", d, tol);
		}
		return std::string{};
	}));

	out.push_back(detail::run_check("certify: default seed B=0.5, R=1.2", [&] {
		auto cert = certify(complex(0.5), complex(1.2));
		if (!certificate_holds(cert))
			return std::string("certificate invariants fail");
		auto again = pairing_numeric(cert.pre, cert.options.quadrature);
		if (std::abs(again.value - cert.numeric_value) > cert.numeric_err)
			return std::string("numeric pairing not reproducible");
		return std::string{};
	}));

	return out;
}

} // namespace plumbing
