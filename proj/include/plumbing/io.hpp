#pragma once

// Text and JSON representations shared by the command-line tool.

#include "plumbing/counterexample.hpp"
#include "plumbing/error.hpp"
#include "plumbing/model.hpp"
#include "plumbing/pairing.hpp"
#include "plumbing/version.hpp"

#include <charconv>
#include <complex>
#include <json.hpp>
#include <string>
#include <string_view>

namespace plumbing {

namespace detail {

inline bool parse_double(std::string_view s, double& out)
{
	if (s.empty())
		return false;
	if (s.front() == '+')
		s.remove_prefix(1);
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
	return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

} // namespace detail

/// Parses "re", "re+imi", "re-imi" or "imi" (no spaces, exponents allowed).
inline complex parse_complex(std::string_view text)
{
	auto fail = [&]() -> complex {
		throw Error(ErrorKind::invalid_argument,
		            "malformed complex literal '" + std::string(text) + "'");
	};
	if (text.empty())
		return fail();
	double re = 0.0, im = 0.0;
	if (text.back() != 'i') {
		if (!detail::parse_double(text, re))
			return fail();
		return {re, 0.0};
	}
	std::string_view body = text.substr(0, text.size() - 1);
	// split at the last sign that is not leading and not part of an exponent
	std::size_t split = std::string_view::npos;
	for (std::size_t k = body.size(); k-- > 1;) {
		if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
		    body[k - 1] != 'E') {
			split = k;
			break;
		}
	}
	std::string_view re_part =
	    split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
	std::string_view im_part =
	    split == std::string_view::npos ? body : body.substr(split);
	if (!re_part.empty() && !detail::parse_double(re_part, re))
		return fail();
	if (im_part.empty() || im_part == "+")
		im = 1.0;
	else if (im_part == "-")
		im = -1.0;
	else if (!detail::parse_double(im_part, im))
		return fail();
	return {re, im};
}

inline nlohmann::ordered_json to_json(complex z)
{
	return {{"re", z.real()}, {"im", z.imag()}};
}

inline nlohmann::ordered_json to_json(ConstraintReport const& r)
{
	nlohmann::ordered_json j;
	for (std::size_t i = 0; i < r.margins.size(); ++i)
		j[std::string(ConstraintReport::names[i])] = r.margins[i];
	j["satisfied"] = r.satisfied;
	nlohmann::ordered_json violated = nlohmann::ordered_json::array();
	for (auto n : r.violated())
		violated.push_back(std::string(n));
	j["violated"] = violated;
	return j;
}

inline nlohmann::ordered_json to_json(PrePunctures const& p)
{
	return {{"A", to_json(p.A)}, {"B", to_json(p.B)}, {"C", to_json(p.C)},
	        {"R", to_json(p.R)}};
}

inline nlohmann::ordered_json to_json(QuadratureSettings const& s)
{
	return {{"initial_nodes", s.initial_nodes},
	        {"rel_tol", s.rel_tol},
	        {"max_nodes", s.max_nodes}};
}

inline nlohmann::ordered_json to_json(CertifyOptions const& o)
{
	return {
	    {"min_margin", o.min_margin},
	    {"schedule",
	     {{"c0", o.schedule.c0},
	      {"factor", o.schedule.factor},
	      {"steps", o.schedule.steps},
	      {"angle", o.schedule.angle}}},
	    {"quadrature", to_json(o.quadrature)},
	    {"injectivity_samples", o.injectivity_samples},
	    {"closed_form_zero_tol", kClosedFormZeroTol},
	    {"numeric_zero_tol", kNumericZeroTol},
	};
}

inline nlohmann::ordered_json to_json(std::vector<TraceEntry> const& trace)
{
	auto j = nlohmann::ordered_json::array();
	for (auto const& t : trace)
		j.push_back({{"C", to_json(t.C)}, {"reason", t.reason}});
	return j;
}

inline nlohmann::ordered_json to_json(Certificate const& c)
{
	nlohmann::ordered_json margins;
	for (std::size_t i = 0; i < c.constraint_report.margins.size(); ++i)
		margins[std::string(ConstraintReport::names[i])] =
		    c.constraint_report.margins[i];
	return {
	    {"params", to_json(c.pre)},
	    {"margins", margins},
	    {"closed_form", to_json(c.closed_form_value)},
	    {"numeric", to_json(c.numeric_value)},
	    {"numeric_err", c.numeric_err},
	    {"numeric_nodes", c.numeric_nodes},
	    {"vanishing_defect", to_json(c.vanishing_defect)},
	    {"injectivity_gap", c.injectivity_gap},
	    {"closed_form_scale", c.closed_form_scale},
	    {"defect_scale", c.defect_scale},
	    {"min_pole_distance", c.min_pole_distance},
	    {"trace", to_json(c.search_trace)},
	    {"tool_version", std::string(kToolVersion)},
	    {"settings", to_json(c.options)},
	};
}

inline complex complex_from_json(nlohmann::ordered_json const& j)
{
	return {j.at("re").get<double>(), j.at("im").get<double>()};
}

/// Reads back the parameter tuple of a certificate document.
inline PrePunctures params_from_json(nlohmann::ordered_json const& j)
{
	auto const& p = j.at("params");
	return {complex_from_json(p.at("A")), complex_from_json(p.at("B")),
	        complex_from_json(p.at("C")), complex_from_json(p.at("R"))};
}

} // namespace plumbing
