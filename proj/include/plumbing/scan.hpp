#pragma once

// Two-axis parameter sweeps written as CSV.

#include "plumbing/counterexample.hpp"
#include "plumbing/error.hpp"
#include "plumbing/model.hpp"
#include "plumbing/pairing.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace plumbing {

enum class Axis { re_A, im_A, re_B, im_B, re_C, im_C, re_R, im_R };

inline constexpr std::array<std::string_view, 8> kAxisNames{
    "reA", "imA", "reB", "imB", "reC", "imC", "reR", "imR"};

inline Axis parse_axis(std::string_view name)
{
	for (std::size_t i = 0; i < kAxisNames.size(); ++i)
		if (kAxisNames[i] == name)
			return static_cast<Axis>(i);
	throw Error(ErrorKind::invalid_argument,
	            "unknown axis '" + std::string(name) +
	                "' (expected reA, imA, reB, imB, reC, imC, reR or imR)");
}

enum class ScanMode { pairing_magnitude, defect_magnitude };

inline ScanMode parse_scan_mode(std::string_view name)
{
	if (name == "pairing_magnitude")
		return ScanMode::pairing_magnitude;
	if (name == "defect_magnitude")
		return ScanMode::defect_magnitude;
	throw Error(ErrorKind::invalid_argument,
	            "unknown scan mode '" + std::string(name) + "'");
}

struct AxisRange {
	double lo = 0.0;
	double hi = 1.0;
	int steps = 2;

	double at(int i) const
	{
		return lo + (hi - lo) * static_cast<double>(i) /
		                static_cast<double>(steps - 1);
	}
};

struct SweepSpec {
	Axis axis1 = Axis::re_A;
	Axis axis2 = Axis::im_A;
	AxisRange range1;
	AxisRange range2;
	PrePunctures fixed{};
	ScanMode mode = ScanMode::pairing_magnitude;

	void validate() const
	{
		if (axis1 == axis2)
			throw Error(ErrorKind::invalid_argument, "scan axes must differ");
		for (auto const* r : {&range1, &range2}) {
			if (r->steps < 2)
				throw Error(ErrorKind::invalid_argument, "scan needs steps >= 2");
			if (!(r->lo < r->hi) || !std::isfinite(r->lo) || !std::isfinite(r->hi))
				throw Error(ErrorKind::invalid_argument, "scan needs lo < hi");
		}
	}
};

inline void set_axis(PrePunctures& pre, Axis axis, double v)
{
	complex* target = nullptr;
	switch (axis) {
	case Axis::re_A: case Axis::im_A: target = &pre.A; break;
	case Axis::re_B: case Axis::im_B: target = &pre.B; break;
	case Axis::re_C: case Axis::im_C: target = &pre.C; break;
	case Axis::re_R: case Axis::im_R: target = &pre.R; break;
	}
	bool real_part = static_cast<int>(axis) % 2 == 0;
	if (real_part)
		target->real(v);
	else
		target->imag(v);
}

struct ScanCell {
	double x = 0.0;
	double y = 0.0;
	std::optional<complex> value;
};

inline ScanCell evaluate_cell(SweepSpec const& spec, int i, int j)
{
	ScanCell cell{spec.range1.at(i), spec.range2.at(j), std::nullopt};
	PrePunctures pre = spec.fixed;
	set_axis(pre, spec.axis1, cell.x);
	set_axis(pre, spec.axis2, cell.y);
	if (!check_constraints(pre).holds_with(kCheckingMargin))
		return cell;
	try {
		cell.value = spec.mode == ScanMode::pairing_magnitude
		                 ? pairing_closed_form(pre).value
		                 : vanishing_defect(pre);
	} catch (Error const&) {
		cell.value.reset();
	}
	return cell;
}

/// Grid cells in row-major order (axis1 outer). Evaluation is spread over
/// `threads` workers; results land in fixed slots, so output order never
/// depends on scheduling.
inline std::vector<ScanCell> run_scan(SweepSpec const& spec, unsigned threads = 0)
{
	spec.validate();
	int const n1 = spec.range1.steps, n2 = spec.range2.steps;
	std::size_t const total = static_cast<std::size_t>(n1) * n2;
	std::vector<ScanCell> cells(total);
	if (threads == 0)
		threads = std::max(1u, std::thread::hardware_concurrency());
	threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

	auto work = [&](unsigned t) {
		for (std::size_t idx = t; idx < total; idx += threads)
			cells[idx] = evaluate_cell(spec, static_cast<int>(idx / n2),
			                           static_cast<int>(idx % n2));
	};
	std::vector<std::jthread> pool;
	for (unsigned t = 1; t < threads; ++t)
		pool.emplace_back(work, t);
	work(0);
	pool.clear();
	return cells;
}

namespace detail {

inline void append_number(std::string& out, double v)
{
	char buf[64];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
	out.append(buf, ptr);
}

} // namespace detail

inline constexpr std::string_view kScanHeader =
    "axis1,axis2,value_re,value_im,magnitude,constraints_ok";

inline void write_scan_csv(std::ostream& os, std::vector<ScanCell> const& cells)
{
	std::string line;
	os << kScanHeader << '\n';
	for (auto const& c : cells) {
		line.clear();
		detail::append_number(line, c.x);
		line += ',';
		detail::append_number(line, c.y);
		line += ',';
		if (c.value) {
			detail::append_number(line, c.value->real());
			line += ',';
			detail::append_number(line, c.value->imag());
			line += ',';
			detail::append_number(line, std::abs(*c.value));
			line += ",1";
		} else {
			line += ",,,0";
		}
		os << line << '\n';
	}
}

} // namespace plumbing
