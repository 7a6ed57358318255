// Command-line front end: pair, certify, scan, selftest.
//
// Exit codes: 0 ok, 1 selftest failure, 2 parse/spec error,
// 3 constraint or precondition violation, 4 non-convergence,
// 5 certification schedule exhausted.

#include "plumbing/io.hpp"
#include "plumbing/plumbing.hpp"
#include "plumbing/scan.hpp"
#include "plumbing/selftest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace plumbing;
using json = nlohmann::ordered_json;

enum ExitCode : int {
	kOk = 0,
	kSelftestFailed = 1,
	kParseError = 2,
	kConstraint = 3,
	kNonConvergence = 4,
	kExhausted = 5,
};

int exit_code_for(ErrorKind kind)
{
	switch (kind) {
	case ErrorKind::invalid_argument: return kParseError;
	case ErrorKind::constraint_violation:
	case ErrorKind::precondition:
	case ErrorKind::degenerate: return kConstraint;
	case ErrorKind::evaluation:
	case ErrorKind::non_convergence: return kNonConvergence;
	case ErrorKind::exhausted: return kExhausted;
	}
	return kParseError;
}

void add_quadrature_flags(CLI::App* cmd, QuadratureSettings& q)
{
	cmd->add_option("--rel-tol", q.rel_tol, "Adaptive quadrature relative tolerance")
	    ->capture_default_str();
	cmd->add_option("--initial-nodes", q.initial_nodes, "Initial node count (power of 2)")
	    ->capture_default_str();
	cmd->add_option("--max-nodes", q.max_nodes, "Node count cap")->capture_default_str();
}

void emit(json const& j, std::string const& path)
{
	if (path.empty() || path == "-") {
		std::cout << j.dump(2) << '\n';
		return;
	}
	std::ofstream out(path);
	if (!out)
		throw Error(ErrorKind::invalid_argument, "cannot open output file " + path);
	out << j.dump(2) << '\n';
}

json error_json(Error const& e)
{
	return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
}

struct PairArgs {
	std::string A, B, C, R, scale = "1";
	std::string method = "both";
	QuadratureSettings quadrature;
};

int cmd_pair(PairArgs const& args)
{
	PrePunctures pre;
	TangentDirection dir;
	try {
		pre = {parse_complex(args.A), parse_complex(args.B),
		       parse_complex(args.C), parse_complex(args.R)};
		dir = TangentDirection(parse_complex(args.scale));
		args.quadrature.validate();
	} catch (Error const& e) {
		std::cerr << e.what() << '\n';
		std::cout << error_json(e).dump(2) << '\n';
		return exit_code_for(e.kind());
	}

	auto report = check_constraints(pre);
	json out;
	out["params"] = to_json(pre);
	out["constraints"] = to_json(report);
	json distances = json::array();
	for (double d : pole_distances(pre))
		distances.push_back(d);
	out["pole_distances"] = distances;

	if (!report.holds_with(kCheckingMargin)) {
		out["error"] = "constraint_violation";
		json violated = json::array();
		for (auto n : report.violated(kCheckingMargin))
			violated.push_back(std::string(n));
		out["violated"] = violated;
		std::cout << out.dump(2) << '\n';
		return kConstraint;
	}

	try {
		std::optional<PairingResult> numeric, closed;
		if (args.method == "numeric" || args.method == "both")
			numeric = pairing_numeric(pre, args.quadrature, dir);
		if (args.method == "closed_form" || args.method == "both")
			closed = pairing_closed_form(pre, dir);

		auto const& primary = numeric ? *numeric : *closed;
		out["value"] = to_json(primary.value);
		out["err_estimate"] = primary.err_estimate;
		out["method"] = args.method;
		out["scale"] = to_json(dir.scale());
		if (numeric) {
			out["numeric"] = {{"value", to_json(numeric->value)},
			                  {"err_estimate", numeric->err_estimate},
			                  {"nodes", numeric->nodes}};
		}
		if (closed)
			out["closed_form"] = {{"value", to_json(closed->value)}};
		if (numeric && closed) {
			double ref = std::max(std::abs(closed->value),
			                      std::abs(dir.scale()) * closed_form_scale(pre));
			out["relative_disagreement"] =
			    std::abs(numeric->value - closed->value) / ref;
		}
		out["settings"] = to_json(args.quadrature);
	} catch (Error const& e) {
		out["error"] = std::string(to_string(e.kind()));
		out["message"] = e.what();
		std::cout << out.dump(2) << '\n';
		return exit_code_for(e.kind());
	}
	std::cout << out.dump(2) << '\n';
	return kOk;
}

struct CertifyArgs {
	std::string B, R;
	std::string output;
	CertifyOptions options;
};

int cmd_certify(CertifyArgs const& args)
{
	try {
		complex B = parse_complex(args.B), R = parse_complex(args.R);
		auto cert = certify(B, R, args.options);
		json j{{"status", "certified"}};
		j.update(to_json(cert));
		emit(j, args.output);
		return kOk;
	} catch (ScheduleExhausted const& e) {
		json j{{"status", "exhausted"},
		       {"message", e.what()},
		       {"trace", to_json(e.trace())},
		       {"tool_version", std::string(kToolVersion)},
		       {"settings", to_json(args.options)}};
		std::cerr << e.what() << '\n';
		emit(j, args.output);
		return kExhausted;
	} catch (Error const& e) {
		std::cerr << e.what() << '\n';
		json j = error_json(e);
		j["status"] = "rejected";
		emit(j, args.output);
		return exit_code_for(e.kind());
	}
}

struct ScanArgs {
	std::string axis1 = "reA", axis2 = "imA";
	std::vector<double> range1, range2; // lo, hi, steps
	std::string A = "0", B = "0", C = "0", R = "0";
	std::string mode = "pairing_magnitude";
	std::string output;
	unsigned threads = 0;
};

AxisRange to_range(std::vector<double> const& v)
{
	if (v.size() != 3 || v[2] != std::floor(v[2]))
		throw Error(ErrorKind::invalid_argument, "range must be lo hi steps");
	return {v[0], v[1], static_cast<int>(v[2])};
}

int cmd_scan(ScanArgs const& args)
{
	try {
		SweepSpec spec;
		spec.axis1 = parse_axis(args.axis1);
		spec.axis2 = parse_axis(args.axis2);
		spec.range1 = to_range(args.range1);
		spec.range2 = to_range(args.range2);
		spec.fixed = {parse_complex(args.A), parse_complex(args.B),
		              parse_complex(args.C), parse_complex(args.R)};
		spec.mode = parse_scan_mode(args.mode);
		spec.validate();

		auto cells = run_scan(spec, args.threads);
		if (args.output.empty() || args.output == "-") {
			write_scan_csv(std::cout, cells);
		} else {
			std::ofstream out(args.output, std::ios::binary);
			if (!out)
				throw Error(ErrorKind::invalid_argument,
				            "cannot open output file " + args.output);
			write_scan_csv(out, cells);
		}
		return kOk;
	} catch (Error const& e) {
		std::cerr << "scan: " << e.what() << '\n';
		return kParseError;
	}
}

int cmd_selftest()
{
	auto start = std::chrono::steady_clock::now();
	auto checks = run_selftest();
	double seconds = std::chrono::duration<double>(
	                     std::chrono::steady_clock::now() - start)
	                     .count();
	int failed = 0;
	for (auto const& c : checks) {
		std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
		if (!c.passed) {
			std::cout << "  (" << c.detail << ')';
			++failed;
		}
		std::cout << '\n';
	}
	std::cout << checks.size() - failed << '/' << checks.size()
	          << " checks passed in " << seconds << " s\n";
	return failed == 0 ? kOk : kSelftestFailed;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Plumbing-coordinate degeneracy: pairing evaluation and "
	             "counterexample certification"};
	app.require_subcommand(1);
	app.set_version_flag("--version", std::string(kToolVersion));

	PairArgs pair;
	auto* pair_cmd = app.add_subcommand("pair", "Evaluate the pairing at a parameter tuple");
	pair_cmd->add_option("--A", pair.A, "Preimage A (complex literal, e.g. 0.7 or 0.1-0.2i)")->required();
	pair_cmd->add_option("--B", pair.B, "Preimage B")->required();
	pair_cmd->add_option("--C", pair.C, "Preimage C")->required();
	pair_cmd->add_option("--R", pair.R, "Map parameter R")->required();
	pair_cmd->add_option("--scale", pair.scale, "Cocycle prefactor")->capture_default_str();
	pair_cmd->add_option("--method", pair.method, "numeric, closed_form or both")
	    ->check(CLI::IsMember({"numeric", "closed_form", "both"}))
	    ->capture_default_str();
	add_quadrature_flags(pair_cmd, pair.quadrature);

	CertifyArgs cert;
	auto* cert_cmd = app.add_subcommand("certify", "Search for and certify a vanishing tuple");
	cert_cmd->add_option("--B", cert.B, "Seed B (|B| < 1)")->required();
	cert_cmd->add_option("--R", cert.R, "Seed R (|R| > 1)")->required();
	cert_cmd->add_option("--c0", cert.options.schedule.c0, "First |C| of the schedule")->capture_default_str();
	cert_cmd->add_option("--factor", cert.options.schedule.factor, "Growth factor of |C|")->capture_default_str();
	cert_cmd->add_option("--steps", cert.options.schedule.steps, "Schedule length")->capture_default_str();
	cert_cmd->add_option("--min-margin", cert.options.min_margin, "Required constraint margin")->capture_default_str();
	cert_cmd->add_option("--injectivity-samples", cert.options.injectivity_samples, "Unit circle samples for the injectivity gap")->capture_default_str();
	cert_cmd->add_option("-o,--output", cert.output, "Certificate path (default stdout)");
	add_quadrature_flags(cert_cmd, cert.options.quadrature);

	ScanArgs scan;
	auto* scan_cmd = app.add_subcommand("scan", "Sweep two parameter axes and write CSV");
	scan_cmd->add_option("--axis1", scan.axis1, "reA, imA, reB, imB, reC, imC, reR or imR")->capture_default_str();
	scan_cmd->add_option("--axis2", scan.axis2, "Second axis")->capture_default_str();
	scan_cmd->add_option("--range1", scan.range1, "lo hi steps")->expected(3)->required();
	scan_cmd->add_option("--range2", scan.range2, "lo hi steps")->expected(3)->required();
	scan_cmd->add_option("--A", scan.A, "Fixed A")->capture_default_str();
	scan_cmd->add_option("--B", scan.B, "Fixed B")->capture_default_str();
	scan_cmd->add_option("--C", scan.C, "Fixed C")->capture_default_str();
	scan_cmd->add_option("--R", scan.R, "Fixed R")->capture_default_str();
	scan_cmd->add_option("--mode", scan.mode, "pairing_magnitude or defect_magnitude")->capture_default_str();
	scan_cmd->add_option("--threads", scan.threads, "Worker threads (0 = hardware)")->capture_default_str();
	scan_cmd->add_option("-o,--output", scan.output, "CSV path (default stdout)");

	app.add_subcommand("selftest", "Run built-in consistency checks");

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		int code = app.exit(e);
		return code == 0 ? kOk : kParseError;
	}

	if (pair_cmd->parsed())
		return cmd_pair(pair);
	if (cert_cmd->parsed())
		return cmd_certify(cert);
	if (scan_cmd->parsed())
		return cmd_scan(scan);
	return cmd_selftest();
}
