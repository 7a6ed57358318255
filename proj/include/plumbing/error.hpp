#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plumbing {

enum class ErrorKind {
	invalid_argument,
	evaluation,
	non_convergence,
	constraint_violation,
	degenerate,
	precondition,
	exhausted,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
	switch (kind) {
	case ErrorKind::invalid_argument: return "invalid_argument";
	case ErrorKind::evaluation: return "evaluation";
	case ErrorKind::non_convergence: return "non_convergence";
	case ErrorKind::constraint_violation: return "constraint_violation";
	case ErrorKind::degenerate: return "degenerate";
	case ErrorKind::precondition: return "precondition";
	case ErrorKind::exhausted: return "exhausted";
	}
	return "unknown";
}

class Error : public std::runtime_error {
  public:
	Error(ErrorKind kind, const std::string& what)
	    : std::runtime_error(what), kind_(kind)
	{}

	ErrorKind kind() const noexcept { return kind_; }

  private:
	ErrorKind kind_;
};

} // namespace plumbing
