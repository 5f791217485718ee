#pragma once

#include <stdexcept>
#include <string>

namespace mplex {

/// Base of every error raised by the library. The CLI maps the subclasses
/// onto exit codes (config 2, data 3, numerical 4).
class error : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (negative d_x, phi > 1, ...).
class domain_error : public error
{
  public:
	using error::error;
};

/// Inconsistent shapes: layer size mismatch, missing trust entries, bad edges.
class structural_error : public error
{
  public:
	using error::error;
};

class parse_error : public error
{
  public:
	parse_error(const std::string& what, std::size_t line)
		: error("line " + std::to_string(line) + ": " + what)
		, line_(line)
	{
	}
	std::size_t line() const noexcept { return line_; }

  private:
	std::size_t line_;
};

class lookup_error : public error
{
  public:
	using error::error;
};

class numerical_error : public error
{
  public:
	using error::error;
};

/// lambda_2 is numerically zero where a connected graph is required.
class disconnected_error : public numerical_error
{
  public:
	using numerical_error::numerical_error;
};

/// No sign change of weak - strong on the requested d_x range.
class bracket_error : public numerical_error
{
  public:
	using numerical_error::numerical_error;
};

class generation_error : public numerical_error
{
  public:
	using numerical_error::numerical_error;
};

class config_error : public error
{
  public:
	using error::error;
};

class io_error : public error
{
  public:
	using error::error;
};

} // namespace mplex
