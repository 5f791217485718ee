#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mplex {

inline constexpr const char* version_string = "0.3.1";

struct Axis
{
	std::string name;
	std::vector<double> values;
};

/// Inputs needed to regenerate a result.
struct Provenance
{
	std::optional<std::uint64_t> seed;
	std::string spec_hash;
	std::string version = version_string;
};

/// Metric over a (row, column) grid, stored row-major.
struct SweepResult
{
	Axis rows;
	Axis cols;
	std::string metric;
	std::vector<double> values;
	Provenance provenance;

	double at(std::size_t r, std::size_t c) const { return values.at(r * cols.values.size() + c); }
	double& at(std::size_t r, std::size_t c) { return values.at(r * cols.values.size() + c); }
};

} // namespace mplex
