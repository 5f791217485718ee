#pragma once

#include "errors.hpp"
#include "io.hpp"
#include "sweep_result.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mplex {

/// Parses `A:B:S` (A, A+S, ... up to B) or `A:B:logN` (N log-spaced points
/// from A to B inclusive). A bare number is a one-point grid. Linear values
/// are rounded to 12 significant digits so 0.2-step grids print cleanly.
inline std::vector<double> parse_grid(const std::string& text)
{
	auto number = [&](const std::string& tok) {
		std::size_t used = 0;
		double v = 0.0;
		try {
			v = std::stod(tok, &used);
		} catch (const std::exception&) {
			throw config_error("bad number '" + tok + "' in grid '" + text + "'");
		}
		if (used != tok.size() || !std::isfinite(v))
			throw config_error("bad number '" + tok + "' in grid '" + text + "'");
		return v;
	};

	std::vector<std::string> parts;
	std::size_t start = 0;
	for (std::size_t k = 0; k <= text.size(); ++k)
		if (k == text.size() || text[k] == ':') {
			parts.push_back(text.substr(start, k - start));
			start = k + 1;
		}
	if (parts.size() == 1)
		return {number(parts[0])};
	if (parts.size() != 3)
		throw config_error("grid must be `A:B:S` or `A:B:logN`, got '" + text + "'");

	const double a = number(parts[0]);
	const double b = number(parts[1]);
	if (!(b >= a))
		throw config_error("grid end must not precede its start in '" + text + "'");

	std::vector<double> out;
	if (parts[2].rfind("log", 0) == 0) {
		const std::string count = parts[2].substr(3);
		if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos)
			throw config_error("bad point count in '" + text + "'");
		const auto n = std::stoul(count);
		if (n == 0)
			throw config_error("log grid needs at least one point");
		if (!(a > 0.0))
			throw config_error("log grid needs a positive start");
		if (n == 1)
			return {a};
		const double la = std::log(a), lb = std::log(b);
		for (std::size_t k = 0; k < n; ++k)
			out.push_back(k == 0 ? a : k + 1 == n ? b : std::exp(la + (lb - la) * static_cast<double>(k) / static_cast<double>(n - 1)));
		return out;
	}

	const double step = number(parts[2]);
	if (!(step > 0.0))
		throw config_error("grid step must be positive in '" + text + "'");
	const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
	for (std::size_t k = 0; k < n; ++k)
		out.push_back(std::stod(format_value(a + static_cast<double>(k) * step, 12)));
	return out;
}

/// 64-bit FNV-1a, printed as 16 hex digits in provenance headers.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL)
{
	for (unsigned char c : bytes) {
		h ^= c;
		h *= 0x100000001b3ULL;
	}
	return h;
}

inline std::string hex64(std::uint64_t v)
{
	char buf[20];
	std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
	return buf;
}

inline void write_provenance(std::ostream& out, const Provenance& prov)
{
	out << "# seed=" << (prov.seed ? std::to_string(*prov.seed) : std::string("none")) << ", spec=" << prov.spec_hash
		<< ", version=" << prov.version << '\n';
}

/// `<row>,<col>,<metric>` rows in row-major grid order.
inline void write_sweep_csv(std::ostream& out, const SweepResult& r)
{
	write_provenance(out, r.provenance);
	out << r.rows.name << ',' << r.cols.name << ',' << r.metric << '\n';
	for (std::size_t i = 0; i < r.rows.values.size(); ++i)
		for (std::size_t j = 0; j < r.cols.values.size(); ++j)
			out << format_value(r.rows.values[i]) << ',' << format_value(r.cols.values[j]) << ','
				<< format_value(r.at(i, j)) << '\n';
}

} // namespace mplex
