#pragma once

#include "io.hpp"
#include "sweep_result.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace mplex::svg {

struct Rgb
{
	int r, g, b;
};

/// Eight evenly spaced stops sampled from the viridis map, dark to light.
inline constexpr std::array<Rgb, 8> color_stops{{
	{0x44, 0x01, 0x54},
	{0x46, 0x32, 0x7e},
	{0x36, 0x5c, 0x8d},
	{0x27, 0x7f, 0x8e},
	{0x1f, 0xa1, 0x87},
	{0x4a, 0xc1, 0x6d},
	{0xa0, 0xda, 0x39},
	{0xfd, 0xe7, 0x25},
}};

/// Linear interpolation between the stops for t in [0, 1].
inline std::string ramp(double t)
{
	t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
	const double pos = t * static_cast<double>(color_stops.size() - 1);
	const auto k = std::min(static_cast<std::size_t>(pos), color_stops.size() - 2);
	const double f = pos - static_cast<double>(k);
	auto mix = [&](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
	const auto& lo = color_stops[k];
	const auto& hi = color_stops[k + 1];
	char buf[8];
	std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b));
	return buf;
}

inline std::string num(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.2f", v);
	return buf;
}

inline std::string label(double v) { return format_value(v, 4); }

inline void open(std::ostream& out, int width, int height)
{
	out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
		<< "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
		<< "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
		<< "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
}

inline void text(std::ostream& out, double x, double y, const std::string& s, const char* anchor = "middle")
{
	out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
}

/// Heatmap of a sweep: columns along x, rows along y (first row at the
/// bottom), color legend on the right.
inline void heatmap(std::ostream& out, const SweepResult& r, const std::string& title)
{
	const int width = 720, height = 560;
	const double left = 70, top = 40, plot_w = 520, plot_h = 440;
	const std::size_t nr = r.rows.values.size(), nc = r.cols.values.size();
	const double vmin = *std::min_element(r.values.begin(), r.values.end());
	const double vmax = *std::max_element(r.values.begin(), r.values.end());
	const double span = vmax > vmin ? vmax - vmin : 1.0;
	const double cw = plot_w / static_cast<double>(nc), ch = plot_h / static_cast<double>(nr);

	open(out, width, height);
	text(out, left + plot_w / 2, 24, title);
	for (std::size_t i = 0; i < nr; ++i)
		for (std::size_t j = 0; j < nc; ++j)
			out << "<rect x=\"" << num(left + static_cast<double>(j) * cw) << "\" y=\""
				<< num(top + plot_h - static_cast<double>(i + 1) * ch) << "\" width=\"" << num(cw) << "\" height=\""
				<< num(ch) << "\" fill=\"" << ramp((r.at(i, j) - vmin) / span) << "\"/>\n";
	out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w) << "\" height=\""
		<< num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

	const std::size_t xstep = std::max<std::size_t>(1, nc / 10), ystep = std::max<std::size_t>(1, nr / 10);
	for (std::size_t j = 0; j < nc; j += xstep)
		text(out, left + (static_cast<double>(j) + 0.5) * cw, top + plot_h + 16, label(r.cols.values[j]));
	for (std::size_t i = 0; i < nr; i += ystep)
		text(out, left - 6, top + plot_h - (static_cast<double>(i) + 0.5) * ch + 4, label(r.rows.values[i]), "end");
	text(out, left + plot_w / 2, top + plot_h + 36, r.cols.name);
	text(out, 20, top + plot_h / 2, r.rows.name);

	const double lx = left + plot_w + 30, lw = 20;
	const int bands = 64;
	for (int k = 0; k < bands; ++k) {
		const double t = (k + 0.5) / bands;
		out << "<rect x=\"" << num(lx) << "\" y=\"" << num(top + plot_h * (1.0 - static_cast<double>(k + 1) / bands))
			<< "\" width=\"" << num(lw) << "\" height=\"" << num(plot_h / bands + 0.5) << "\" fill=\"" << ramp(t)
			<< "\"/>\n";
	}
	text(out, lx + lw + 6, top + 8, label(vmax), "start");
	text(out, lx + lw + 6, top + plot_h, label(vmin), "start");
	text(out, lx + lw / 2, top - 8, r.metric);
	out << "</svg>\n";
}

struct Series
{
	std::string name;
	std::string color;
	std::vector<double> y;
};

/// Line plot on log-log axes (all values must be positive).
inline void log_lines(std::ostream& out,
					  const std::vector<double>& x,
					  const std::vector<Series>& series,
					  const std::string& title,
					  const std::string& x_name,
					  const std::string& y_name,
					  const double* marker_x = nullptr,
					  const double* marker_y = nullptr)
{
	const int width = 720, height = 520;
	const double left = 80, top = 40, plot_w = 480, plot_h = 400;
	double ymin = INFINITY, ymax = -INFINITY;
	for (const auto& s : series)
		for (double v : s.y)
			if (v > 0.0 && std::isfinite(v)) {
				ymin = std::min(ymin, v);
				ymax = std::max(ymax, v);
			}
	if (!(ymax > ymin)) {
		ymin = 0.5;
		ymax = 2.0;
	}
	const double lx0 = std::log10(x.front()), lx1 = std::log10(x.back());
	const double ly0 = std::floor(std::log10(ymin)), ly1 = std::ceil(std::log10(ymax));
	auto px = [&](double v) { return left + (std::log10(v) - lx0) / (lx1 > lx0 ? lx1 - lx0 : 1.0) * plot_w; };
	auto py = [&](double v) { return top + plot_h - (std::log10(v) - ly0) / (ly1 > ly0 ? ly1 - ly0 : 1.0) * plot_h; };

	open(out, width, height);
	text(out, left + plot_w / 2, 24, title);
	out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(plot_w) << "\" height=\""
		<< num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
	for (double e = std::ceil(lx0); e <= lx1 + 1e-9; e += 1.0)
		text(out, px(std::pow(10.0, e)), top + plot_h + 16, label(std::pow(10.0, e)));
	for (double e = ly0; e <= ly1 + 1e-9; e += 1.0)
		text(out, left - 6, py(std::pow(10.0, e)) + 4, label(std::pow(10.0, e)), "end");
	text(out, left + plot_w / 2, top + plot_h + 36, x_name);
	text(out, 24, top + plot_h / 2, y_name);

	for (std::size_t s = 0; s < series.size(); ++s) {
		out << "<polyline fill=\"none\" stroke=\"" << series[s].color << "\" stroke-width=\"1.5\" points=\"";
		bool first = true;
		for (std::size_t k = 0; k < x.size(); ++k) {
			const double v = series[s].y[k];
			if (!(v > 0.0) || !std::isfinite(v))
				continue;
			out << (first ? "" : " ") << num(px(x[k])) << ',' << num(std::clamp(py(v), top, top + plot_h));
			first = false;
		}
		out << "\"/>\n";
		const double ly = top + 16 + 16 * static_cast<double>(s);
		out << "<line x1=\"" << num(left + plot_w + 16) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + plot_w + 40)
			<< "\" y2=\"" << num(ly) << "\" stroke=\"" << series[s].color << "\" stroke-width=\"1.5\"/>\n";
		text(out, left + plot_w + 46, ly + 4, series[s].name, "start");
	}
	if (marker_x && marker_y && *marker_x > 0.0 && *marker_y > 0.0)
		out << "<circle cx=\"" << num(px(*marker_x)) << "\" cy=\"" << num(py(*marker_y))
			<< "\" r=\"4\" fill=\"none\" stroke=\"black\"/>\n";
	out << "</svg>\n";
}

} // namespace mplex::svg
