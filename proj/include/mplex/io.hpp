#pragma once

#include "core_model.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mplex {

/// Shortest text that parses back to the same double (17 significant digits).
inline std::string format_double(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

/// Fixed-precision text for report columns.
inline std::string format_value(double v, int digits = 12)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.*g", digits, v);
	return buf;
}

namespace detail {

inline std::string strip_comment(const std::string& line)
{
	const auto hash = line.find('#');
	return hash == std::string::npos ? line : line.substr(0, hash);
}

inline std::vector<std::string> split_fields(const std::string& line, bool allow_commas)
{
	std::string copy = line;
	if (allow_commas)
		for (auto& c : copy)
			if (c == ',')
				c = ' ';
	std::istringstream ss(copy);
	std::vector<std::string> out;
	for (std::string tok; ss >> tok;)
		out.push_back(tok);
	return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix)
{
	return s.substr(0, prefix.size()) == prefix;
}

inline double parse_weight(const std::string& tok, std::size_t line_no)
{
	std::size_t used = 0;
	double w = 0.0;
	try {
		w = std::stod(tok, &used);
	} catch (const std::exception&) {
		throw parse_error("bad weight '" + tok + "'", line_no);
	}
	if (used != tok.size())
		throw parse_error("bad weight '" + tok + "'", line_no);
	return w;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line_no)
{
	if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
		throw parse_error("bad node id '" + tok + "'", line_no);
	return static_cast<std::size_t>(std::stoull(tok));
}

} // namespace detail

/// Layer edge list: `# n=<N>` header, then `i j [w]` with 0-based ids.
/// The weight column is written only for weighted layers.
inline void write_edge_list(std::ostream& out, const LayerGraph& g)
{
	const bool weighted = g.weighted();
	out << "# n=" << g.node_count() << '\n';
	for (const auto& [key, w] : g.edges()) {
		out << key.first << ' ' << key.second;
		if (weighted)
			out << ' ' << format_double(w);
		out << '\n';
	}
}

inline LayerGraph read_edge_list(std::istream& in)
{
	std::string line;
	std::size_t line_no = 0;
	std::size_t n = 0;
	bool have_n = false;
	struct Rec
	{
		NodeId i, j;
		double w;
		std::size_t line;
	};
	std::vector<Rec> recs;
	NodeId max_id = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (!have_n && detail::starts_with(line, "# n=")) {
			n = detail::parse_index(line.substr(4), line_no);
			have_n = true;
			continue;
		}
		const auto f = detail::split_fields(detail::strip_comment(line), false);
		if (f.empty())
			continue;
		if (f.size() != 2 && f.size() != 3)
			throw parse_error("expected `i j [w]`", line_no);
		Rec r{detail::parse_index(f[0], line_no), detail::parse_index(f[1], line_no),
			  f.size() == 3 ? detail::parse_weight(f[2], line_no) : 1.0, line_no};
		max_id = std::max({max_id, r.i, r.j});
		recs.push_back(r);
	}
	if (!have_n)
		n = recs.empty() ? 1 : max_id + 1;
	LayerGraph g(n);
	for (const auto& r : recs) {
		try {
			g.add_edge(r.i, r.j, r.w);
		} catch (const structural_error& e) {
			throw parse_error(e.what(), r.line);
		}
	}
	return g;
}

/// Multiplex network file:
///
///     # multiplex layers=<M> nodes=<N>
///     # roster: <label_0> ... <label_{N-1}>
///     # layers: <name_0> ... <name_{M-1}>
///     <layer> <a> <b> <w>               intra-layer edge
///     inter <layerA> <layerB> <a> <w>   replica link a^A - a^B
///
/// Records are sorted by (layer, min id, max id), replica links last.
inline void write_multiplex(std::ostream& out, const MultiplexNetwork& net)
{
	const auto& labels = net.node_labels();
	const auto& names = net.layer_names();
	out << "# multiplex layers=" << net.layer_count() << " nodes=" << net.node_count() << '\n';
	out << "# roster:";
	for (const auto& l : labels)
		out << ' ' << l;
	out << "\n# layers:";
	for (const auto& l : names)
		out << ' ' << l;
	out << '\n';
	for (std::size_t a = 0; a < net.layer_count(); ++a)
		for (const auto& [key, w] : net.layer(a).edges())
			out << names[a] << ' ' << labels[key.first] << ' ' << labels[key.second] << ' ' << format_double(w) << '\n';
	for (const auto& [pair, weights] : net.inter_weights())
		for (NodeId i = 0; i < weights.size(); ++i)
			if (weights[i] > 0.0)
				out << "inter " << names[pair.first] << ' ' << names[pair.second] << ' ' << labels[i] << ' '
					<< format_double(weights[i]) << '\n';
}

/// Without `inter` records a two-layer file gets unit replica coupling;
/// three or more layers must list their coupling.
inline MultiplexNetwork read_multiplex(std::istream& in)
{
	std::vector<std::string> roster, names;
	std::map<std::string, NodeId> node_id;
	std::map<std::string, std::size_t> layer_id;
	std::vector<LayerGraph> layers;
	MultiplexNetwork::CouplingMap inter;
	bool any_inter = false;

	auto node = [&](const std::string& label, std::size_t line_no) {
		auto it = node_id.find(label);
		if (it == node_id.end())
			throw parse_error("node '" + label + "' not in roster", line_no);
		return it->second;
	};
	auto layer = [&](const std::string& name, std::size_t line_no) {
		auto it = layer_id.find(name);
		if (it == layer_id.end())
			throw parse_error("layer '" + name + "' not declared", line_no);
		return it->second;
	};

	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (detail::starts_with(line, "# roster:")) {
			roster = detail::split_fields(line.substr(9), false);
			for (NodeId i = 0; i < roster.size(); ++i)
				if (!node_id.emplace(roster[i], i).second)
					throw parse_error("duplicate roster label '" + roster[i] + "'", line_no);
			continue;
		}
		if (detail::starts_with(line, "# layers:")) {
			if (roster.empty())
				throw parse_error("`# layers:` must follow a non-empty `# roster:`", line_no);
			names = detail::split_fields(line.substr(9), false);
			for (std::size_t a = 0; a < names.size(); ++a) {
				if (names[a] == "inter" || !layer_id.emplace(names[a], a).second)
					throw parse_error("bad or duplicate layer name '" + names[a] + "'", line_no);
				layers.emplace_back(roster.size());
			}
			continue;
		}
		const auto f = detail::split_fields(detail::strip_comment(line), false);
		if (f.empty())
			continue;
		if (layers.empty())
			throw parse_error("record before `# roster:` / `# layers:` headers", line_no);
		try {
			if (f[0] == "inter") {
				if (f.size() != 5)
					throw parse_error("expected `inter <layerA> <layerB> <node> <w>`", line_no);
				const auto a = layer(f[1], line_no);
				const auto b = layer(f[2], line_no);
				if (a == b)
					throw parse_error("replica link within one layer", line_no);
				auto& weights = inter[layer_pair(a, b)];
				weights.resize(roster.size(), 0.0);
				weights[node(f[3], line_no)] = detail::parse_weight(f[4], line_no);
				any_inter = true;
			} else {
				if (f.size() != 3 && f.size() != 4)
					throw parse_error("expected `<layer> <a> <b> [w]`", line_no);
				const double w = f.size() == 4 ? detail::parse_weight(f[3], line_no) : 1.0;
				layers[layer(f[0], line_no)].add_edge(node(f[1], line_no), node(f[2], line_no), w);
			}
		} catch (const structural_error& e) {
			throw parse_error(e.what(), line_no);
		}
	}
	if (layers.empty())
		throw parse_error("missing `# roster:` / `# layers:` headers", line_no);
	if (!any_inter)
		return MultiplexNetwork::with_default_coupling(std::move(layers), std::move(names), std::move(roster));
	return MultiplexNetwork(std::move(layers), std::move(inter), std::move(names), std::move(roster));
}

inline std::string to_multiplex_text(const MultiplexNetwork& net)
{
	std::ostringstream ss;
	write_multiplex(ss, net);
	return ss.str();
}

} // namespace mplex
