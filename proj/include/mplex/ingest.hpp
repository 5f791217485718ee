#pragma once

#include "core_model.hpp"
#include "io.hpp"
#include "structure.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace mplex {

/// Parsed empirical multiplex: string actors mapped to dense ids in order
/// of first appearance, undirected deduplicated records per layer.
struct MultiplexEdgeFile
{
	using LayerRecords = std::map<std::pair<NodeId, NodeId>, double>; // (min id, max id) -> weight

	std::vector<std::string> roster;
	std::vector<std::string> layer_names;
	std::vector<LayerRecords> layers;
	bool weighted = false;
	std::size_t self_loops_skipped = 0;
	std::size_t duplicates_collapsed = 0;

	std::size_t record_count() const
	{
		std::size_t n = 0;
		for (const auto& l : layers)
			n += l.size();
		return n;
	}

	std::size_t layer_index(const std::string& name) const
	{
		auto it = std::find(layer_names.begin(), layer_names.end(), name);
		if (it == layer_names.end())
			throw lookup_error("unknown layer '" + name + "'");
		return static_cast<std::size_t>(it - layer_names.begin());
	}

	friend bool operator==(const MultiplexEdgeFile& a, const MultiplexEdgeFile& b)
	{
		return a.roster == b.roster && a.layer_names == b.layer_names && a.layers == b.layers;
	}
};

/// Reads `<a> <b> <layer> [w]` lines, whitespace or comma separated.
/// `# roster:` and `# layers:` headers, when present, fix the id order.
/// Repeated (a, b, layer) records keep the first weight.
inline MultiplexEdgeFile parse_multiplex(std::istream& in)
{
	MultiplexEdgeFile file;
	std::map<std::string, NodeId> node_id;
	std::map<std::string, std::size_t> layer_id;

	auto intern_node = [&](const std::string& label) {
		auto [it, fresh] = node_id.emplace(label, file.roster.size());
		if (fresh)
			file.roster.push_back(label);
		return it->second;
	};
	auto intern_layer = [&](const std::string& name) {
		auto [it, fresh] = layer_id.emplace(name, file.layer_names.size());
		if (fresh) {
			file.layer_names.push_back(name);
			file.layers.emplace_back();
		}
		return it->second;
	};

	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (detail::starts_with(line, "# roster:")) {
			for (const auto& label : detail::split_fields(line.substr(9), false))
				intern_node(label);
			continue;
		}
		if (detail::starts_with(line, "# layers:")) {
			for (const auto& name : detail::split_fields(line.substr(9), false))
				intern_layer(name);
			continue;
		}
		const auto f = detail::split_fields(detail::strip_comment(line), true);
		if (f.empty())
			continue;
		if (f.size() != 3 && f.size() != 4)
			throw parse_error("expected `<a> <b> <layer> [w]`", line_no);
		double w = 1.0;
		if (f.size() == 4) {
			w = detail::parse_weight(f[3], line_no);
			if (!(w > 0.0))
				throw parse_error("weights must be positive", line_no);
			file.weighted = true;
		}
		const NodeId a = intern_node(f[0]);
		const NodeId b = intern_node(f[1]);
		const std::size_t layer = intern_layer(f[2]);
		if (a == b) {
			++file.self_loops_skipped;
			continue;
		}
		if (!file.layers[layer].emplace(std::pair{std::min(a, b), std::max(a, b)}, w).second)
			++file.duplicates_collapsed;
	}
	return file;
}

/// Canonical text: headers, then one record per line sorted by
/// (layer, min id, max id). Weights appear only for weighted files.
inline void serialize_multiplex(std::ostream& out, const MultiplexEdgeFile& file)
{
	out << "# roster:";
	for (const auto& l : file.roster)
		out << ' ' << l;
	out << "\n# layers:";
	for (const auto& l : file.layer_names)
		out << ' ' << l;
	out << '\n';
	for (std::size_t layer = 0; layer < file.layers.size(); ++layer)
		for (const auto& [key, w] : file.layers[layer]) {
			out << file.roster[key.first] << ' ' << file.roster[key.second] << ' ' << file.layer_names[layer];
			if (file.weighted)
				out << ' ' << format_double(w);
			out << '\n';
		}
}

/// Which actors become nodes of the multiplex.
enum class NodeSelection
{
	full_roster,   // every actor of the file; absent actors are isolated in a layer
	active_in_any, // actors with an edge in at least one selected layer
	active_in_all  // actors with an edge in every selected layer
};

inline MultiplexNetwork to_multiplex(const MultiplexEdgeFile& file,
									 const std::vector<std::string>& layer_names,
									 NodeSelection selection = NodeSelection::full_roster,
									 double replica_weight = 1.0)
{
	if (layer_names.empty())
		throw lookup_error("no layers selected");
	std::vector<std::size_t> chosen;
	for (const auto& name : layer_names)
		chosen.push_back(file.layer_index(name));

	const std::size_t roster_size = file.roster.size();
	std::vector<std::size_t> active_count(roster_size, 0);
	for (auto l : chosen) {
		std::vector<char> active(roster_size, 0);
		for (const auto& [key, w] : file.layers[l])
			active[key.first] = active[key.second] = 1;
		for (NodeId i = 0; i < roster_size; ++i)
			active_count[i] += active[i];
	}

	constexpr auto dropped = static_cast<NodeId>(-1);
	std::vector<NodeId> remap(roster_size, dropped);
	std::vector<std::string> labels;
	for (NodeId i = 0; i < roster_size; ++i) {
		const bool keep = selection == NodeSelection::full_roster ||
						  (selection == NodeSelection::active_in_any && active_count[i] > 0) ||
						  (selection == NodeSelection::active_in_all && active_count[i] == chosen.size());
		if (keep) {
			remap[i] = labels.size();
			labels.push_back(file.roster[i]);
		}
	}
	if (labels.empty())
		throw structural_error("node selection leaves no nodes");

	std::vector<LayerGraph> layers;
	for (auto l : chosen) {
		LayerGraph g(labels.size());
		for (const auto& [key, w] : file.layers[l])
			if (remap[key.first] != dropped && remap[key.second] != dropped)
				g.add_edge(remap[key.first], remap[key.second], w);
		layers.push_back(std::move(g));
	}

	MultiplexNetwork::CouplingMap inter;
	for (std::size_t a = 0; a < chosen.size(); ++a)
		for (std::size_t b = a + 1; b < chosen.size(); ++b)
			inter.emplace(LayerPair{a, b}, std::vector<double>(labels.size(), replica_weight));
	return MultiplexNetwork(std::move(layers), std::move(inter), layer_names, std::move(labels));
}

/// Per-layer statistics over the full roster; component counts and the
/// active-node average degree are taken on the layer's active nodes.
inline std::vector<LayerStats> layer_report(const MultiplexEdgeFile& file)
{
	std::vector<LayerStats> out;
	if (file.roster.empty())
		return out;
	for (std::size_t l = 0; l < file.layers.size(); ++l) {
		LayerGraph g(file.roster.size());
		for (const auto& [key, w] : file.layers[l])
			g.add_edge(key.first, key.second, w);
		out.push_back(layer_stats(g, file.layer_names[l]));
	}
	return out;
}

} // namespace mplex
