#pragma once

#include "core_model.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace mplex {

using AdjacencyList = std::vector<std::vector<NodeId>>;

/// Component label per node; labels are 0..k-1 in order of the smallest
/// node id they contain.
inline std::vector<std::size_t> component_labels(const AdjacencyList& adj)
{
	constexpr auto unset = static_cast<std::size_t>(-1);
	std::vector<std::size_t> label(adj.size(), unset);
	std::size_t next = 0;
	std::vector<NodeId> stack;
	for (NodeId root = 0; root < adj.size(); ++root) {
		if (label[root] != unset)
			continue;
		label[root] = next;
		stack.push_back(root);
		while (!stack.empty()) {
			const NodeId u = stack.back();
			stack.pop_back();
			for (NodeId v : adj[u])
				if (label[v] == unset) {
					label[v] = next;
					stack.push_back(v);
				}
		}
		++next;
	}
	return label;
}

inline std::size_t component_count(const AdjacencyList& adj)
{
	const auto labels = component_labels(adj);
	return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

/// Components restricted to nodes with at least one edge.
inline std::size_t active_component_count(const AdjacencyList& adj)
{
	const auto isolated =
		static_cast<std::size_t>(std::count_if(adj.begin(), adj.end(), [](const auto& n) { return n.empty(); }));
	return component_count(adj) - isolated;
}

/// Local clustering coefficient; nodes of degree < 2 score 0.
/// Neighbor lists must be sorted.
inline double local_clustering(const AdjacencyList& adj, NodeId v)
{
	const auto& nbrs = adj[v];
	const std::size_t k = nbrs.size();
	if (k < 2)
		return 0.0;
	std::size_t links = 0;
	for (std::size_t a = 0; a < k; ++a)
		for (std::size_t b = a + 1; b < k; ++b)
			if (std::binary_search(adj[nbrs[a]].begin(), adj[nbrs[a]].end(), nbrs[b]))
				++links;
	return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

inline double average_clustering(const AdjacencyList& adj)
{
	if (adj.empty())
		return 0.0;
	double sum = 0.0;
	for (NodeId v = 0; v < adj.size(); ++v)
		sum += local_clustering(adj, v);
	return sum / static_cast<double>(adj.size());
}

/// Unweighted supra-graph: intra-layer edges plus replica links with
/// positive weight. Node i of layer a maps to a*N + i.
inline AdjacencyList supra_adjacency(const MultiplexNetwork& net)
{
	AdjacencyList adj(net.supra_size());
	for (std::size_t a = 0; a < net.layer_count(); ++a)
		for (const auto& [key, w] : net.layer(a).edges()) {
			const auto u = net.supra_index(a, key.first);
			const auto v = net.supra_index(a, key.second);
			adj[u].push_back(v);
			adj[v].push_back(u);
		}
	for (const auto& [pair, weights] : net.inter_weights())
		for (NodeId i = 0; i < net.node_count(); ++i)
			if (weights[i] > 0.0) {
				const auto u = net.supra_index(pair.first, i);
				const auto v = net.supra_index(pair.second, i);
				adj[u].push_back(v);
				adj[v].push_back(u);
			}
	for (auto& nbrs : adj)
		std::sort(nbrs.begin(), nbrs.end());
	return adj;
}

struct LayerStats
{
	std::string name;
	std::size_t nodes = 0;		  // roster size N
	std::size_t active_nodes = 0; // nodes with degree >= 1
	std::size_t edges = 0;
	std::size_t components = 0;		   // over all N nodes
	std::size_t active_components = 0; // over active nodes only
	double average_degree = 0.0;		   // 2E / N
	double active_average_degree = 0.0;	   // 2E / N_active
	double average_clustering = 0.0;
	std::size_t max_degree = 0;
};

struct StructuralStats
{
	std::vector<LayerStats> layers;
	std::size_t supra_nodes = 0;
	std::size_t supra_edges = 0;
	std::size_t supra_components = 0;
	double supra_clustering = 0.0;
	std::size_t k_max = 0;
};

inline LayerStats layer_stats(const LayerGraph& layer, std::string name = {})
{
	const auto adj = layer.adjacency();
	LayerStats s;
	s.name = std::move(name);
	s.nodes = layer.node_count();
	s.edges = layer.edge_count();
	for (const auto& nbrs : adj) {
		if (!nbrs.empty())
			++s.active_nodes;
		s.max_degree = std::max(s.max_degree, nbrs.size());
	}
	s.components = component_count(adj);
	s.active_components = active_component_count(adj);
	s.average_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);
	s.active_average_degree =
		s.active_nodes == 0 ? 0.0 : 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.active_nodes);
	s.average_clustering = average_clustering(adj);
	return s;
}

inline StructuralStats structural_stats(const MultiplexNetwork& net)
{
	StructuralStats stats;
	for (std::size_t a = 0; a < net.layer_count(); ++a)
		stats.layers.push_back(layer_stats(net.layer(a), net.layer_names()[a]));

	const auto adj = supra_adjacency(net);
	stats.supra_nodes = adj.size();
	std::size_t degree_sum = 0;
	for (const auto& nbrs : adj) {
		degree_sum += nbrs.size();
		stats.k_max = std::max(stats.k_max, nbrs.size());
	}
	stats.supra_edges = degree_sum / 2;
	stats.supra_components = component_count(adj);
	stats.supra_clustering = average_clustering(adj);
	return stats;
}

} // namespace mplex
