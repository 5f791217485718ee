#pragma once

#include "core_model.hpp"
#include "random.hpp"
#include "structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace mplex {

enum class GeneratorModel
{
	ba,
	powerlaw
};

struct GeneratorSpec
{
	GeneratorModel model = GeneratorModel::ba;
	std::size_t n = 200;
	std::size_t m = 2;		// stubs per arriving node (BA)
	double gamma = 2.1;		// degree exponent (powerlaw)
	std::size_t k_min = 2;	// minimum sampled degree (powerlaw)
	std::uint64_t seed = 0;
};

/// What the configuration model did to the sampled degree sequence.
struct GenerationReport
{
	std::size_t attempts = 0;			  // degree sequences drawn
	std::size_t sampled_degree_sum = 0;	  // after parity fix
	std::size_t self_loops_removed = 0;
	std::size_t multi_edges_collapsed = 0;
	std::size_t components_repaired = 0;
	std::size_t edges_added_by_repair = 0; // nonzero only when no swap kept the graph connected
};

struct GeneratedLayer
{
	LayerGraph graph;
	GenerationReport report;
};

/// Preferential attachment from a complete seed graph on m+1 nodes. Each
/// arriving node links to m distinct existing nodes drawn with probability
/// proportional to their current degree.
inline LayerGraph generate_ba(const GeneratorSpec& spec)
{
	if (spec.model != GeneratorModel::ba)
		throw domain_error("generate_ba called with a non-BA spec");
	if (spec.m < 1 || spec.n <= spec.m)
		throw domain_error("BA requires n > m >= 1");

	Rng rng(spec.seed);
	LayerGraph g(spec.n);
	// every edge endpoint appears once, so a uniform pick is degree-proportional
	std::vector<NodeId> endpoints;
	endpoints.reserve(2 * (spec.m * (spec.m + 1) / 2 + (spec.n - spec.m - 1) * spec.m));
	for (NodeId i = 0; i <= spec.m; ++i)
		for (NodeId j = i + 1; j <= spec.m; ++j) {
			g.add_edge(i, j);
			endpoints.push_back(i);
			endpoints.push_back(j);
		}

	std::vector<NodeId> targets;
	for (NodeId v = spec.m + 1; v < spec.n; ++v) {
		targets.clear();
		while (targets.size() < spec.m) {
			const NodeId t = endpoints[rng.below(endpoints.size())];
			if (std::find(targets.begin(), targets.end(), t) == targets.end())
				targets.push_back(t);
		}
		for (NodeId t : targets) {
			g.add_edge(v, t);
			endpoints.push_back(v);
			endpoints.push_back(t);
		}
	}
	return g;
}

namespace detail {

/// Erdos-Gallai test for a graphical degree sequence.
inline bool is_graphical(std::vector<std::size_t> degrees)
{
	std::sort(degrees.begin(), degrees.end(), std::greater<>());
	const std::size_t n = degrees.size();
	std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
	if (total % 2 != 0)
		return false;
	std::size_t lhs = 0;
	for (std::size_t k = 1; k <= n; ++k) {
		lhs += degrees[k - 1];
		std::size_t rhs = k * (k - 1);
		for (std::size_t i = k; i < n; ++i)
			rhs += std::min(degrees[i], k);
		if (lhs > rhs)
			return false;
	}
	return true;
}

/// True when removing (u, v) leaves u and v connected.
inline bool on_cycle(const LayerGraph& g, NodeId u, NodeId v)
{
	auto adj = g.adjacency();
	std::vector<char> seen(g.node_count(), 0);
	std::vector<NodeId> stack{u};
	seen[u] = 1;
	while (!stack.empty()) {
		const NodeId x = stack.back();
		stack.pop_back();
		for (NodeId y : adj[x]) {
			if ((x == u && y == v) || (x == v && y == u))
				continue;
			if (y == v)
				return true;
			if (!seen[y]) {
				seen[y] = 1;
				stack.push_back(y);
			}
		}
	}
	return false;
}

/// Joins every extra component to the largest one with a degree-preserving
/// double-edge swap (a,b),(c,d) -> (a,c),(b,d), where at least one removed
/// edge lies on a cycle so connectivity is not lost. Edgeless components
/// (isolated nodes) and the rare case with no usable swap fall back to
/// adding a single edge into the main component.
inline void repair_connectivity(LayerGraph& g, Rng& rng, GenerationReport& report)
{
	for (;;) {
		const auto adj = g.adjacency();
		const auto labels = component_labels(adj);
		const std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
		if (count <= 1)
			return;

		std::vector<std::size_t> sizes(count, 0);
		for (auto l : labels)
			++sizes[l];
		const std::size_t main = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
		std::size_t other = 0;
		while (other == main)
			++other;

		std::vector<std::pair<NodeId, NodeId>> main_edges, other_edges;
		for (const auto& [key, w] : g.edges()) {
			if (labels[key.first] == main)
				main_edges.push_back(key);
			else if (labels[key.first] == other)
				other_edges.push_back(key);
		}

		++report.components_repaired;
		if (other_edges.empty() || main_edges.empty()) {
			NodeId lone = 0, anchor = 0;
			while (labels[lone] != other)
				++lone;
			const auto main_nodes = static_cast<std::size_t>(sizes[main]);
			std::size_t pick = rng.below(main_nodes);
			for (NodeId v = 0; v < g.node_count(); ++v)
				if (labels[v] == main && pick-- == 0) {
					anchor = v;
					break;
				}
			g.add_edge(lone, anchor);
			++report.edges_added_by_repair;
			continue;
		}

		auto find_cycle_edge = [&](const std::vector<std::pair<NodeId, NodeId>>& edges, std::size_t& index) {
			const std::size_t start = rng.below(edges.size());
			for (std::size_t k = 0; k < edges.size(); ++k) {
				index = (start + k) % edges.size();
				if (on_cycle(g, edges[index].first, edges[index].second))
					return true;
			}
			index = start;
			return false;
		};

		std::size_t mi = 0, oi = 0;
		const bool main_cycle = find_cycle_edge(main_edges, mi);
		bool other_cycle = false;
		if (main_cycle)
			oi = rng.below(other_edges.size());
		else
			other_cycle = find_cycle_edge(other_edges, oi);
		if (!main_cycle && !other_cycle) {
			g.add_edge(other_edges[oi].first, main_edges[mi].first);
			++report.edges_added_by_repair;
			continue;
		}
		const auto [a, b] = other_edges[oi];
		const auto [c, d] = main_edges[mi];
		g.remove_edge(a, b);
		g.remove_edge(c, d);
		g.add_edge(a, c);
		g.add_edge(b, d);
	}
}

} // namespace detail

/// Configuration model on a degree sequence drawn from p(k) ~ k^-gamma,
/// k in [k_min, n-1]; self-loops dropped, multi-edges collapsed, then
/// components joined by edge swaps.
inline GeneratedLayer generate_powerlaw_with_report(const GeneratorSpec& spec)
{
	if (spec.model != GeneratorModel::powerlaw)
		throw domain_error("generate_powerlaw called with a non-powerlaw spec");
	if (!(spec.gamma > 1.0) || spec.k_min < 1 || spec.k_min >= spec.n)
		throw domain_error("powerlaw requires gamma > 1 and 1 <= k_min < n");

	const std::size_t n = spec.n;
	std::vector<double> cdf;
	for (std::size_t k = spec.k_min; k <= n - 1; ++k)
		cdf.push_back((cdf.empty() ? 0.0 : cdf.back()) + std::pow(static_cast<double>(k), -spec.gamma));
	for (auto& c : cdf)
		c /= cdf.back();

	Rng rng(spec.seed);
	GeneratedLayer out{LayerGraph(n), {}};
	std::vector<std::size_t> degrees(n);
	bool feasible = false;
	constexpr std::size_t max_attempts = 100;
	while (!feasible && out.report.attempts < max_attempts) {
		++out.report.attempts;
		for (auto& d : degrees) {
			const double u = rng.uniform();
			d = spec.k_min + static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
			d = std::min(d, n - 1);
		}
		if (std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) % 2 != 0) {
			auto it = std::find_if(degrees.begin(), degrees.end(), [&](std::size_t d) { return d < n - 1; });
			if (it != degrees.end())
				++*it;
		}
		feasible = detail::is_graphical(degrees);
	}
	if (!feasible)
		throw generation_error("no graphical degree sequence after " + std::to_string(max_attempts) + " attempts");
	out.report.sampled_degree_sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});

	std::vector<NodeId> stubs;
	stubs.reserve(out.report.sampled_degree_sum);
	for (NodeId v = 0; v < n; ++v)
		stubs.insert(stubs.end(), degrees[v], v);
	rng.shuffle(stubs);

	LayerGraph& g = out.graph;
	for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
		const NodeId u = stubs[k];
		const NodeId v = stubs[k + 1];
		if (u == v)
			++out.report.self_loops_removed;
		else if (g.has_edge(u, v))
			++out.report.multi_edges_collapsed;
		else
			g.add_edge(u, v);
	}
	detail::repair_connectivity(g, rng, out.report);
	return out;
}

inline LayerGraph generate_powerlaw(const GeneratorSpec& spec)
{
	return generate_powerlaw_with_report(spec).graph;
}

inline LayerGraph generate(const GeneratorSpec& spec)
{
	return spec.model == GeneratorModel::ba ? generate_ba(spec) : generate_powerlaw(spec);
}

/// Replica coupling of the given weight between consecutive layers
/// (the single pair when M = 2).
inline MultiplexNetwork couple_replicas(std::vector<LayerGraph> layers,
										double weight,
										std::vector<std::string> layer_names = {},
										std::vector<std::string> node_labels = {})
{
	if (!(weight > 0.0) || !std::isfinite(weight))
		throw domain_error("replica weight must be positive");
	if (layers.empty())
		throw structural_error("no layers to couple");
	const std::size_t n = layers.front().node_count();
	for (const auto& l : layers)
		if (l.node_count() != n)
			throw structural_error("all layers must share the same node count");
	MultiplexNetwork::CouplingMap inter;
	for (std::size_t a = 0; a + 1 < layers.size(); ++a)
		inter.emplace(LayerPair{a, a + 1}, std::vector<double>(n, weight));
	return MultiplexNetwork(std::move(layers), std::move(inter), std::move(layer_names), std::move(node_labels));
}

} // namespace mplex
