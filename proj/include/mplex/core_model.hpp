#pragma once

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mplex {

using NodeId = std::size_t;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Undirected simple graph on the dense node set 0..N-1 with strictly
/// positive edge weights. An unweighted layer stores weight 1 on every edge.
class LayerGraph
{
  public:
	using EdgeMap = std::map<std::pair<NodeId, NodeId>, double>;

	explicit LayerGraph(std::size_t node_count)
		: node_count_(node_count)
	{
		if (node_count == 0)
			throw structural_error("layer must contain at least one node");
	}

	void add_edge(NodeId i, NodeId j, double weight = 1.0)
	{
		const auto key = checked_key(i, j);
		check_weight(weight);
		if (!edges_.emplace(key, weight).second)
			throw structural_error("duplicate edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
	}

	/// Replaces the weight of an existing edge.
	void set_weight(NodeId i, NodeId j, double weight)
	{
		check_weight(weight);
		auto it = edges_.find(checked_key(i, j));
		if (it == edges_.end())
			throw structural_error("no edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
		it->second = weight;
	}

	bool remove_edge(NodeId i, NodeId j) { return edges_.erase(checked_key(i, j)) > 0; }

	bool has_edge(NodeId i, NodeId j) const
	{
		if (i == j || i >= node_count_ || j >= node_count_)
			return false;
		return edges_.count(ordered(i, j)) > 0;
	}

	/// Weight of (i, j), or 0 for a non-edge.
	double weight(NodeId i, NodeId j) const
	{
		if (i == j || i >= node_count_ || j >= node_count_)
			return 0.0;
		auto it = edges_.find(ordered(i, j));
		return it == edges_.end() ? 0.0 : it->second;
	}

	std::size_t node_count() const noexcept { return node_count_; }
	std::size_t edge_count() const noexcept { return edges_.size(); }
	const EdgeMap& edges() const noexcept { return edges_; }

	bool weighted() const
	{
		for (const auto& [key, w] : edges_)
			if (w != 1.0)
				return true;
		return false;
	}

	std::vector<std::vector<NodeId>> adjacency() const
	{
		std::vector<std::vector<NodeId>> adj(node_count_);
		for (const auto& [key, w] : edges_) {
			adj[key.first].push_back(key.second);
			adj[key.second].push_back(key.first);
		}
		for (auto& nbrs : adj)
			std::sort(nbrs.begin(), nbrs.end());
		return adj;
	}

	std::vector<std::size_t> degrees() const
	{
		std::vector<std::size_t> deg(node_count_, 0);
		for (const auto& [key, w] : edges_) {
			++deg[key.first];
			++deg[key.second];
		}
		return deg;
	}

	/// Copy with every weight multiplied by factor > 0.
	LayerGraph scaled(double factor) const
	{
		if (!(factor > 0.0))
			throw domain_error("scale factor must be positive");
		LayerGraph out(node_count_);
		for (const auto& [key, w] : edges_)
			out.edges_.emplace(key, w * factor);
		return out;
	}

	/// Copy with all weights reset to 1.
	LayerGraph unweighted() const
	{
		LayerGraph out(node_count_);
		for (const auto& [key, w] : edges_)
			out.edges_.emplace(key, 1.0);
		return out;
	}

	friend bool operator==(const LayerGraph&, const LayerGraph&) = default;

  private:
	static std::pair<NodeId, NodeId> ordered(NodeId i, NodeId j) { return i < j ? std::pair{i, j} : std::pair{j, i}; }

	std::pair<NodeId, NodeId> checked_key(NodeId i, NodeId j) const
	{
		if (i >= node_count_ || j >= node_count_)
			throw structural_error("node id out of range (N=" + std::to_string(node_count_) + ")");
		if (i == j)
			throw structural_error("self-loop at node " + std::to_string(i));
		return ordered(i, j);
	}

	static void check_weight(double w)
	{
		if (!(w > 0.0) || !std::isfinite(w))
			throw structural_error("edge weights must be finite and strictly positive");
	}

	std::size_t node_count_;
	EdgeMap edges_;
};

/// Unordered layer pair stored as (low, high).
using LayerPair = std::pair<std::size_t, std::size_t>;

inline LayerPair layer_pair(std::size_t a, std::size_t b) { return a < b ? LayerPair{a, b} : LayerPair{b, a}; }

/// M layers over a shared node set plus per-node replica weights
/// w^{ab}_ii for each coupled layer pair (0 means no replica link).
class MultiplexNetwork
{
  public:
	using CouplingMap = std::map<LayerPair, std::vector<double>>;

	MultiplexNetwork(std::vector<LayerGraph> layers,
					 CouplingMap inter_weights,
					 std::vector<std::string> layer_names = {},
					 std::vector<std::string> node_labels = {})
		: layers_(std::move(layers))
		, layer_names_(std::move(layer_names))
		, node_labels_(std::move(node_labels))
	{
		if (layers_.empty())
			throw structural_error("multiplex needs at least one layer");
		const std::size_t n = layers_.front().node_count();
		for (const auto& layer : layers_)
			if (layer.node_count() != n)
				throw structural_error("all layers must share the same node count");

		for (auto& [pair, weights] : inter_weights) {
			const auto key = layer_pair(pair.first, pair.second);
			if (key.first == key.second || key.second >= layers_.size())
				throw structural_error("invalid coupled layer pair");
			if (weights.size() != n)
				throw structural_error("inter-layer weight vector must have length N");
			for (double w : weights)
				if (!(w >= 0.0) || !std::isfinite(w))
					throw structural_error("inter-layer weights must be finite and nonnegative");
			if (!inter_.emplace(key, std::move(weights)).second)
				throw structural_error("layer pair coupled twice");
		}

		if (layer_names_.empty())
			for (std::size_t a = 0; a < layers_.size(); ++a)
				layer_names_.push_back("L" + std::to_string(a + 1));
		if (layer_names_.size() != layers_.size())
			throw structural_error("one name per layer required");
		if (node_labels_.empty())
			for (std::size_t i = 0; i < n; ++i)
				node_labels_.push_back(std::to_string(i));
		if (node_labels_.size() != n)
			throw structural_error("one label per node required");
	}

	/// Unit replica coupling for two layers, none for a single layer.
	/// Three or more layers need an explicit coupling pattern.
	static MultiplexNetwork with_default_coupling(std::vector<LayerGraph> layers,
												  std::vector<std::string> layer_names = {},
												  std::vector<std::string> node_labels = {})
	{
		CouplingMap inter;
		if (layers.size() == 2)
			inter.emplace(LayerPair{0, 1}, std::vector<double>(layers.front().node_count(), 1.0));
		else if (layers.size() > 2)
			throw structural_error("coupling pattern must be given explicitly for more than two layers");
		return MultiplexNetwork(std::move(layers), std::move(inter), std::move(layer_names), std::move(node_labels));
	}

	std::size_t layer_count() const noexcept { return layers_.size(); }
	std::size_t node_count() const noexcept { return layers_.front().node_count(); }
	std::size_t supra_size() const noexcept { return layer_count() * node_count(); }

	const LayerGraph& layer(std::size_t a) const { return layers_.at(a); }
	const std::vector<LayerGraph>& layers() const noexcept { return layers_; }
	const CouplingMap& inter_weights() const noexcept { return inter_; }
	const std::vector<std::string>& layer_names() const noexcept { return layer_names_; }
	const std::vector<std::string>& node_labels() const noexcept { return node_labels_; }

	/// w^{ab}_ii, symmetric in (a, b); 0 for uncoupled pairs.
	double inter_weight(std::size_t a, std::size_t b, NodeId i) const
	{
		auto it = inter_.find(layer_pair(a, b));
		return it == inter_.end() ? 0.0 : it->second.at(i);
	}

	/// s^I_i for node i of layer a: total replica weight leaving i^a.
	double inter_strength(std::size_t a, NodeId i) const
	{
		double s = 0.0;
		for (const auto& [pair, weights] : inter_)
			if (pair.first == a || pair.second == a)
				s += weights[i];
		return s;
	}

	/// Supra index of node i in layer a.
	std::size_t supra_index(std::size_t a, NodeId i) const noexcept { return a * node_count() + i; }

	friend bool operator==(const MultiplexNetwork&, const MultiplexNetwork&) = default;

  private:
	std::vector<LayerGraph> layers_;
	CouplingMap inter_;
	std::vector<std::string> layer_names_;
	std::vector<std::string> node_labels_;
};

/// L = Delta - W for one layer.
inline Matrix layer_laplacian(const LayerGraph& layer)
{
	const auto n = static_cast<Eigen::Index>(layer.node_count());
	Matrix lap = Matrix::Zero(n, n);
	for (const auto& [key, w] : layer.edges()) {
		const auto i = static_cast<Eigen::Index>(key.first);
		const auto j = static_cast<Eigen::Index>(key.second);
		lap(i, j) -= w;
		lap(j, i) -= w;
		lap(i, i) += w;
		lap(j, j) += w;
	}
	return lap;
}

/// Inter-layer Laplacian D^I - W^I at unit coupling (before d_x scaling).
inline Matrix inter_laplacian(const MultiplexNetwork& net)
{
	const auto n = net.node_count();
	const auto dim = static_cast<Eigen::Index>(net.supra_size());
	Matrix lap = Matrix::Zero(dim, dim);
	for (const auto& [pair, weights] : net.inter_weights()) {
		for (NodeId i = 0; i < n; ++i) {
			const double w = weights[i];
			if (w == 0.0)
				continue;
			const auto u = static_cast<Eigen::Index>(net.supra_index(pair.first, i));
			const auto v = static_cast<Eigen::Index>(net.supra_index(pair.second, i));
			lap(u, v) -= w;
			lap(v, u) -= w;
			lap(u, u) += w;
			lap(v, v) += w;
		}
	}
	return lap;
}

/// Unscaled ingredients of the supra-Laplacian, computed once per network
/// and recombined for every (p, d_x).
struct SupraParts
{
	std::vector<Matrix> layer_laplacians;
	Matrix inter;
	std::size_t node_count = 0;

	explicit SupraParts(const MultiplexNetwork& net)
		: inter(inter_laplacian(net))
		, node_count(net.node_count())
	{
		layer_laplacians.reserve(net.layer_count());
		for (const auto& layer : net.layers())
			layer_laplacians.push_back(layer_laplacian(layer));
	}

	std::size_t layer_count() const noexcept { return layer_laplacians.size(); }

	Matrix intra(const std::vector<double>& p_per_layer) const
	{
		const auto n = static_cast<Eigen::Index>(node_count);
		const auto dim = n * static_cast<Eigen::Index>(layer_count());
		Matrix out = Matrix::Zero(dim, dim);
		for (std::size_t a = 0; a < layer_count(); ++a)
			out.block(static_cast<Eigen::Index>(a) * n, static_cast<Eigen::Index>(a) * n, n, n) =
				p_per_layer[a] * layer_laplacians[a];
		return out;
	}
};

/// L^M(p, d_x) = L^L + d_x L^I together with its two parts.
struct SupraLaplacian
{
	Matrix intra;
	Matrix inter;
	Matrix combined;
	std::vector<double> p_per_layer;
	double d_x = 0.0;
	std::size_t node_count = 0;

	std::size_t dimension() const noexcept { return static_cast<std::size_t>(combined.rows()); }
	std::size_t layer_count() const noexcept { return p_per_layer.size(); }
};

inline void check_supra_parameters(std::size_t layer_count, const std::vector<double>& p_per_layer, double d_x)
{
	if (p_per_layer.size() != layer_count)
		throw structural_error("p_per_layer has " + std::to_string(p_per_layer.size()) + " entries for " +
							   std::to_string(layer_count) + " layers");
	for (double p : p_per_layer)
		if (!(p >= 0.0) || !std::isfinite(p))
			throw domain_error("intra-layer scale p must be finite and nonnegative");
	if (!(d_x >= 0.0) || !std::isfinite(d_x))
		throw domain_error("inter-layer coupling d_x must be finite and nonnegative");
}

inline SupraLaplacian assemble_supra(const SupraParts& parts, const std::vector<double>& p_per_layer, double d_x)
{
	check_supra_parameters(parts.layer_count(), p_per_layer, d_x);
	SupraLaplacian s;
	s.intra = parts.intra(p_per_layer);
	s.inter = parts.inter;
	s.combined = s.intra + d_x * s.inter;
	s.p_per_layer = p_per_layer;
	s.d_x = d_x;
	s.node_count = parts.node_count;
	return s;
}

inline SupraLaplacian build_supra(const MultiplexNetwork& net, const std::vector<double>& p_per_layer, double d_x)
{
	return assemble_supra(SupraParts(net), p_per_layer, d_x);
}

/// Uniform p on every layer.
inline SupraLaplacian build_supra(const MultiplexNetwork& net, double p, double d_x)
{
	return build_supra(net, std::vector<double>(net.layer_count(), p), d_x);
}

inline std::vector<double> uniform_p(const MultiplexNetwork& net, double p)
{
	return std::vector<double>(net.layer_count(), p);
}

} // namespace mplex
