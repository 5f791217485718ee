#pragma once

#include "core_model.hpp"
#include "random.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace mplex {

/// Maximum-likelihood Bernoulli success rate psi / (psi + theta).
/// With no observations the likelihood is flat and 0.5 is returned.
inline double trust_score(std::uint64_t successes, std::uint64_t failures)
{
	const std::uint64_t total = successes + failures;
	if (total == 0)
		return 0.5;
	return static_cast<double>(successes) / static_cast<double>(total);
}

/// psi ln(phi) + theta ln(1 - phi), with 0 ln 0 taken as 0.
inline double trust_log_likelihood(double phi, std::uint64_t successes, std::uint64_t failures)
{
	double ll = 0.0;
	if (successes > 0)
		ll += static_cast<double>(successes) * std::log(phi);
	if (failures > 0)
		ll += static_cast<double>(failures) * std::log1p(-phi);
	return ll;
}

/// Link affinity of two trust scores: ((cos|phi_i - phi_j| + 1) / 2) * phi_i * phi_j,
/// the difference taken in radians.
inline double gamma(double phi_i, double phi_j)
{
	if (!(phi_i >= 0.0 && phi_i <= 1.0) || !(phi_j >= 0.0 && phi_j <= 1.0))
		throw domain_error("trust scores must lie in [0, 1]");
	const double delta = std::abs(phi_i - phi_j);
	return 0.5 * (std::cos(delta) + 1.0) * (phi_i * phi_j);
}

struct TransactionCounts
{
	std::uint64_t successes = 0;
	std::uint64_t failures = 0;

	friend bool operator==(const TransactionCounts&, const TransactionCounts&) = default;
};

/// Success/failure counts per intra-layer node pair and per replica link.
class TransactionLedger
{
  public:
	using IntraKey = std::tuple<std::size_t, NodeId, NodeId>;		// layer, i < j
	using InterKey = std::tuple<std::size_t, std::size_t, NodeId>; // a < b, node

	void add_intra(std::size_t layer, NodeId i, NodeId j, std::uint64_t successes, std::uint64_t failures)
	{
		if (i == j)
			throw structural_error("ledger pair must join two distinct nodes");
		auto& c = intra_[IntraKey{layer, std::min(i, j), std::max(i, j)}];
		c.successes += successes;
		c.failures += failures;
	}

	void add_inter(std::size_t a, std::size_t b, NodeId i, std::uint64_t successes, std::uint64_t failures)
	{
		if (a == b)
			throw structural_error("cross-layer entry must join two distinct layers");
		auto& c = inter_[InterKey{std::min(a, b), std::max(a, b), i}];
		c.successes += successes;
		c.failures += failures;
	}

	const std::map<IntraKey, TransactionCounts>& intra() const noexcept { return intra_; }
	const std::map<InterKey, TransactionCounts>& inter() const noexcept { return inter_; }
	bool empty() const noexcept { return intra_.empty() && inter_.empty(); }

	friend bool operator==(const TransactionLedger&, const TransactionLedger&) = default;

  private:
	std::map<IntraKey, TransactionCounts> intra_;
	std::map<InterKey, TransactionCounts> inter_;
};

struct TrustProfile
{
	std::vector<std::vector<double>> per_layer; // [layer][node], phi^a_i
	std::vector<double> multiplex;				// phi^M_i
	std::vector<std::uint64_t> psi;				// aggregate successes per node
	std::vector<std::uint64_t> theta;			// aggregate failures per node

	std::size_t layer_count() const noexcept { return per_layer.size(); }
	std::size_t node_count() const noexcept { return multiplex.size(); }
};

/// Which trust score feeds the edge weights.
enum class TrustSource
{
	per_layer,
	multiplex
};

inline TrustProfile build_profile(const TransactionLedger& ledger, const MultiplexNetwork& net)
{
	const std::size_t m = net.layer_count();
	const std::size_t n = net.node_count();
	std::vector<std::vector<TransactionCounts>> layer_counts(m, std::vector<TransactionCounts>(n));
	std::vector<TransactionCounts> total(n);

	auto credit = [](TransactionCounts& into, const TransactionCounts& c) {
		into.successes += c.successes;
		into.failures += c.failures;
	};

	for (const auto& [key, c] : ledger.intra()) {
		const auto [layer, i, j] = key;
		if (layer >= m || !net.layer(layer).has_edge(i, j))
			throw structural_error("ledger entry (layer " + std::to_string(layer) + ", " + std::to_string(i) + ", " +
								   std::to_string(j) + ") is not an edge of the network");
		for (NodeId v : {i, j}) {
			credit(layer_counts[layer][v], c);
			credit(total[v], c);
		}
	}
	for (const auto& [key, c] : ledger.inter()) {
		const auto [a, b, i] = key;
		if (b >= m || i >= n || net.inter_weight(a, b, i) <= 0.0)
			throw structural_error("ledger cross entry (" + std::to_string(a) + ", " + std::to_string(b) + ", node " +
								   std::to_string(i) + ") is not a replica link of the network");
		credit(total[i], c);
	}

	TrustProfile profile;
	profile.per_layer.assign(m, std::vector<double>(n, 0.5));
	for (std::size_t a = 0; a < m; ++a)
		for (NodeId i = 0; i < n; ++i)
			profile.per_layer[a][i] = trust_score(layer_counts[a][i].successes, layer_counts[a][i].failures);
	for (NodeId i = 0; i < n; ++i) {
		profile.psi.push_back(total[i].successes);
		profile.theta.push_back(total[i].failures);
		profile.multiplex.push_back(trust_score(total[i].successes, total[i].failures));
	}
	return profile;
}

/// w = Gamma + 1 on every existing intra-layer edge and replica link;
/// non-edges stay absent.
inline MultiplexNetwork assign_weights(const MultiplexNetwork& net,
									   const TrustProfile& profile,
									   TrustSource source = TrustSource::per_layer)
{
	if (profile.layer_count() != net.layer_count() || profile.node_count() != net.node_count())
		throw structural_error("trust profile does not cover the network");
	for (const auto& row : profile.per_layer)
		if (row.size() != net.node_count())
			throw structural_error("trust profile does not cover the network");

	auto phi = [&](std::size_t a, NodeId i) {
		return source == TrustSource::per_layer ? profile.per_layer[a][i] : profile.multiplex[i];
	};

	std::vector<LayerGraph> layers;
	layers.reserve(net.layer_count());
	for (std::size_t a = 0; a < net.layer_count(); ++a) {
		LayerGraph g(net.node_count());
		for (const auto& [key, w] : net.layer(a).edges())
			g.add_edge(key.first, key.second, 1.0 + gamma(phi(a, key.first), phi(a, key.second)));
		layers.push_back(std::move(g));
	}

	MultiplexNetwork::CouplingMap inter;
	for (const auto& [pair, weights] : net.inter_weights()) {
		std::vector<double> out(weights.size(), 0.0);
		for (NodeId i = 0; i < weights.size(); ++i)
			if (weights[i] > 0.0)
				out[i] = 1.0 + gamma(phi(pair.first, i), phi(pair.second, i));
		inter.emplace(pair, std::move(out));
	}
	return MultiplexNetwork(std::move(layers), std::move(inter), net.layer_names(), net.node_labels());
}

/// Uniform success and failure counts in [0, max_count] for every edge and
/// replica link, in sorted key order.
inline TransactionLedger synthesize_ledger(const MultiplexNetwork& net, std::uint64_t seed, std::uint64_t max_count)
{
	Rng rng(seed);
	TransactionLedger ledger;
	const auto hi = static_cast<std::int64_t>(max_count);
	auto draw = [&] { return static_cast<std::uint64_t>(rng.between(0, hi)); };
	for (std::size_t a = 0; a < net.layer_count(); ++a)
		for (const auto& [key, w] : net.layer(a).edges()) {
			const auto s = draw();
			const auto f = draw();
			ledger.add_intra(a, key.first, key.second, s, f);
		}
	for (const auto& [pair, weights] : net.inter_weights())
		for (NodeId i = 0; i < weights.size(); ++i)
			if (weights[i] > 0.0) {
				const auto s = draw();
				const auto f = draw();
				ledger.add_inter(pair.first, pair.second, i, s, f);
			}
	return ledger;
}

/// Text ledger: `intra <layer> <i> <j> <succ> <fail>` and
/// `inter <layerA> <layerB> <i> <succ> <fail>`; '#' starts a comment.
inline TransactionLedger read_ledger(std::istream& in)
{
	TransactionLedger ledger;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (const auto hash = line.find('#'); hash != std::string::npos)
			line.erase(hash);
		std::istringstream ss(line);
		std::string kind;
		if (!(ss >> kind))
			continue;
		long long x[5];
		for (auto& v : x)
			if (!(ss >> v) || v < 0)
				throw parse_error("expected five nonnegative integers after '" + kind + "'", line_no);
		if (std::string extra; ss >> extra)
			throw parse_error("trailing token '" + extra + "'", line_no);
		const auto u = [&](int k) { return static_cast<std::uint64_t>(x[k]); };
		try {
			if (kind == "intra")
				ledger.add_intra(u(0), u(1), u(2), u(3), u(4));
			else if (kind == "inter")
				ledger.add_inter(u(0), u(1), u(2), u(3), u(4));
			else
				throw parse_error("unknown record kind '" + kind + "'", line_no);
		} catch (const structural_error& e) {
			throw parse_error(e.what(), line_no);
		}
	}
	return ledger;
}

inline void write_ledger(std::ostream& out, const TransactionLedger& ledger)
{
	for (const auto& [key, c] : ledger.intra()) {
		const auto [layer, i, j] = key;
		out << "intra " << layer << ' ' << i << ' ' << j << ' ' << c.successes << ' ' << c.failures << '\n';
	}
	for (const auto& [key, c] : ledger.inter()) {
		const auto [a, b, i] = key;
		out << "inter " << a << ' ' << b << ' ' << i << ' ' << c.successes << ' ' << c.failures << '\n';
	}
}

} // namespace mplex
