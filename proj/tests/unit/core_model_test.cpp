#include <mplex/core_model.hpp>
#include <mplex/structure.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mplex;

TEST(LayerGraph, RejectsInvalidEdges)
{
	LayerGraph g(3);
	g.add_edge(0, 1);
	EXPECT_THROW(g.add_edge(1, 0), structural_error);
	EXPECT_THROW(g.add_edge(2, 2), structural_error);
	EXPECT_THROW(g.add_edge(0, 3), structural_error);
	EXPECT_THROW(g.add_edge(0, 2, 0.0), structural_error);
	EXPECT_THROW(g.add_edge(0, 2, -1.0), structural_error);
	EXPECT_THROW(g.add_edge(0, 2, std::nan("")), structural_error);
	EXPECT_THROW(LayerGraph(0), structural_error);
	EXPECT_EQ(g.edge_count(), 1u);
}

TEST(LayerGraph, WeightsAndDegrees)
{
	LayerGraph g(4);
	g.add_edge(0, 1, 2.5);
	g.add_edge(2, 1);
	EXPECT_DOUBLE_EQ(g.weight(1, 0), 2.5);
	EXPECT_DOUBLE_EQ(g.weight(0, 3), 0.0);
	EXPECT_TRUE(g.weighted());
	EXPECT_FALSE(g.unweighted().weighted());
	EXPECT_EQ(g.degrees(), (std::vector<std::size_t>{1, 2, 1, 0}));
	EXPECT_TRUE(g.remove_edge(1, 0));
	EXPECT_FALSE(g.has_edge(0, 1));
	EXPECT_FALSE(g.remove_edge(0, 1));
}

TEST(MultiplexNetwork, Validation)
{
	EXPECT_THROW(MultiplexNetwork::with_default_coupling({LayerGraph(3), LayerGraph(4)}), structural_error);
	EXPECT_THROW(MultiplexNetwork::with_default_coupling({LayerGraph(2), LayerGraph(2), LayerGraph(2)}),
				 structural_error);
	MultiplexNetwork::CouplingMap bad;
	bad.emplace(LayerPair{0, 1}, std::vector<double>{1.0});
	EXPECT_THROW(MultiplexNetwork({LayerGraph(2), LayerGraph(2)}, bad), structural_error);
	MultiplexNetwork::CouplingMap neg;
	neg.emplace(LayerPair{0, 1}, std::vector<double>{1.0, -1.0});
	EXPECT_THROW(MultiplexNetwork({LayerGraph(2), LayerGraph(2)}, neg), structural_error);

	const auto net = oracle::pair_of(oracle::triangle(), oracle::triangle());
	EXPECT_EQ(net.supra_size(), 6u);
	EXPECT_EQ(net.layer_names(), (std::vector<std::string>{"L1", "L2"}));
	EXPECT_EQ(net.supra_index(1, 2), 5u);
	EXPECT_DOUBLE_EQ(net.inter_weight(1, 0, 2), 1.0);
	EXPECT_DOUBLE_EQ(net.inter_strength(0, 1), 1.0);
}

TEST(Supra, MatchesEntrywiseAssembly)
{
	LayerGraph a(4), b(4);
	a.add_edge(0, 1, 1.5);
	a.add_edge(1, 2);
	a.add_edge(2, 3, 0.25);
	b.add_edge(0, 3, 2.0);
	b.add_edge(1, 3);
	MultiplexNetwork::CouplingMap inter;
	inter.emplace(LayerPair{0, 1}, std::vector<double>{1.0, 0.5, 0.0, 2.0});
	const MultiplexNetwork net({a, b}, inter);
	const std::vector<double> p{0.7, 1.3};
	const auto s = build_supra(net, p, 0.9);
	const auto expected = oracle::supra(net, p, 0.9);
	for (std::size_t i = 0; i < 8; ++i) {
		double row = 0.0;
		for (std::size_t j = 0; j < 8; ++j) {
			EXPECT_NEAR(s.combined(i, j), expected[i][j], 1e-15);
			row += s.combined(i, j);
		}
		EXPECT_NEAR(row, 0.0, 1e-14);
	}
	EXPECT_EQ(s.dimension(), 8u);
}

TEST(Supra, RejectsBadParameters)
{
	const auto net = oracle::pair_of(oracle::triangle(), oracle::triangle());
	EXPECT_THROW(build_supra(net, 1.0, -0.1), domain_error);
	EXPECT_THROW(build_supra(net, -1.0, 1.0), domain_error);
	EXPECT_THROW(build_supra(net, std::vector<double>{1.0}, 1.0), structural_error);
}

TEST(Structure, ComponentsAndClustering)
{
	LayerGraph g(6);
	g.add_edge(0, 1);
	g.add_edge(1, 2);
	g.add_edge(0, 2);
	g.add_edge(3, 4);
	const auto s = layer_stats(g, "x");
	EXPECT_EQ(s.components, 3u);
	EXPECT_EQ(s.active_components, 2u);
	EXPECT_EQ(s.active_nodes, 5u);
	EXPECT_EQ(s.max_degree, 2u);
	EXPECT_NEAR(s.average_clustering, 3.0 / 6.0, 1e-15);
	EXPECT_NEAR(s.average_degree, 8.0 / 6.0, 1e-15);
}

TEST(Structure, TwoTrianglesSupraClustering)
{
	// Every supra node has degree 3 with one closed triangle among its neighbours.
	const auto stats = structural_stats(oracle::pair_of(oracle::triangle(), oracle::triangle()));
	EXPECT_EQ(stats.supra_nodes, 6u);
	EXPECT_EQ(stats.supra_edges, 9u);
	EXPECT_EQ(stats.supra_components, 1u);
	EXPECT_NEAR(stats.supra_clustering, 1.0 / 3.0, 1e-15);
	EXPECT_NEAR(stats.layers[0].average_clustering, 1.0, 1e-15);
}
