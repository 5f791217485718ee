#include <mplex/ingest.hpp>
#include <mplex/io.hpp>
#include <mplex/random.hpp>
#include <mplex/trust_weights.hpp>

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"

using namespace mplex;

namespace {

MultiplexEdgeFile parse(const std::string& text)
{
	std::istringstream in(text);
	return parse_multiplex(in);
}

} // namespace

TEST(Parse, UndirectedDedupAndSelfLoops)
{
	const auto f = parse("u v lunch\nv u lunch\nw w lunch\r\nu,w,work,2.5\n# comment\n\n");
	EXPECT_EQ(f.roster, (std::vector<std::string>{"u", "v", "w"}));
	EXPECT_EQ(f.layer_names, (std::vector<std::string>{"lunch", "work"}));
	EXPECT_EQ(f.layers[0].size(), 1u);
	EXPECT_EQ(f.self_loops_skipped, 1u);
	EXPECT_EQ(f.duplicates_collapsed, 1u);
	EXPECT_TRUE(f.weighted);
	EXPECT_DOUBLE_EQ(f.layers[1].at({0, 2}), 2.5);
}

TEST(Parse, EmptyAndMalformed)
{
	const auto empty = parse("");
	EXPECT_TRUE(empty.roster.empty());
	EXPECT_TRUE(empty.layer_names.empty());

	try {
		parse("a b x\na b\n");
		FAIL() << "expected parse_error";
	} catch (const parse_error& e) {
		EXPECT_EQ(e.line(), 2u);
	}
	EXPECT_THROW(parse("a b x nope\n"), parse_error);
	EXPECT_THROW(parse("a b x -1\n"), parse_error);
}

TEST(Parse, SerializeRoundTrip)
{
	Rng rng(17);
	for (int trial = 0; trial < 20; ++trial) {
		std::ostringstream text;
		const int records = static_cast<int>(rng.between(1, 60));
		for (int r = 0; r < records; ++r)
			text << "n" << rng.between(0, 15) << ' ' << "n" << rng.between(0, 15) << ' ' << "L" << rng.between(0, 3)
				 << ' ' << format_double(0.1 + rng.uniform()) << '\n';
		const auto f = parse(text.str());
		std::stringstream ss;
		serialize_multiplex(ss, f);
		const auto g = parse_multiplex(ss);
		EXPECT_EQ(f, g);
	}
}

TEST(Aarhus, LayerTable)
{
	const auto file = oracle::aarhus();
	EXPECT_EQ(file.roster.size(), 61u);
	auto names = file.layer_names;
	std::sort(names.begin(), names.end());
	EXPECT_EQ(names, (std::vector<std::string>{"Coauthor", "Facebook", "Leisure", "Lunch", "Work"}));

	const auto report = layer_report(file);
	auto find = [&](const std::string& n) { return report[file.layer_index(n)]; };
	EXPECT_EQ(find("Lunch").edges, 193u);
	EXPECT_EQ(find("Lunch").active_components, 1u);
	EXPECT_EQ(find("Facebook").edges, 124u);
	EXPECT_EQ(find("Facebook").active_components, 1u);
	EXPECT_EQ(find("Coauthor").edges, 21u);
	EXPECT_EQ(find("Coauthor").active_components, 8u);
	EXPECT_EQ(find("Leisure").edges, 88u);
	EXPECT_EQ(find("Work").edges, 194u);
	EXPECT_NEAR(find("Lunch").active_average_degree, 6.43, 0.005);
	EXPECT_NEAR(find("Facebook").active_average_degree, 7.75, 0.005);
	EXPECT_NEAR(find("Coauthor").active_average_degree, 1.68, 0.005);
	EXPECT_NEAR(find("Leisure").active_average_degree, 3.74, 0.005);
	EXPECT_NEAR(find("Work").active_average_degree, 6.47, 0.005);
}

TEST(Aarhus, LayerSelection)
{
	const auto file = oracle::aarhus();
	const auto lunch = to_multiplex(file, {"Lunch"});
	EXPECT_EQ(lunch.layer_count(), 1u);
	EXPECT_EQ(lunch.layer(0).edge_count(), 193u);

	const auto fl = to_multiplex(file, {"Facebook", "Lunch"});
	EXPECT_EQ(fl.supra_size(), 122u);

	// One actor has no Work tie, so the full roster splits into two pieces.
	const auto work = to_multiplex(file, {"Work"});
	EXPECT_EQ(work.layer(0).edge_count(), 194u);
	EXPECT_EQ(component_count(work.layer(0).adjacency()), 2u);

	const auto both = to_multiplex(file, {"Facebook", "Lunch"}, NodeSelection::active_in_all);
	EXPECT_EQ(both.node_count(), 32u);
	EXPECT_EQ(component_count(both.layer(0).adjacency()), 1u);
	EXPECT_EQ(component_count(both.layer(1).adjacency()), 1u);
	EXPECT_EQ(to_multiplex(file, {"Facebook", "Lunch"}, NodeSelection::active_in_any).node_count(), 60u);

	EXPECT_THROW(to_multiplex(file, {"Dinner"}), lookup_error);
}

TEST(EdgeList, RoundTrip)
{
	LayerGraph g(6);
	g.add_edge(0, 5, 0.1);
	g.add_edge(2, 3, 1.0 / 3.0);
	std::stringstream ss;
	write_edge_list(ss, g);
	EXPECT_EQ(read_edge_list(ss), g);

	std::istringstream dup("0 1\n1 0\n");
	EXPECT_THROW(read_edge_list(dup), parse_error);
	std::istringstream no_header("0 1\n1 4\n");
	EXPECT_EQ(read_edge_list(no_header).node_count(), 5u);
}

TEST(MultiplexFile, WeightedRoundTripIsBitExact)
{
	const auto net = oracle::ba_multiplex(8, 60);
	const auto weighted = assign_weights(net, build_profile(synthesize_ledger(net, 8, 50), net));
	std::stringstream ss;
	write_multiplex(ss, weighted);
	const auto back = read_multiplex(ss);
	EXPECT_EQ(back, weighted);

	std::istringstream unknown("# roster: a b\n# layers: x y\nz a b 1\n");
	EXPECT_THROW(read_multiplex(unknown), parse_error);
}
