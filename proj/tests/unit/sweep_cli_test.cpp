#include <mplex/commands.hpp>

#include <gtest/gtest.h>

#include <regex>

#include "oracles.hpp"

using namespace mplex;
namespace fs = std::filesystem;

namespace {

// Minimal XML check: balanced tags, quoted attributes, single root.
bool well_formed(const std::string& xml)
{
	std::vector<std::string> stack;
	std::size_t pos = 0, roots = 0;
	while ((pos = xml.find('<', pos)) != std::string::npos) {
		const auto end = xml.find('>', pos);
		if (end == std::string::npos)
			return false;
		const std::string tag = xml.substr(pos + 1, end - pos - 1);
		pos = end + 1;
		if (tag.empty())
			return false;
		if (tag[0] == '?' || tag[0] == '!')
			continue;
		if (std::count(tag.begin(), tag.end(), '"') % 2 != 0)
			return false;
		if (tag[0] == '/') {
			if (stack.empty() || stack.back() != tag.substr(1))
				return false;
			stack.pop_back();
			continue;
		}
		const std::string name = tag.substr(0, tag.find_first_of(" \n/"));
		if (stack.empty())
			++roots;
		if (tag.back() != '/')
			stack.push_back(name);
	}
	return stack.empty() && roots == 1;
}

std::vector<std::string> lines(const std::string& text)
{
	std::vector<std::string> out;
	std::istringstream in(text);
	for (std::string l; std::getline(in, l);)
		out.push_back(l);
	return out;
}

struct CliFixture : ::testing::Test
{
	static fs::path dir;

	static void SetUpTestSuite()
	{
		dir = oracle::scratch("cli");
		ASSERT_EQ(oracle::run_cli("generate --model ba --nodes 60 --m 2 --seed 1 -o l1.txt", dir), 0);
		ASSERT_EQ(oracle::run_cli("generate --model ba --nodes 60 --m 3 --seed 2 -o l2.txt", dir), 0);
		ASSERT_EQ(oracle::run_cli("multiplex l1.txt l2.txt -o ba.mpx", dir), 0);
	}
};

fs::path CliFixture::dir;

} // namespace

TEST(Grid, Syntax)
{
	EXPECT_EQ(parse_grid("0.2:2.0:0.2"), (std::vector<double>{0.2, 0.4, 0.6, 0.8, 1, 1.2, 1.4, 1.6, 1.8, 2}));
	EXPECT_EQ(parse_grid("0:1:0.5"), (std::vector<double>{0, 0.5, 1}));
	EXPECT_EQ(parse_grid("0.75"), (std::vector<double>{0.75}));
	const auto lg = parse_grid("0.01:100:log5");
	ASSERT_EQ(lg.size(), 5u);
	EXPECT_EQ(lg.front(), 0.01);
	EXPECT_EQ(lg.back(), 100.0);
	EXPECT_NEAR(lg[2], 1.0, 1e-12);
	EXPECT_EQ(parse_grid("0.01:100:log41").size(), 41u);
	for (const char* bad : {"", "1:2", "1:2:0", "2:1:0.1", "a:2:0.1", "0:1:logx", "0:1:log3", "1:2:log0"})
		EXPECT_THROW(parse_grid(bad), config_error) << bad;
}

TEST(Csv, SweepLayout)
{
	SweepResult r;
	r.rows = {"p", {0.2, 0.4}};
	r.cols = {"dx", {1, 2, 3}};
	r.metric = "lambda2";
	r.values = {1, 2, 3, 4, 5, 0.1};
	r.provenance.spec_hash = hex64(fnv1a("x"));
	std::ostringstream out;
	write_sweep_csv(out, r);
	const auto l = lines(out.str());
	ASSERT_EQ(l.size(), 8u);
	EXPECT_TRUE(std::regex_match(l[0], std::regex("# seed=none, spec=[0-9a-f]{16}, version=0\\.3\\.1")));
	EXPECT_EQ(l[1], "p,dx,lambda2");
	EXPECT_EQ(l[2], "0.2,1,1");
	EXPECT_EQ(l[7], "0.4,3,0.1");
	EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
	EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Svg, WellFormedAndSmall)
{
	SweepResult r;
	r.rows = {"p", parse_grid("0.2:2.0:0.2")};
	r.cols = {"dx", parse_grid("0.2:2.0:0.2")};
	r.metric = "lambda2";
	for (std::size_t k = 0; k < 100; ++k)
		r.values.push_back(0.01 * static_cast<double>(k));
	std::ostringstream heat;
	svg::heatmap(heat, r, "t");
	EXPECT_TRUE(well_formed(heat.str()));
	EXPECT_LT(heat.str().size(), 2u << 20);

	std::ostringstream plot;
	const std::vector<double> x{0.1, 1, 10};
	const double mx = 1.0, my = 2.0;
	svg::log_lines(plot, x, {{"a", "#000000", {3, 2, 5}}, {"b", "#ff0000", {1, 1, 1}}}, "t", "x", "y", &mx, &my);
	EXPECT_TRUE(well_formed(plot.str()));
	EXPECT_FALSE(well_formed("<svg><g></svg>"));

	EXPECT_EQ(svg::ramp(0.0), "#440154");
	EXPECT_EQ(svg::ramp(1.0), "#fde725");
}

TEST_F(CliFixture, GenerateWritesManifest)
{
	std::istringstream in(oracle::slurp(dir / "l1.txt"));
	EXPECT_EQ(read_edge_list(in).edge_count(), 3u + 57u * 2u);
	const auto manifest = nlohmann::json::parse(oracle::slurp(dir / "l1.txt.manifest.json"));
	EXPECT_EQ(manifest["seed"], 1);
	EXPECT_EQ(manifest["model"], "ba");

	EXPECT_EQ(oracle::run_cli("generate --model powerlaw --nodes 200 --gamma 2.1 --kmin 2 --seed 7 -o pl.txt", dir), 0);
	std::istringstream pl(oracle::slurp(dir / "pl.txt"));
	EXPECT_EQ(component_count(read_edge_list(pl).adjacency()), 1u);
	EXPECT_TRUE(nlohmann::json::parse(oracle::slurp(dir / "pl.txt.manifest.json")).contains("degree_sequence"));
}

TEST_F(CliFixture, ExitCodes)
{
	EXPECT_EQ(oracle::run_cli("generate --model ba --nodes 10", dir), 2);
	EXPECT_EQ(oracle::run_cli("stats", dir), 2);
	EXPECT_EQ(oracle::run_cli("bogus", dir), 2);
	EXPECT_EQ(oracle::run_cli("weights -n ba.mpx", dir), 2);
	EXPECT_EQ(oracle::run_cli("sweep-lambda2 -n ba.mpx --p-grid 1:0:0.1", dir), 2);
	EXPECT_EQ(oracle::run_cli("stats -n missing.mpx", dir), 3);
	std::ofstream(dir / "broken.mpx") << "# roster: a b\n# layers: x y\nx a c 1\n";
	EXPECT_EQ(oracle::run_cli("stats -n broken.mpx", dir), 3);
	std::ofstream(dir / "split.mpx") << "# roster: a b c\n# layers: x y\nx a b 1\ny a b 1\ninter x y a 1\n";
	EXPECT_EQ(oracle::run_cli("eigenratio -n split.mpx --dx-grid 0.1:1:log3", dir), 4);
	EXPECT_EQ(oracle::run_cli("synctime -n ba.mpx --dx 0 --seed 1", dir), 4);
}

TEST_F(CliFixture, RepeatRunsAreByteIdentical)
{
	const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
		{"sweep-lambda2 -n ba.mpx --p-grid 0.5:1:0.5 --dx-grid 0:1:0.5 -o {}.csv --svg {}.svg", {".csv", ".svg"}},
		{"eigenratio -n ba.mpx --dx-grid 0.01:100:log9 -o {}.csv --svg {}.svg", {".csv", ".svg"}},
		{"synctime -n ba.mpx --dx 1 --seed 4 -o {}.csv", {".csv"}},
		{"stats -n ba.mpx -o {}.csv", {".csv"}},
		{"weights -n ba.mpx --synth --seed 9 -o {}.mpx", {".mpx"}},
		{"generate --model powerlaw --nodes 80 --seed 3 -o {}.txt", {".txt", ".txt.manifest.json"}},
	};
	int id = 0;
	for (const auto& [tmpl, exts] : runs) {
		std::string outputs[2];
		for (int rep = 0; rep < 2; ++rep) {
			const std::string stem = "rep" + std::to_string(id) + "_" + std::to_string(rep);
			const std::string cmd = std::regex_replace(tmpl, std::regex("\\{\\}"), stem);
			ASSERT_EQ(oracle::run_cli(cmd + " --jobs " + std::to_string(rep + 1), dir), 0) << cmd;
			for (const auto& ext : exts)
				outputs[rep] += oracle::slurp(dir / (stem + ext));
		}
		EXPECT_FALSE(outputs[0].empty());
		EXPECT_EQ(outputs[0], outputs[1]) << tmpl;
		++id;
	}
}

TEST_F(CliFixture, SweepCsvShape)
{
	ASSERT_EQ(oracle::run_cli("sweep-lambda2 -n ba.mpx -o sweep.csv", dir), 0);
	const auto l = lines(oracle::slurp(dir / "sweep.csv"));
	ASSERT_EQ(l.size(), 102u);
	EXPECT_EQ(l[1], "p,dx,lambda2");
	EXPECT_EQ(l[2].substr(0, 8), "0.2,0.2,");
	EXPECT_EQ(l[101].substr(0, 4), "2,2,");
}

TEST_F(CliFixture, EigenratioFooter)
{
	ASSERT_EQ(oracle::run_cli("eigenratio -n ba.mpx -o er.csv", dir), 0);
	const auto l = lines(oracle::slurp(dir / "er.csv"));
	ASSERT_EQ(l.size(), 2u + 41u + 2u);
	EXPECT_EQ(l[1], "dx,R_sim,R_weak,R_strong");
	EXPECT_TRUE(std::regex_match(l[43], std::regex("# optimal: dx=[0-9.e+-]+, R_strong=[0-9.e+-]+, R_sim=[0-9.e+-]+")));
	EXPECT_TRUE(l[44] == "# unimodal=true" || l[44] == "# unimodal=false");
}

TEST_F(CliFixture, SynctimeColumns)
{
	ASSERT_EQ(oracle::run_cli("synctime -n ba.mpx --dx 1 --seed 4 -o s1.csv", dir), 0);
	ASSERT_EQ(oracle::run_cli("synctime -n ba.mpx --dx 1 --seed 4 --epsilon 0.5 -o s2.csv", dir), 0);
	const auto l = lines(oracle::slurp(dir / "s1.csv"));
	EXPECT_EQ(l[1], "tau,S");
	double prev = -1.0;
	for (std::size_t k = 2; k + 1 < l.size(); ++k) {
		const double s = std::stod(l[k].substr(l[k].find(',') + 1));
		EXPECT_GE(s, prev);
		prev = s;
	}
	auto tau_s = [](const std::string& footer) { return std::stod(footer.substr(footer.find('=') + 1)); };
	EXPECT_LE(tau_s(lines(oracle::slurp(dir / "s2.csv")).back()), tau_s(l.back()));
}

TEST_F(CliFixture, WeightsOptions)
{
	ASSERT_EQ(oracle::run_cli("weights -n ba.mpx --synth --seed 2 -o w.mpx", dir), 0);
	ASSERT_EQ(oracle::run_cli("weights -n w.mpx --unweighted -o u.mpx", dir), 0);
	std::istringstream w(oracle::slurp(dir / "w.mpx")), u(oracle::slurp(dir / "u.mpx"));
	const auto weighted = read_multiplex(w);
	const auto unit = read_multiplex(u);
	for (std::size_t a = 0; a < 2; ++a) {
		for (const auto& [key, x] : weighted.layer(a).edges()) {
			EXPECT_GE(x, 1.0);
			EXPECT_LE(x, 2.0);
		}
		for (const auto& [key, x] : unit.layer(a).edges())
			EXPECT_EQ(x, 1.0);
	}
	for (double x : unit.inter_weights().begin()->second)
		EXPECT_EQ(x, 1.0);

	std::ofstream(dir / "ledger.txt") << "intra 0 0 1 4 0\n";
	EXPECT_EQ(oracle::run_cli("weights -n ba.mpx --ledger ledger.txt -o lw.mpx", dir), 0);
}

TEST(RunCommand, InProcessStats)
{
	const auto dir = oracle::scratch("stats");
	std::ofstream(dir / "tri.mpx") << to_multiplex_text(oracle::pair_of(oracle::triangle(), oracle::triangle()));
	RunConfig cfg;
	cfg.command = "stats";
	cfg.input = (dir / "tri.mpx").string();
	std::ostringstream out, err;
	ASSERT_EQ(run_command(cfg, out, err), 0) << err.str();
	const auto l = lines(out.str());
	ASSERT_EQ(l.size(), 5u);
	// Prism at p = 1, d_x = 1: spectrum {0, 2, 3, 3, 5, 5}.
	EXPECT_EQ(l[4], "multiplex,6,6,9,1,1,3,3,0.333333,3,2,5");
}
