#include <mplex/commands.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_network(CLI::App* sub, mplex::RunConfig& cfg)
{
	sub->add_option("--network,-n", cfg.input, "multiplex network file")->required();
	sub->add_option("--out,-o", cfg.output, "output path (default: stdout)");
}

void add_parameters(CLI::App* sub, mplex::RunConfig& cfg)
{
	sub->add_option("--p", cfg.p, "intra-layer scale, one value or one per layer");
	sub->add_option("--dx", cfg.dx, "inter-layer coupling strength");
}

} // namespace

int main(int argc, char** argv)
{
	mplex::RunConfig cfg;
	CLI::App app{"Spectral analysis of two-layer multiplex networks"};
	app.require_subcommand(1);
	app.fallthrough();
	app.set_version_flag("--version", std::string(mplex::version_string));
	app.add_option("--jobs,-j", cfg.jobs, "worker threads for grid evaluations")->check(CLI::PositiveNumber);

	auto* gen = app.add_subcommand("generate", "generate one synthetic layer");
	gen->add_option("--model", cfg.model, "ba or powerlaw")->check(CLI::IsMember({"ba", "powerlaw"}));
	gen->add_option("--nodes", cfg.nodes, "node count");
	gen->add_option("--m", cfg.m, "edges per new node (ba)");
	gen->add_option("--gamma", cfg.gamma, "degree exponent (powerlaw)");
	gen->add_option("--kmin", cfg.k_min, "minimum degree (powerlaw)");
	gen->add_option("--seed", cfg.seed, "random seed");
	gen->add_option("--out,-o", cfg.output, "edge list path; a manifest is written next to it");

	auto* mux = app.add_subcommand("multiplex", "couple layer edge lists into a multiplex file");
	mux->add_option("layers", cfg.layer_files, "layer edge-list files")->required();
	mux->add_option("--names", cfg.layers, "layer names");
	mux->add_option("--replica-weight", cfg.replica_weight, "replica link weight");
	mux->add_option("--out,-o", cfg.output, "output path (default: stdout)");

	auto* ing = app.add_subcommand("ingest", "load an empirical multiplex edge file");
	ing->add_option("input", cfg.input, "dataset file (`a b layer [w]` lines)")->required();
	ing->add_option("--layers", cfg.layers, "layers to keep, in order");
	ing->add_option("--select", cfg.select, "roster, any or all")->check(CLI::IsMember({"roster", "any", "all"}));
	ing->add_option("--replica-weight", cfg.replica_weight, "replica link weight");
	ing->add_option("--report", cfg.report, "layer report path (default: stdout)");
	ing->add_option("--out,-o", cfg.output, "multiplex output path");

	auto* wts = app.add_subcommand("weights", "assign trust-derived weights");
	add_network(wts, cfg);
	wts->add_option("--ledger", cfg.ledger, "transaction ledger file");
	wts->add_flag("--synth", cfg.synth, "draw a synthetic ledger");
	wts->add_option("--seed", cfg.seed, "seed for --synth");
	wts->add_option("--max-count", cfg.max_count, "largest synthetic count");
	wts->add_flag("--unweighted", cfg.unweighted, "set every weight to 1");
	wts->add_option("--trust", cfg.trust, "layer or multiplex")->check(CLI::IsMember({"layer", "multiplex"}));

	auto* st = app.add_subcommand("stats", "structural and spectral statistics");
	add_network(st, cfg);
	add_parameters(st, cfg);

	auto* sw = app.add_subcommand("sweep-lambda2", "lambda_2 over a (p, dx) grid");
	add_network(sw, cfg);
	sw->add_option("--p-grid", cfg.p_grid, "A:B:S or A:B:logN");
	sw->add_option("--dx-grid", cfg.dx_grid, "A:B:S or A:B:logN");
	sw->add_option("--svg", cfg.svg, "heatmap path");

	auto* er = app.add_subcommand("eigenratio", "eigenratio curve and optimal coupling");
	add_network(er, cfg);
	er->add_option("--p", cfg.p, "intra-layer scale, one value or one per layer");
	er->add_option("--dx-grid", cfg.dx_grid, "A:B:S or A:B:logN")->default_str("0.01:100:log41");
	er->add_option("--weak-variant", cfg.weak_variant, "scaled or unscaled");
	er->add_option("--mixing", cfg.mixing, "squared or signed");
	er->add_option("--svg", cfg.svg, "line plot path");

	auto* sy = app.add_subcommand("synctime", "synchronization level and time");
	add_network(sy, cfg);
	add_parameters(sy, cfg);
	sy->add_option("--tau-grid", cfg.tau_grid, "A:B:S or A:B:logN");
	sy->add_option("--epsilon", cfg.epsilon, "synchronization tolerance");
	sy->add_option("--seed", cfg.seed, "amplitude seed");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	for (auto* sub : app.get_subcommands())
		cfg.command = sub->get_name();
	if (cfg.command == "eigenratio" && er->count("--dx-grid") == 0)
		cfg.dx_grid = "0.01:100:log41";
	return mplex::run_command(cfg, std::cout, std::cerr);
}
