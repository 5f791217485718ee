#pragma once

#include "dynamics.hpp"
#include "generators.hpp"
#include "ingest.hpp"
#include "io.hpp"
#include "spectral.hpp"
#include "structure.hpp"
#include "svg.hpp"
#include "sweep.hpp"
#include "trust_weights.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mplex {

/// Flags of every subcommand; each command reads the fields it needs.
struct RunConfig
{
	std::string command;
	std::string input;		// network, dataset or layer file
	std::string output;		// empty: standard output
	std::string svg;		// optional SVG path
	std::string report;		// ingest: layer report path (empty: standard output)
	std::size_t jobs = 1;

	// generate
	std::string model = "ba";
	std::size_t nodes = 200;
	std::size_t m = 2;
	double gamma = 2.1;
	std::size_t k_min = 2;
	std::optional<std::uint64_t> seed;

	// multiplex / ingest
	std::vector<std::string> layer_files;
	std::vector<std::string> layers;
	double replica_weight = 1.0;
	std::string select = "roster"; // roster | any | all

	// weights
	std::string ledger;
	bool synth = false;
	std::uint64_t max_count = 100;
	bool unweighted = false;
	std::string trust = "layer"; // layer | multiplex

	// spectral / dynamics
	std::vector<double> p{1.0};
	double dx = 1.0;
	std::string p_grid = "0.2:2.0:0.2";
	std::string dx_grid = "0.2:2.0:0.2";
	std::string tau_grid = "0:2:0.01";
	double epsilon = 0.01;
	std::string weak_variant = "scaled";   // scaled | unscaled
	std::string mixing = "squared";		   // squared | signed
};

namespace cli_detail {

inline std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw io_error("cannot open '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

/// Writes to `path`, or to `fallback` when the path is empty.
inline void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body)
{
	if (path.empty()) {
		body(fallback);
		return;
	}
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw io_error("cannot write '" + path + "'");
	body(out);
	if (!out)
		throw io_error("write to '" + path + "' failed");
}

inline MultiplexNetwork load_network(const std::string& path, std::string& bytes)
{
	if (path.empty())
		throw config_error("--network is required");
	bytes = read_file(path);
	std::istringstream in(bytes);
	return read_multiplex(in);
}

inline std::vector<double> layer_p(const RunConfig& cfg, const MultiplexNetwork& net)
{
	if (cfg.p.size() == 1)
		return uniform_p(net, cfg.p.front());
	if (cfg.p.size() != net.layer_count())
		throw config_error("--p needs one value or one per layer");
	return cfg.p;
}

inline std::string flags_digest(const RunConfig& cfg)
{
	std::ostringstream ss;
	ss << cfg.command << '|';
	for (double v : cfg.p)
		ss << format_double(v) << ',';
	ss << '|' << format_double(cfg.dx) << '|' << cfg.p_grid << '|' << cfg.dx_grid << '|' << cfg.tau_grid << '|'
	   << format_double(cfg.epsilon) << '|' << cfg.weak_variant << '|' << cfg.mixing;
	return ss.str();
}

inline Provenance provenance(const RunConfig& cfg, const std::string& input_bytes, std::optional<std::uint64_t> seed)
{
	Provenance p;
	p.seed = seed;
	p.spec_hash = hex64(fnv1a(flags_digest(cfg), fnv1a(input_bytes)));
	return p;
}

inline WeakVariant weak_variant(const RunConfig& cfg)
{
	if (cfg.weak_variant == "scaled")
		return WeakVariant::scaled_strength;
	if (cfg.weak_variant == "unscaled")
		return WeakVariant::unscaled_strength;
	throw config_error("--weak-variant must be scaled or unscaled");
}

inline MixingVariant mixing_variant(const RunConfig& cfg)
{
	if (cfg.mixing == "squared")
		return MixingVariant::squared_mass;
	if (cfg.mixing == "signed")
		return MixingVariant::signed_sum;
	throw config_error("--mixing must be squared or signed");
}

} // namespace cli_detail

/// Writes one generated layer (edge list) and, with --out, a JSON manifest
/// next to it at <out>.manifest.json.
inline void cmd_generate(const RunConfig& cfg, std::ostream& out)
{
	if (!cfg.seed)
		throw config_error("--seed is required");
	GeneratorSpec spec;
	if (cfg.model == "ba")
		spec.model = GeneratorModel::ba;
	else if (cfg.model == "powerlaw")
		spec.model = GeneratorModel::powerlaw;
	else
		throw config_error("--model must be ba or powerlaw");
	spec.n = cfg.nodes;
	spec.m = cfg.m;
	spec.gamma = cfg.gamma;
	spec.k_min = cfg.k_min;
	spec.seed = *cfg.seed;

	nlohmann::json manifest;
	manifest["model"] = cfg.model;
	manifest["nodes"] = spec.n;
	manifest["seed"] = spec.seed;
	manifest["version"] = version_string;

	LayerGraph g(1);
	if (spec.model == GeneratorModel::ba) {
		g = generate_ba(spec);
		manifest["m"] = spec.m;
	} else {
		auto gen = generate_powerlaw_with_report(spec);
		g = std::move(gen.graph);
		manifest["gamma"] = spec.gamma;
		manifest["k_min"] = spec.k_min;
		manifest["degree_sequence"] = {
			{"attempts", gen.report.attempts},
			{"sampled_degree_sum", gen.report.sampled_degree_sum},
			{"realized_degree_sum", 2 * g.edge_count()},
			{"self_loops_removed", gen.report.self_loops_removed},
			{"multi_edges_collapsed", gen.report.multi_edges_collapsed},
			{"components_repaired", gen.report.components_repaired},
			{"edges_added_by_repair", gen.report.edges_added_by_repair},
		};
	}
	manifest["edges"] = g.edge_count();

	cli_detail::emit(cfg.output, out, [&](std::ostream& o) { write_edge_list(o, g); });
	if (!cfg.output.empty())
		cli_detail::emit(cfg.output + ".manifest.json", out, [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
}

/// Couples layer edge lists into a multiplex file.
inline void cmd_multiplex(const RunConfig& cfg, std::ostream& out)
{
	if (cfg.layer_files.empty())
		throw config_error("--layer-files is required");
	if (!cfg.layers.empty() && cfg.layers.size() != cfg.layer_files.size())
		throw config_error("--names needs one name per layer file");
	std::vector<LayerGraph> layers;
	for (const auto& path : cfg.layer_files) {
		std::istringstream in(cli_detail::read_file(path));
		layers.push_back(read_edge_list(in));
	}
	const auto net = couple_replicas(std::move(layers), cfg.replica_weight, cfg.layers);
	cli_detail::emit(cfg.output, out, [&](std::ostream& o) { write_multiplex(o, net); });
}

/// Parses a dataset, prints its per-layer report and, with --out, writes
/// the selected layers as a multiplex file.
inline void cmd_ingest(const RunConfig& cfg, std::ostream& out)
{
	if (cfg.input.empty())
		throw config_error("--input is required");
	std::istringstream in(cli_detail::read_file(cfg.input));
	const auto file = parse_multiplex(in);

	cli_detail::emit(cfg.report, out, [&](std::ostream& o) {
		o << "# roster=" << file.roster.size() << ", self_loops_skipped=" << file.self_loops_skipped
		  << ", duplicates_collapsed=" << file.duplicates_collapsed << '\n';
		o << "layer,nodes,edges,components,avg_degree,avg_degree_roster,clustering\n";
		for (const auto& s : layer_report(file))
			o << s.name << ',' << s.active_nodes << ',' << s.edges << ',' << s.active_components << ','
			  << format_value(s.active_average_degree, 6) << ',' << format_value(s.average_degree, 6) << ','
			  << format_value(s.average_clustering, 6) << '\n';
	});

	if (!cfg.output.empty()) {
		NodeSelection sel;
		if (cfg.select == "roster")
			sel = NodeSelection::full_roster;
		else if (cfg.select == "any")
			sel = NodeSelection::active_in_any;
		else if (cfg.select == "all")
			sel = NodeSelection::active_in_all;
		else
			throw config_error("--select must be roster, any or all");
		const auto names = cfg.layers.empty() ? file.layer_names : cfg.layers;
		const auto net = to_multiplex(file, names, sel, cfg.replica_weight);
		cli_detail::emit(cfg.output, out, [&](std::ostream& o) { write_multiplex(o, net); });
	}
}

/// Trust-derived (or unit) weights for a multiplex file.
inline void cmd_weights(const RunConfig& cfg, std::ostream& out)
{
	std::string bytes;
	const auto net = cli_detail::load_network(cfg.input, bytes);
	std::optional<MultiplexNetwork> weighted;
	if (cfg.unweighted) {
		std::vector<LayerGraph> layers;
		for (const auto& l : net.layers())
			layers.push_back(l.unweighted());
		MultiplexNetwork::CouplingMap inter;
		for (const auto& [pair, w] : net.inter_weights()) {
			std::vector<double> unit(w.size(), 0.0);
			for (std::size_t i = 0; i < w.size(); ++i)
				unit[i] = w[i] > 0.0 ? 1.0 : 0.0;
			inter.emplace(pair, std::move(unit));
		}
		weighted.emplace(std::move(layers), std::move(inter), net.layer_names(), net.node_labels());
	} else {
		TransactionLedger ledger;
		if (!cfg.ledger.empty()) {
			std::istringstream in(cli_detail::read_file(cfg.ledger));
			ledger = read_ledger(in);
		} else if (cfg.synth) {
			if (!cfg.seed)
				throw config_error("--synth needs --seed");
			ledger = synthesize_ledger(net, *cfg.seed, cfg.max_count);
		} else {
			throw config_error("weights need --ledger, --synth or --unweighted");
		}
		TrustSource source;
		if (cfg.trust == "layer")
			source = TrustSource::per_layer;
		else if (cfg.trust == "multiplex")
			source = TrustSource::multiplex;
		else
			throw config_error("--trust must be layer or multiplex");
		weighted.emplace(assign_weights(net, build_profile(ledger, net), source));
	}
	cli_detail::emit(cfg.output, out, [&](std::ostream& o) { write_multiplex(o, *weighted); });
}

/// Per-layer and supra-graph statistics with lambda_2 and lambda_N at (p, d_x).
inline void cmd_stats(const RunConfig& cfg, std::ostream& out)
{
	std::string bytes;
	const auto net = cli_detail::load_network(cfg.input, bytes);
	const auto p = cli_detail::layer_p(cfg, net);
	const auto stats = structural_stats(net);
	const SupraParts parts(net);

	cli_detail::emit(cfg.output, out, [&](std::ostream& o) {
		write_provenance(o, cli_detail::provenance(cfg, bytes, std::nullopt));
		o << "scope,nodes,active_nodes,edges,components,active_components,avg_degree,avg_degree_active,clustering,"
			 "k_max,lambda2,lambdaN\n";
		for (std::size_t a = 0; a < net.layer_count(); ++a) {
			const auto& s = stats.layers[a];
			const Vector ev = eigenvalues_sym(p[a] * parts.layer_laplacians[a]);
			o << s.name << ',' << s.nodes << ',' << s.active_nodes << ',' << s.edges << ',' << s.components << ','
			  << s.active_components << ',' << format_value(s.average_degree, 6) << ','
			  << format_value(s.active_average_degree, 6) << ',' << format_value(s.average_clustering, 6) << ','
			  << s.max_degree << ',' << format_value(ev.size() > 1 ? ev(1) : 0.0) << ','
			  << format_value(ev(ev.size() - 1)) << '\n';
		}
		const Vector ev = eigenvalues_sym(assemble_supra(parts, p, cfg.dx).combined);
		o << "multiplex," << stats.supra_nodes << ',' << stats.supra_nodes << ',' << stats.supra_edges << ','
		  << stats.supra_components << ',' << stats.supra_components << ','
		  << format_value(2.0 * static_cast<double>(stats.supra_edges) / static_cast<double>(stats.supra_nodes), 6)
		  << ',' << format_value(2.0 * static_cast<double>(stats.supra_edges) / static_cast<double>(stats.supra_nodes), 6)
		  << ',' << format_value(stats.supra_clustering, 6) << ',' << stats.k_max << ','
		  << format_value(ev.size() > 1 ? ev(1) : 0.0) << ',' << format_value(ev(ev.size() - 1)) << '\n';
	});
}

inline void cmd_sweep_lambda2(const RunConfig& cfg, std::ostream& out)
{
	std::string bytes;
	const auto net = cli_detail::load_network(cfg.input, bytes);
	auto result = lambda2_sweep(net, parse_grid(cfg.p_grid), parse_grid(cfg.dx_grid), cfg.jobs);
	result.provenance = cli_detail::provenance(cfg, bytes, std::nullopt);
	cli_detail::emit(cfg.output, out, [&](std::ostream& o) { write_sweep_csv(o, result); });
	if (!cfg.svg.empty())
		cli_detail::emit(cfg.svg, out, [&](std::ostream& o) { svg::heatmap(o, result, "algebraic connectivity lambda2(p, dx)"); });
}

/// R over a d_x grid with both approximations; the optimal point and the
/// unimodality flag go into trailing comment lines.
inline void cmd_eigenratio(const RunConfig& cfg, std::ostream& out)
{
	std::string bytes;
	const auto net = cli_detail::load_network(cfg.input, bytes);
	const auto p = cli_detail::layer_p(cfg, net);
	const auto curve = eigenratio_curve(net, p, parse_grid(cfg.dx_grid), cfg.jobs, cli_detail::weak_variant(cfg),
										cli_detail::mixing_variant(cfg));
	if (!curve.optimal)
		throw bracket_error("weak and strong approximations do not cross on the d_x grid");

	cli_detail::emit(cfg.output, out, [&](std::ostream& o) {
		write_provenance(o, cli_detail::provenance(cfg, bytes, std::nullopt));
		o << "dx,R_sim,R_weak,R_strong\n";
		for (std::size_t k = 0; k < curve.dx.size(); ++k)
			o << format_value(curve.dx[k]) << ',' << format_value(curve.r_simulated[k]) << ','
			  << format_value(curve.r_weak[k]) << ',' << format_value(curve.r_strong[k]) << '\n';
		o << "# optimal: dx=" << format_value(curve.optimal->d_x) << ", R_strong=" << format_value(curve.optimal->r_analytic)
		  << ", R_sim=" << format_value(curve.optimal->r_simulated) << '\n';
		o << "# unimodal=" << (is_unimodal(curve.r_simulated) ? "true" : "false") << '\n';
	});
	if (!cfg.svg.empty())
		cli_detail::emit(cfg.svg, out, [&](std::ostream& o) {
			svg::log_lines(o, curve.dx,
						   {{"simulated", "#d62728", curve.r_simulated},
							{"weak approx", "#2ca02c", curve.r_weak},
							{"strong approx", "#1f77b4", curve.r_strong}},
						   "eigenratio R(dx)", "dx", "R", &curve.optimal->d_x, &curve.optimal->r_analytic);
		});
}

/// S(tau) on a grid and the synchronization time at --epsilon.
inline void cmd_synctime(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	if (!cfg.seed)
		throw config_error("--seed is required");
	std::string bytes;
	const auto net = cli_detail::load_network(cfg.input, bytes);
	const auto supra = build_supra(net, cli_detail::layer_p(cfg, net), cfg.dx);
	const auto summary = eig_sym(supra.combined, false);
	if (summary.dimension() > 1 && summary.lambda2 <= zero_tolerance(summary.lambdaN))
		throw disconnected_error("supra-graph is disconnected at d_x = " + format_value(cfg.dx));
	const auto state = init_modes(summary, *cfg.seed);
	const auto taus = parse_grid(cfg.tau_grid);
	const double tau_s = sync_time(state, cfg.epsilon);
	if (std::all_of(state.amplitudes.begin(), state.amplitudes.end(), [](double a) { return a == 0.0; }))
		err << "warning: all mode amplitudes are zero; synchronization time is 0\n";

	cli_detail::emit(cfg.output, out, [&](std::ostream& o) {
		write_provenance(o, cli_detail::provenance(cfg, bytes, cfg.seed));
		o << "tau,S\n";
		for (double t : taus)
			o << format_value(t) << ',' << format_value(sync_level(state, t)) << '\n';
		o << "# tau_s=" << format_value(tau_s) << ", epsilon=" << format_value(cfg.epsilon) << '\n';
	});
}

/// Exit codes: 0 success, 2 configuration, 3 data, 4 numerical.
inline int exit_code_for(const std::exception& e)
{
	if (dynamic_cast<const config_error*>(&e) || dynamic_cast<const domain_error*>(&e))
		return 2;
	if (dynamic_cast<const numerical_error*>(&e))
		return 4;
	return 3;
}

inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
	try {
		if (cfg.command == "generate")
			cmd_generate(cfg, out);
		else if (cfg.command == "multiplex")
			cmd_multiplex(cfg, out);
		else if (cfg.command == "ingest")
			cmd_ingest(cfg, out);
		else if (cfg.command == "weights")
			cmd_weights(cfg, out);
		else if (cfg.command == "stats")
			cmd_stats(cfg, out);
		else if (cfg.command == "sweep-lambda2")
			cmd_sweep_lambda2(cfg, out);
		else if (cfg.command == "eigenratio")
			cmd_eigenratio(cfg, out);
		else if (cfg.command == "synctime")
			cmd_synctime(cfg, out, err);
		else
			throw config_error("unknown command '" + cfg.command + "'");
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return exit_code_for(e);
	}
	return 0;
}

} // namespace mplex
