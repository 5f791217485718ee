#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's numerical routines; graphs are built through the public types.

#include <mplex/core_model.hpp>
#include <mplex/generators.hpp>
#include <mplex/ingest.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<double>(n, 0.0)); }

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
/// Returns eigenvalues in ascending order.
inline std::vector<double> jacobi_eigenvalues(Dense a, double tol = 1e-14, int max_sweeps = 100)
{
	const std::size_t n = a.size();
	double scale = 0.0;
	for (const auto& row : a)
		for (double v : row)
			scale = std::max(scale, std::abs(v));
	for (int sweep = 0; sweep < max_sweeps; ++sweep) {
		double off = 0.0;
		for (std::size_t p = 0; p < n; ++p)
			for (std::size_t q = p + 1; q < n; ++q)
				off += a[p][q] * a[p][q];
		if (std::sqrt(off) <= tol * std::max(1.0, scale))
			break;
		for (std::size_t p = 0; p < n; ++p)
			for (std::size_t q = p + 1; q < n; ++q) {
				if (a[p][q] == 0.0)
					continue;
				const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
				const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
				const double c = 1.0 / std::sqrt(t * t + 1.0);
				const double s = t * c;
				for (std::size_t k = 0; k < n; ++k) {
					const double akp = a[k][p], akq = a[k][q];
					a[k][p] = c * akp - s * akq;
					a[k][q] = s * akp + c * akq;
				}
				for (std::size_t k = 0; k < n; ++k) {
					const double apk = a[p][k], aqk = a[q][k];
					a[p][k] = c * apk - s * aqk;
					a[q][k] = s * apk + c * aqk;
				}
			}
	}
	std::vector<double> ev(n);
	for (std::size_t i = 0; i < n; ++i)
		ev[i] = a[i][i];
	std::sort(ev.begin(), ev.end());
	return ev;
}

inline Dense to_dense(const mplex::Matrix& m)
{
	Dense d = zeros(static_cast<std::size_t>(m.rows()));
	for (Eigen::Index i = 0; i < m.rows(); ++i)
		for (Eigen::Index j = 0; j < m.cols(); ++j)
			d[i][j] = m(i, j);
	return d;
}

/// L = D - W from an explicit weighted edge list.
inline Dense laplacian(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges)
{
	Dense l = zeros(n);
	for (const auto& [i, j, w] : edges) {
		l[i][j] -= w;
		l[j][i] -= w;
		l[i][i] += w;
		l[j][j] += w;
	}
	return l;
}

/// Supra-Laplacian assembled entry by entry from the network's edge data.
inline Dense supra(const mplex::MultiplexNetwork& net, const std::vector<double>& p, double dx)
{
	const std::size_t n = net.node_count();
	std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
	for (std::size_t a = 0; a < net.layer_count(); ++a)
		for (const auto& [key, w] : net.layer(a).edges())
			edges.emplace_back(a * n + key.first, a * n + key.second, p[a] * w);
	for (const auto& [pair, w] : net.inter_weights())
		for (std::size_t i = 0; i < n; ++i)
			if (w[i] > 0.0)
				edges.emplace_back(pair.first * n + i, pair.second * n + i, dx * w[i]);
	return laplacian(net.supra_size(), edges);
}

inline mplex::LayerGraph complete(std::size_t n)
{
	mplex::LayerGraph g(n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			g.add_edge(i, j);
	return g;
}

inline mplex::LayerGraph path(std::size_t n)
{
	mplex::LayerGraph g(n);
	for (std::size_t i = 0; i + 1 < n; ++i)
		g.add_edge(i, i + 1);
	return g;
}

inline mplex::LayerGraph star(std::size_t n)
{
	mplex::LayerGraph g(n);
	for (std::size_t i = 1; i < n; ++i)
		g.add_edge(0, i);
	return g;
}

inline mplex::LayerGraph triangle()
{
	return complete(3);
}

inline mplex::MultiplexNetwork pair_of(mplex::LayerGraph a, mplex::LayerGraph b)
{
	return mplex::MultiplexNetwork::with_default_coupling({std::move(a), std::move(b)});
}

/// Two BA layers (m = 2 and m = 3) on n nodes with unit replica links.
inline mplex::MultiplexNetwork ba_multiplex(std::uint64_t seed, std::size_t n = 200)
{
	mplex::GeneratorSpec s1{mplex::GeneratorModel::ba, n, 2, 2.1, 2, seed};
	mplex::GeneratorSpec s2{mplex::GeneratorModel::ba, n, 3, 2.1, 2, seed + 1000};
	return mplex::couple_replicas({mplex::generate(s1), mplex::generate(s2)}, 1.0);
}

/// Two power-law layers (gamma 2.1 and 2.2) on n nodes.
inline mplex::MultiplexNetwork powerlaw_multiplex(std::uint64_t seed, std::size_t n = 200)
{
	mplex::GeneratorSpec s1{mplex::GeneratorModel::powerlaw, n, 2, 2.1, 2, seed};
	mplex::GeneratorSpec s2{mplex::GeneratorModel::powerlaw, n, 2, 2.2, 2, seed + 1000};
	return mplex::couple_replicas({mplex::generate(s1), mplex::generate(s2)}, 1.0);
}

inline std::string data_path(const std::string& name) { return std::string(MPLEX_DATA_DIR) + "/" + name; }

inline mplex::MultiplexEdgeFile aarhus()
{
	std::ifstream in(data_path("cs_aarhus.edges"));
	return mplex::parse_multiplex(in);
}

/// Facebook and Lunch restricted to the actors present in both.
inline mplex::MultiplexNetwork aarhus_facebook_lunch()
{
	return mplex::to_multiplex(aarhus(), {"Facebook", "Lunch"}, mplex::NodeSelection::active_in_all);
}

inline std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

/// Fresh scratch directory under the system temp path.
inline std::filesystem::path scratch(const std::string& name)
{
	auto dir = std::filesystem::temp_directory_path() / ("mplex_test_" + name + "_" + std::to_string(::getpid()));
	std::filesystem::remove_all(dir);
	std::filesystem::create_directories(dir);
	return dir;
}

/// Runs the command-line tool with stdout and stderr discarded; returns its exit code.
inline int run_cli(const std::string& args, const std::filesystem::path& cwd)
{
	const std::string cmd = "cd '" + cwd.string() + "' && '" + MPLEX_CLI_PATH + "' " + args + " >/dev/null 2>&1";
	const int status = std::system(cmd.c_str());
	return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace oracle
