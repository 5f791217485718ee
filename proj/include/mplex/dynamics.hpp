#pragma once

#include "core_model.hpp"
#include "random.hpp"
#include "spectral.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace mplex {

/// Eigenmode amplitudes x_i(0) paired with the supra-Laplacian spectrum.
struct ModeState
{
	std::vector<double> amplitudes;
	std::vector<double> eigenvalues; // ascending
	std::uint64_t seed = 0;

	std::size_t size() const noexcept { return amplitudes.size(); }
};

/// One uniform [0, 1) draw per mode in index order; zero modes are then
/// cleared, so equal seeds give equal amplitudes per index across spectra.
inline ModeState init_modes(const SpectralSummary& summary, std::uint64_t seed)
{
	Rng rng(seed);
	ModeState state;
	state.seed = seed;
	const double tol = zero_tolerance(summary.lambdaN);
	for (Eigen::Index i = 0; i < summary.eigenvalues.size(); ++i) {
		const double a = rng.uniform();
		const double lambda = summary.eigenvalues(i);
		state.eigenvalues.push_back(lambda);
		state.amplitudes.push_back(lambda <= tol ? 0.0 : a);
	}
	return state;
}

/// S(tau) = 1 - (1/MN) sum_i x_i(0) exp(-lambda_i tau).
inline double sync_level(const ModeState& state, double tau)
{
	if (!(tau >= 0.0))
		throw domain_error("tau must be nonnegative");
	if (state.amplitudes.empty())
		return 1.0;
	double remaining = 0.0;
	for (std::size_t i = 0; i < state.size(); ++i)
		if (state.amplitudes[i] != 0.0)
			remaining += state.amplitudes[i] * std::exp(-state.eigenvalues[i] * tau);
	return 1.0 - remaining / static_cast<double>(state.size());
}

/// Smallest tau with S(tau) >= 1 - epsilon, to 1e-6 relative.
inline double sync_time(const ModeState& state, double epsilon)
{
	if (!(epsilon > 0.0 && epsilon < 1.0))
		throw domain_error("epsilon must lie in (0, 1)");
	double slowest = 0.0;
	bool any = false;
	for (std::size_t i = 0; i < state.size(); ++i)
		if (state.amplitudes[i] > 0.0) {
			if (!(state.eigenvalues[i] > 0.0))
				throw domain_error("nonzero amplitude on a zero mode never decays");
			slowest = any ? std::min(slowest, state.eigenvalues[i]) : state.eigenvalues[i];
			any = true;
		}
	if (!any)
		return 0.0;
	const double target = 1.0 - epsilon;
	if (sync_level(state, 0.0) >= target)
		return 0.0;

	double lo = 0.0;
	double hi = 1.0 / slowest;
	while (sync_level(state, hi) < target) {
		lo = hi;
		hi *= 2.0;
	}
	while (hi - lo > 1e-6 * hi) {
		const double mid = 0.5 * (lo + hi);
		if (sync_level(state, mid) >= target)
			hi = mid;
		else
			lo = mid;
	}
	return hi;
}

/// x(t) = V exp(-Lambda t) V^T x0.
inline Vector diffuse_exact(const SpectralSummary& summary, const Vector& x0, double t)
{
	if (summary.eigenvectors.size() == 0)
		throw domain_error("spectral summary has no eigenvectors");
	const Vector decay = (-summary.eigenvalues.array() * t).exp();
	return summary.eigenvectors * (decay.asDiagonal() * (summary.eigenvectors.transpose() * x0));
}

/// Forward-Euler integration of dx/dt = -L^M x up to time t with steps of
/// at most dt; dt must satisfy dt <= 1 / (2 lambda_max).
inline Vector evolve_oracle(const SupraLaplacian& supra, const Vector& x0, double t, double dt)
{
	if (x0.size() != supra.combined.rows())
		throw domain_error("initial state has the wrong dimension");
	if (!(t >= 0.0) || !(dt > 0.0))
		throw domain_error("need t >= 0 and dt > 0");
	const Vector ev = eigenvalues_sym(supra.combined);
	const double lmax = ev(ev.size() - 1);
	if (lmax > 0.0 && dt > 1.0 / (2.0 * lmax))
		throw domain_error("dt exceeds the explicit-Euler stability bound 1/(2 lambda_max)");

	const auto steps = static_cast<std::size_t>(std::ceil(t / dt));
	if (steps == 0)
		return x0;
	const double h = t / static_cast<double>(steps);
	Vector x = x0;
	for (std::size_t k = 0; k < steps; ++k)
		x -= h * (supra.combined * x);
	return x;
}

} // namespace mplex
