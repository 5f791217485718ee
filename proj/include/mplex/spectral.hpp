#pragma once

#include "core_model.hpp"
#include "parallel.hpp"
#include "sweep_result.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace mplex {

/// Eigenvalues at or below this are treated as zero.
inline double zero_tolerance(double lambda_max) { return 1e-9 * std::max(1.0, std::abs(lambda_max)); }

struct SpectralSummary
{
	Vector eigenvalues;	 // ascending
	Matrix eigenvectors; // columns, orthonormal; empty when not retained
	double lambda2 = 0.0;
	double lambdaN = 0.0;
	Vector fiedler_vector;
	double residual = 0.0; // max_k ||L v_k - lambda_k v_k||_inf

	std::size_t dimension() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
	std::size_t zero_multiplicity() const
	{
		const double tol = zero_tolerance(lambdaN);
		return static_cast<std::size_t>((eigenvalues.array() <= tol).count());
	}
};

namespace detail {

inline void require_symmetric(const Matrix& a)
{
	if (a.rows() != a.cols() || a.rows() == 0)
		throw domain_error("eigensolver needs a non-empty square matrix");
	const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
	if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
		throw domain_error("matrix is not symmetric");
}

/// Flips each column so its first entry of non-negligible magnitude is positive.
inline void canonical_signs(Matrix& v)
{
	for (Eigen::Index c = 0; c < v.cols(); ++c)
		for (Eigen::Index r = 0; r < v.rows(); ++r)
			if (std::abs(v(r, c)) > 1e-10) {
				if (v(r, c) < 0.0)
					v.col(c) = -v.col(c);
				break;
			}
}

} // namespace detail

/// Full symmetric eigendecomposition, eigenvalues ascending.
inline SpectralSummary eig_sym(const Matrix& a, bool keep_vectors = true)
{
	detail::require_symmetric(a);
	Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
	if (solver.info() != Eigen::Success)
		throw numerical_error("symmetric eigensolver did not converge (matrix norm " + std::to_string(a.norm()) + ")");

	SpectralSummary s;
	s.eigenvalues = solver.eigenvalues();
	Matrix vectors = solver.eigenvectors();
	detail::canonical_signs(vectors);
	const auto n = s.eigenvalues.size();
	s.lambdaN = s.eigenvalues(n - 1);
	s.lambda2 = n > 1 ? s.eigenvalues(1) : 0.0;
	s.fiedler_vector = n > 1 ? Vector(vectors.col(1)) : Vector(vectors.col(0));
	s.residual = ((a * vectors) - vectors * s.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
	if (keep_vectors)
		s.eigenvectors = std::move(vectors);
	return s;
}

/// Eigenvalues only, ascending.
inline Vector eigenvalues_sym(const Matrix& a)
{
	detail::require_symmetric(a);
	Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
	if (solver.info() != Eigen::Success)
		throw numerical_error("symmetric eigensolver did not converge (matrix norm " + std::to_string(a.norm()) + ")");
	return solver.eigenvalues();
}

/// Second smallest eigenvalue of L^M, counting multiplicity (0 for a
/// disconnected supra-graph).
inline double algebraic_connectivity(const SupraLaplacian& supra)
{
	const Vector ev = eigenvalues_sym(supra.combined);
	return ev.size() > 1 ? ev(1) : 0.0;
}

inline double eigenratio_of(const Vector& ev, double d_x)
{
	const double lmax = ev(ev.size() - 1);
	const double l2 = ev.size() > 1 ? ev(1) : 0.0;
	if (l2 <= zero_tolerance(lmax))
		throw disconnected_error("supra-graph is disconnected at d_x = " + std::to_string(d_x) + " (lambda_2 = " +
								 std::to_string(l2) + ")");
	return lmax / l2;
}

/// R = lambda_max / lambda_2 of L^M.
inline double eigenratio(const SupraLaplacian& supra)
{
	return eigenratio_of(eigenvalues_sym(supra.combined), supra.d_x);
}

/// How the inter-layer strength enters the weak-coupling numerator.
enum class WeakVariant
{
	scaled_strength, // max_a [p^a lambda_N(L^a) + d_x max_i s^I_i]
	unscaled_strength // max_a [p^a lambda_N(L^a) + max_i s^I_i]
};

/// How layer Laplacians are mixed into L^WA_max.
enum class MixingVariant
{
	squared_mass, // c_a = block share of |x'|^2, averaged over the top eigenspace
	signed_sum	  // c_a = sum of x' entries in block a / |x'|^2 (basis dependent)
};

/// Weak- and strong-coupling approximations of R(d_x), with every spectral
/// ingredient computed once so the curves are cheap to evaluate.
class CouplingApproximation
{
  public:
	CouplingApproximation(const MultiplexNetwork& net,
						  const std::vector<double>& p_per_layer,
						  WeakVariant weak_variant = WeakVariant::scaled_strength,
						  MixingVariant mixing = MixingVariant::squared_mass)
		: weak_variant_(weak_variant)
	{
		check_supra_parameters(net.layer_count(), p_per_layer, 0.0);
		const SupraParts parts(net);
		const std::size_t m = net.layer_count();
		const auto n = static_cast<Eigen::Index>(net.node_count());

		for (std::size_t a = 0; a < m; ++a) {
			const Vector ev = eigenvalues_sym(parts.layer_laplacians[a]);
			double smax = 0.0;
			for (NodeId i = 0; i < net.node_count(); ++i)
				smax = std::max(smax, net.inter_strength(a, i));
			layer_terms_.push_back({p_per_layer[a] * ev(ev.size() - 1), smax});
		}

		const SpectralSummary inter = eig_sym(parts.inter);
		const double tol = zero_tolerance(inter.lambdaN);
		inter_lambda_max_ = inter.lambdaN;
		for (Eigen::Index k = 0; k < inter.eigenvalues.size(); ++k)
			if (inter.eigenvalues(k) > tol) {
				inter_lambda_min_nonzero_ = inter.eigenvalues(k);
				break;
			}

		mixing_weights_.assign(m, 0.0);
		if (inter_lambda_max_ > tol) {
			if (mixing == MixingVariant::squared_mass) {
				std::size_t top = 0;
				for (Eigen::Index k = 0; k < inter.eigenvalues.size(); ++k) {
					if (std::abs(inter.eigenvalues(k) - inter_lambda_max_) > zero_tolerance(inter_lambda_max_))
						continue;
					++top;
					const Vector& v = inter.eigenvectors.col(k);
					for (std::size_t a = 0; a < m; ++a)
						mixing_weights_[a] += v.segment(static_cast<Eigen::Index>(a) * n, n).squaredNorm() / v.squaredNorm();
				}
				for (auto& c : mixing_weights_)
					c /= static_cast<double>(top);
			} else {
				const Vector v = inter.eigenvectors.col(inter.eigenvalues.size() - 1);
				for (std::size_t a = 0; a < m; ++a)
					mixing_weights_[a] = v.segment(static_cast<Eigen::Index>(a) * n, n).sum() / v.squaredNorm();
			}
		} else {
			mixing_weights_.assign(m, 1.0 / static_cast<double>(m));
		}

		Matrix mixed = Matrix::Zero(n, n);
		Matrix average = Matrix::Zero(n, n);
		for (std::size_t a = 0; a < m; ++a) {
			mixed += mixing_weights_[a] * p_per_layer[a] * parts.layer_laplacians[a];
			average += p_per_layer[a] * parts.layer_laplacians[a];
		}
		average /= static_cast<double>(m);
		const Vector mixed_ev = eigenvalues_sym(mixed);
		mixed_lambda_max_ = mixed_ev(mixed_ev.size() - 1);
		const Vector avg_ev = eigenvalues_sym(average);
		average_lambda2_ = avg_ev.size() > 1 ? avg_ev(1) : 0.0;
		average_lambda_max_ = avg_ev(avg_ev.size() - 1);
	}

	/// max_a(p^a lambda_N(L^a) + s^I) / (d_x lambda_2+(L^I)).
	double weak(double d_x) const
	{
		if (!(d_x > 0.0))
			throw domain_error("weak-coupling approximation needs d_x > 0");
		if (!inter_lambda_min_nonzero_)
			throw domain_error("network has no inter-layer coupling");
		double numerator = 0.0;
		for (const auto& t : layer_terms_) {
			const double s = weak_variant_ == WeakVariant::scaled_strength ? d_x * t.max_strength : t.max_strength;
			numerator = std::max(numerator, t.lambda_max + s);
		}
		return numerator / (d_x * *inter_lambda_min_nonzero_);
	}

	/// (d_x lambda_M(L^I) + lambda_N(L^WA_max)) / lambda_2(L^AV).
	double strong(double d_x) const
	{
		if (!(d_x >= 0.0))
			throw domain_error("strong-coupling approximation needs d_x >= 0");
		if (average_lambda2_ <= zero_tolerance(average_lambda_max_))
			throw disconnected_error("average layer Laplacian is disconnected");
		return (d_x * inter_lambda_max_ + mixed_lambda_max_) / average_lambda2_;
	}

	double inter_lambda_max() const noexcept { return inter_lambda_max_; }
	std::optional<double> inter_lambda_min_nonzero() const noexcept { return inter_lambda_min_nonzero_; }
	const std::vector<double>& mixing_weights() const noexcept { return mixing_weights_; }
	double mixed_lambda_max() const noexcept { return mixed_lambda_max_; }
	double average_lambda2() const noexcept { return average_lambda2_; }

  private:
	struct LayerTerm
	{
		double lambda_max;	 // p^a lambda_N(L^a)
		double max_strength; // max_i s^I_i over layer a
	};

	WeakVariant weak_variant_;
	std::vector<LayerTerm> layer_terms_;
	double inter_lambda_max_ = 0.0;
	std::optional<double> inter_lambda_min_nonzero_;
	std::vector<double> mixing_weights_;
	double mixed_lambda_max_ = 0.0;
	double average_lambda2_ = 0.0;
	double average_lambda_max_ = 0.0;
};

inline double weak_approx(const MultiplexNetwork& net,
						  const std::vector<double>& p_per_layer,
						  double d_x,
						  WeakVariant variant = WeakVariant::scaled_strength)
{
	if (!(d_x > 0.0))
		throw domain_error("weak-coupling approximation needs d_x > 0");
	return CouplingApproximation(net, p_per_layer, variant).weak(d_x);
}

inline double strong_approx(const MultiplexNetwork& net,
							const std::vector<double>& p_per_layer,
							double d_x,
							MixingVariant mixing = MixingVariant::squared_mass)
{
	return CouplingApproximation(net, p_per_layer, WeakVariant::scaled_strength, mixing).strong(d_x);
}

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
/// Stops when the bracket width is below rel_tol * hi.
template<typename F>
double bisect_root(F&& f, double lo, double hi, double rel_tol = 1e-6)
{
	if (!(lo < hi))
		throw domain_error("bisection needs lo < hi");
	double f_lo = f(lo);
	const double f_hi = f(hi);
	if (f_lo == 0.0)
		return lo;
	if (f_hi == 0.0)
		return hi;
	if ((f_lo > 0.0) == (f_hi > 0.0))
		throw bracket_error("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
	while (hi - lo > rel_tol * std::abs(hi)) {
		const double mid = 0.5 * (lo + hi);
		const double f_mid = f(mid);
		if (f_mid == 0.0)
			return mid;
		if ((f_mid > 0.0) == (f_lo > 0.0)) {
			lo = mid;
			f_lo = f_mid;
		} else {
			hi = mid;
		}
	}
	return 0.5 * (lo + hi);
}

struct OptimalCoupling
{
	double d_x = 0.0;
	double r_analytic = 0.0;  // strong(d_x*) = weak(d_x*)
	double r_simulated = 0.0; // lambda_max / lambda_2 of L^M at d_x*
};

/// Crossing of the weak and strong curves on [d_min, d_max]; requires
/// weak > strong at d_min and weak < strong at d_max.
inline OptimalCoupling optimal_dx(const MultiplexNetwork& net,
								  const std::vector<double>& p_per_layer,
								  double d_min,
								  double d_max,
								  WeakVariant weak_variant = WeakVariant::scaled_strength,
								  MixingVariant mixing = MixingVariant::squared_mass)
{
	if (!(d_min > 0.0) || !(d_max > d_min))
		throw domain_error("optimal_dx needs 0 < d_min < d_max");
	const CouplingApproximation approx(net, p_per_layer, weak_variant, mixing);
	auto gap = [&](double d) { return approx.weak(d) - approx.strong(d); };
	if (!(gap(d_min) > 0.0) || !(gap(d_max) < 0.0))
		throw bracket_error("weak and strong approximations do not cross on [" + std::to_string(d_min) + ", " +
							std::to_string(d_max) + "]");
	OptimalCoupling out;
	out.d_x = bisect_root(gap, d_min, d_max, 1e-6);
	out.r_analytic = approx.strong(out.d_x);
	out.r_simulated = eigenratio(build_supra(net, p_per_layer, out.d_x));
	return out;
}

/// lambda_2 over a p x d_x grid (rows p, columns d_x), uniform p per layer.
inline SweepResult lambda2_sweep(const MultiplexNetwork& net,
								 const std::vector<double>& p_grid,
								 const std::vector<double>& dx_grid,
								 std::size_t jobs = 1)
{
	if (p_grid.empty() || dx_grid.empty())
		throw domain_error("sweep grids must be non-empty");
	for (double v : p_grid)
		if (!(v >= 0.0))
			throw domain_error("p grid values must be >= 0");
	for (double v : dx_grid)
		if (!(v >= 0.0))
			throw domain_error("d_x grid values must be >= 0");

	const SupraParts parts(net);
	SweepResult result;
	result.rows = {"p", p_grid};
	result.cols = {"dx", dx_grid};
	result.metric = "lambda2";
	result.values.assign(p_grid.size() * dx_grid.size(), 0.0);
	parallel_for(result.values.size(), jobs, [&](std::size_t k) {
		const double p = p_grid[k / dx_grid.size()];
		const double d = dx_grid[k % dx_grid.size()];
		result.values[k] = algebraic_connectivity(assemble_supra(parts, uniform_p(net, p), d));
	});
	return result;
}

/// x^T L x / |x~|^2 where x~ is x with its mean removed.
inline double rayleigh_quotient(const Matrix& lap, const Vector& x)
{
	if (lap.rows() != x.size() || lap.cols() != x.size())
		throw domain_error("dimension mismatch in Rayleigh quotient");
	const Vector centered = x.array() - x.mean();
	const double denom = centered.squaredNorm();
	if (!(denom > 1e-24 * std::max(1.0, x.squaredNorm())))
		throw domain_error("Rayleigh quotient needs a non-constant vector");
	return x.dot(lap * x) / denom;
}

struct EigenratioCurve
{
	std::vector<double> dx;
	std::vector<double> r_simulated;
	std::vector<double> r_weak;
	std::vector<double> r_strong;
	std::optional<OptimalCoupling> optimal;
};

/// Simulated and approximated R over a d_x grid (all d_x > 0). The optimal
/// point is searched on [min, max] of the grid and left empty if the
/// approximations do not cross there.
inline EigenratioCurve eigenratio_curve(const MultiplexNetwork& net,
										const std::vector<double>& p_per_layer,
										const std::vector<double>& dx_grid,
										std::size_t jobs = 1,
										WeakVariant weak_variant = WeakVariant::scaled_strength,
										MixingVariant mixing = MixingVariant::squared_mass)
{
	if (dx_grid.empty())
		throw domain_error("d_x grid must be non-empty");
	for (std::size_t k = 0; k < dx_grid.size(); ++k)
		if (!(dx_grid[k] > 0.0) || (k > 0 && !(dx_grid[k] > dx_grid[k - 1])))
			throw domain_error("d_x grid must be positive and strictly increasing");

	const SupraParts parts(net);
	const CouplingApproximation approx(net, p_per_layer, weak_variant, mixing);
	EigenratioCurve curve;
	curve.dx = dx_grid;
	curve.r_simulated.assign(dx_grid.size(), 0.0);
	parallel_for(dx_grid.size(), jobs, [&](std::size_t k) {
		curve.r_simulated[k] = eigenratio_of(eigenvalues_sym(assemble_supra(parts, p_per_layer, dx_grid[k]).combined), dx_grid[k]);
	});
	for (double d : dx_grid) {
		curve.r_weak.push_back(approx.weak(d));
		curve.r_strong.push_back(approx.strong(d));
	}
	if (dx_grid.size() > 1) {
		try {
			curve.optimal = optimal_dx(net, p_per_layer, dx_grid.front(), dx_grid.back(), weak_variant, mixing);
		} catch (const bracket_error&) {
			curve.optimal.reset();
		}
	}
	return curve;
}

/// Nonincreasing up to the minimum, nondecreasing after it.
inline bool is_unimodal(const std::vector<double>& values, double rel_tol = 1e-12)
{
	if (values.size() < 3)
		return true;
	const auto argmin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
	auto slack = [&](double a, double b) { return rel_tol * std::max(std::abs(a), std::abs(b)); };
	for (std::size_t k = 1; k <= argmin; ++k)
		if (values[k] > values[k - 1] + slack(values[k], values[k - 1]))
			return false;
	for (std::size_t k = argmin + 1; k < values.size(); ++k)
		if (values[k] < values[k - 1] - slack(values[k], values[k - 1]))
			return false;
	return true;
}

} // namespace mplex
