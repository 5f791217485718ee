#pragma once

#include <cstdint>
#include <random>

namespace mplex {

/// Seeded generator with draws defined independently of the standard
/// library's distribution classes, so a seed yields the same stream with
/// every toolchain.
class Rng
{
  public:
	explicit Rng(std::uint64_t seed)
		: engine_(seed)
	{
	}

	std::uint64_t next_u64() { return engine_(); }

	/// Uniform on [0, 1).
	double uniform()
	{
		return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
	}

	/// Uniform integer on [0, bound) by rejection; bound must be > 0.
	std::uint64_t below(std::uint64_t bound)
	{
		const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
		std::uint64_t x = engine_();
		while (x >= limit)
			x = engine_();
		return x % bound;
	}

	/// Uniform integer on [lo, hi].
	std::int64_t between(std::int64_t lo, std::int64_t hi)
	{
		return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
	}

	template<typename Container>
	void shuffle(Container& c)
	{
		for (std::size_t i = c.size(); i > 1; --i) {
			const auto j = static_cast<std::size_t>(below(i));
			std::swap(c[i - 1], c[j]);
		}
	}

  private:
	std::mt19937_64 engine_;
};

} // namespace mplex
