#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mplex {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index is
/// handled exactly once; callers write into index-addressed slots so the
/// result order never depends on scheduling. The exception of the lowest
/// failing index is rethrown.
template<typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn)
{
	std::vector<std::exception_ptr> errors(count);
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i = next++; i < count; i = next++) {
			try {
				fn(i);
			} catch (...) {
				errors[i] = std::current_exception();
			}
		}
	};
	const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
	if (threads == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		pool.reserve(threads);
		for (std::size_t t = 0; t < threads; ++t)
			pool.emplace_back(worker);
	}
	for (auto& e : errors)
		if (e)
			std::rethrow_exception(e);
}

} // namespace mplex
