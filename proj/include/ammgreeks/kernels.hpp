#pragma once

// Data-parallel reduction kernels. Each kernel comes as a serial reference
// and an OpenMP version that share a fixed partition and a fixed reduction
// tree, so both return bit-identical results for any thread count.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ammgreeks::kernels {

/// Count, mean and sum of squared deviations of a sample (Welford), with
/// the Chan et al. pairwise merge.
struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    static Moments merge(const Moments& a, const Moments& b) {
        if (a.count == 0) return b;
        if (b.count == 0) return a;
        Moments out;
        out.count = a.count + b.count;
        const double na = static_cast<double>(a.count);
        const double nb = static_cast<double>(b.count);
        const double n = static_cast<double>(out.count);
        const double d = b.mean - a.mean;
        out.mean = a.mean + d * (nb / n);
        out.m2 = a.m2 + b.m2 + d * d * (na * nb / n);
        return out;
    }

    /// Unbiased sample variance; zero for fewer than two samples.
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

/// Sample indices per block. The partition never depends on the worker count.
inline constexpr std::size_t kBlockSize = 4096;

inline std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

/// Fixed-shape pairwise tree over blocks: split at the midpoint, recurse.
inline Moments tree_merge(std::span<const Moments> blocks) {
    if (blocks.empty()) return {};
    if (blocks.size() == 1) return blocks[0];
    const std::size_t mid = blocks.size() / 2;
    return Moments::merge(tree_merge(blocks.first(mid)), tree_merge(blocks.subspan(mid)));
}

/// Pairwise summation with a fixed split rule; the order of additions is a
/// function of the length only.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

template <typename SampleFn>
Moments block_moments(SampleFn& sample, std::size_t block, std::size_t n) {
    Moments m;
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = std::min(n, begin + kBlockSize);
    for (std::size_t i = begin; i < end; ++i) m.push(sample(i));
    return m;
}

/// Moments of sample(0), ..., sample(n - 1), one block at a time.
template <typename SampleFn>
Moments sample_moments_serial(SampleFn sample, std::size_t n) {
    std::vector<Moments> blocks(block_count(n));
    for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] = block_moments(sample, b, n);
    return tree_merge(blocks);
}

/// Same partition and merge tree as sample_moments_serial, with blocks
/// distributed over `workers` threads. sample must be safe to call
/// concurrently.
template <typename SampleFn>
Moments sample_moments_omp(SampleFn sample, std::size_t n, int workers) {
    std::vector<Moments> blocks(block_count(n));
    const auto nblocks = static_cast<std::int64_t>(blocks.size());
#pragma omp parallel for schedule(static) num_threads(std::max(workers, 1))
    for (std::int64_t b = 0; b < nblocks; ++b)
        blocks[static_cast<std::size_t>(b)] = block_moments(sample, static_cast<std::size_t>(b), n);
    return tree_merge(blocks);
}

/// sum_i term(i) for i < n, pairwise.
template <typename TermFn>
double term_sum_serial(TermFn term, std::size_t n) {
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) terms[i] = term(i);
    return pairwise_sum(terms);
}

template <typename TermFn>
double term_sum_omp(TermFn term, std::size_t n, int workers) {
    std::vector<double> terms(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) num_threads(std::max(workers, 1))
    for (std::int64_t i = 0; i < count; ++i) terms[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));
    return pairwise_sum(terms);
}

}  // namespace ammgreeks::kernels
