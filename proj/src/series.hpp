#pragma once

// Shared machinery behind every dyadic series in the library: node ranges,
// fixed-partition chunked summation and the level loop.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "dyadicint/engine.hpp"
#include "dyadicint/error.hpp"
#include "dyadicint/integrand.hpp"
#include "dyadicint/summation.hpp"

namespace dyadicint::detail {

// Chunk boundaries depend only on the index range, never on the thread
// count, so the reduction order (and the result) is fixed.
inline constexpr std::int64_t kChunkTerms = 4096;

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

inline std::int64_t floor_scaled(double x, int k, const char* what) {
    const double s = std::floor(std::ldexp(x, k));
    if (!(std::abs(s) < 0x1p62)) {
        throw RangeError(what, "2^" + std::to_string(k) + " * " + what +
                                   " exceeds the exact node index range");
    }
    return static_cast<std::int64_t>(s);
}

inline double node_abscissa(double offset, std::int64_t n, int k) {
    return offset + std::ldexp(static_cast<double>(n), -k);
}

/// Sum of term(n) for n = first, first + stride, ..., <= last, combined
/// chunk by chunk in ascending order. Returns the compensated accumulator.
template <class Term>
NeumaierSum chunked_sum(std::int64_t first, std::int64_t last, std::int64_t stride,
                        const Term& term, unsigned threads) {
    NeumaierSum total;
    if (last < first) return total;
    const std::int64_t count = (last - first) / stride + 1;
    const std::int64_t chunks = (count + kChunkTerms - 1) / kChunkTerms;

    auto run_chunk = [&](std::int64_t c) {
        NeumaierSum acc;
        const std::int64_t begin = c * kChunkTerms;
        const std::int64_t end = std::min(count, begin + kChunkTerms);
        for (std::int64_t i = begin; i < end; ++i) acc.add(term(first + i * stride));
        return acc;
    };

    const unsigned workers =
        static_cast<unsigned>(std::min<std::int64_t>(resolve_threads(threads), chunks));
    if (workers <= 1) {
        for (std::int64_t c = 0; c < chunks; ++c) {
            const NeumaierSum part = run_chunk(c);
            total.add(part.head());
            total.add(part.carry());
        }
        return total;
    }

    std::vector<NeumaierSum> parts(static_cast<std::size_t>(chunks));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(chunks));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t c = w; c < chunks; c += workers) {
                try {
                    parts[static_cast<std::size_t>(c)] = run_chunk(c);
                } catch (...) {
                    failures[static_cast<std::size_t>(c)] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }
    for (const auto& part : parts) {
        total.add(part.head());
        total.add(part.carry());
    }
    return total;
}

/// f(x) with failures tagged by the node that triggered them.
inline double evaluate_at(const Integrand& f, int k, std::int64_t n, double x) {
    double v = 0.0;
    try {
        v = f(x);
    } catch (const EvaluationError& e) {
        if (e.node()) throw;
        throw EvaluationError(e.what(), DyadicNode{k, n, x});
    } catch (const std::exception& e) {
        throw EvaluationError(e.what(), DyadicNode{k, n, x});
    }
    if (!std::isfinite(v)) {
        const std::string name = f.label().empty() ? std::string("integrand") : f.label();
        throw EvaluationError(name + " is not finite at x=" + std::to_string(x),
                              DyadicNode{k, n, x});
    }
    return v;
}

/// Nodes offset + n / 2^k with n in (floor(2^k lower), floor(2^k upper)].
struct Window {
    double offset = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct IndexRange {
    std::int64_t first = 1;
    std::int64_t last = 0;
    std::int64_t size() const { return last >= first ? last - first + 1 : 0; }
};

inline IndexRange level_range(const Window& w, int k) {
    return {floor_scaled(w.lower, k, "a") + 1, floor_scaled(w.upper, k, "b")};
}

inline std::int64_t odd_count(const IndexRange& r) {
    if (r.size() == 0) return 0;
    const std::int64_t first_odd = (r.first % 2 != 0) ? r.first : r.first + 1;
    return first_odd > r.last ? 0 : (r.last - first_odd) / 2 + 1;
}

inline void check_levels(int levels, const char* name = "P") {
    if (levels < 0) throw DomainError(name, "level count must be >= 0");
    if (levels > kMaxLevels) {
        throw RangeError(name, "level count " + std::to_string(levels) + " exceeds cap " +
                                   std::to_string(kMaxLevels));
    }
}

/// Integrand calls the level loop would make without early stopping.
inline std::uint64_t series_cost(const Window& w, int k0, int levels, bool incremental) {
    std::uint64_t total = 0;
    if (incremental) {
        total += static_cast<std::uint64_t>(level_range(w, k0 - 1).size());
    }
    for (int k = k0; k <= k0 + levels; ++k) {
        const IndexRange r = level_range(w, k);
        total += static_cast<std::uint64_t>(incremental ? odd_count(r) : r.size());
    }
    return total;
}

struct EarlyStop {
    bool enabled = false;
    int quiet = 0;

    bool should_stop(double contribution, double running) {
        if (!enabled) return false;
        quiet = std::abs(contribution) < 0x1p-52 * std::abs(running) ? quiet + 1 : 0;
        return quiet >= 3;
    }
};

/// The level loop. node_value(k, n, x) supplies the (already checked)
/// summand at node x = offset + n / 2^k. Each node costs `per_node` calls.
template <class NodeValue>
QuadratureResult run_series(const NodeValue& node_value, const Window& w, int k0, int levels,
                            bool incremental, const EngineOptions& opts,
                            std::uint64_t per_node = 1) {
    QuadratureResult out;
    out.levels.reserve(static_cast<std::size_t>(levels) + 1);
    NeumaierSum total;
    EarlyStop stop{opts.early_stop};

    auto plain = [&](int k) {
        return [&, k](std::int64_t n) { return node_value(k, n, node_abscissa(w.offset, n, k)); };
    };

    // Plain sum over the previous level's nodes (A_(k-1)), kept in two parts.
    NeumaierSum previous;
    if (incremental) {
        const IndexRange r = level_range(w, k0 - 1);
        previous = chunked_sum(r.first, r.last, 1, plain(k0 - 1), opts.threads);
        out.evaluations += static_cast<std::uint64_t>(r.size()) * per_node;
    }

    for (int k = k0; k <= k0 + levels; ++k) {
        const IndexRange r = level_range(w, k);
        double level = 0.0;
        if (!incremental) {
            auto alternating = [&, k](std::int64_t n) {
                const double v = node_value(k, n, node_abscissa(w.offset, n, k));
                return (n & 1) != 0 ? v : -v;
            };
            level = chunked_sum(r.first, r.last, 1, alternating, opts.threads).value();
            out.evaluations += static_cast<std::uint64_t>(r.size()) * per_node;
        } else {
            const std::int64_t first_odd = (r.first % 2 != 0) ? r.first : r.first + 1;
            const NeumaierSum odd = chunked_sum(first_odd, r.last, 2, plain(k), opts.threads);
            out.evaluations += static_cast<std::uint64_t>(odd_count(r)) * per_node;
            level = (odd.head() - previous.head()) + (odd.carry() - previous.carry());
            NeumaierSum next;
            next.add(odd.head());
            next.add(previous.head());
            next.add(odd.carry());
            next.add(previous.carry());
            previous = next;
        }
        const double contribution = std::ldexp(level, -k);
        out.levels.push_back({k, contribution});
        total.add(contribution);
        if (stop.should_stop(contribution, total.value())) {
            out.converged_early = k < k0 + levels;
            break;
        }
    }
    out.value = total.value();
    return out;
}

}  // namespace dyadicint::detail
