#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "checked.hpp"
#include "errors.hpp"
#include "mult_structure.hpp"

namespace rigidity {

struct SearchConfig {
    integer group_order_cap = 10'000;
    integer full_table_cap = 3;
    /// Candidate tables examined before the associativity filter.
    integer budget = 100'000'000;
    unsigned workers = 1;
    /// Merge worker results in lexicographic order. Turning this off only
    /// changes the order of the returned structures, never the set.
    bool deterministic = true;

    void validate() const
    {
        if (group_order_cap < 1 || full_table_cap < 1 || budget < 1)
            throw usage_error("search caps and budget must be positive");
        if (workers < 1) throw usage_error("worker count must be ≥ 1");
    }
};

/// Legal values of e_i ∘ e_j: elements whose order divides gcd(n_i, n_j),
/// in lexicographic order.
inline std::vector<GroupElement> constant_candidates(const GroupSpec& G, std::size_t i, std::size_t j,
                                                     integer cap = default_element_cap)
{
    const integer bound = std::gcd(G.modulus(i), G.modulus(j));
    std::vector<GroupElement> out;
    for (auto& g : all_elements(G, cap))
        if (bound % element_order(g) == 0) out.push_back(std::move(g));
    return out;
}

/// Number of well-defined bilinear tables; nullopt if it overflows 64 bits.
inline std::optional<integer> search_space_size(const GroupSpec& G, integer cap = default_element_cap)
{
    integer total = 1;
    for (std::size_t i = 0; i < G.rank(); ++i)
        for (std::size_t j = 0; j < G.rank(); ++j) {
            integer c = static_cast<integer>(constant_candidates(G, i, j, cap).size());
            if (__builtin_mul_overflow(total, c, &total)) return std::nullopt;
        }
    return total;
}

namespace detail {

inline void check_search_limits(const GroupSpec& G, const SearchConfig& cfg)
{
    cfg.validate();
    if (G.order() > cfg.group_order_cap)
        throw capacity_error("group order " + std::to_string(G.order()) + " exceeds the search cap " +
                             std::to_string(cfg.group_order_cap));
    auto size = search_space_size(G, cfg.group_order_cap);
    if (!size || *size > cfg.budget)
        throw capacity_error("search space of " + (size ? std::to_string(*size) : std::string("more than 2^63")) +
                             " candidate tables exceeds the budget of " + std::to_string(cfg.budget));
}

/// Walks every table whose first constant is candidates[0][first], with the
/// remaining positions in odometer order (last position fastest).
inline void walk_partition(const GroupSpec& G, const std::vector<std::vector<GroupElement>>& candidates,
                           std::size_t first, std::vector<RingStructure>& out)
{
    const std::size_t k = G.rank();
    const std::size_t slots = k * k;
    std::vector<std::size_t> digit(slots, 0);
    digit[0] = first;
    while (true) {
        std::vector<std::vector<GroupElement>> table(k);
        for (std::size_t p = 0; p < slots; ++p) table[p / k].push_back(candidates[p][digit[p]]);
        StructureConstants C(G, std::move(table));
        if (check_associativity(C)) out.emplace_back(std::move(C), G.order());

        std::size_t p = slots;
        while (p-- > 1) {
            if (++digit[p] < candidates[p].size()) break;
            digit[p] = 0;
        }
        if (p == 0) return;
    }
}

} // namespace detail

/// Every associative well-defined bilinear multiplication on G, each exactly
/// once, in lexicographic order of the row-major constant table.
///
/// Work is split by the value of the first constant e_0 ∘ e_0; with
/// `deterministic` set the per-partition results are concatenated in order,
/// so the output does not depend on the worker count.
inline std::vector<RingStructure> enumerate_multiplications(const GroupSpec& G, const SearchConfig& cfg = {})
{
    detail::check_search_limits(G, cfg);
    const std::size_t k = G.rank();
    std::vector<std::vector<GroupElement>> candidates;
    for (std::size_t p = 0; p < k * k; ++p) candidates.push_back(constant_candidates(G, p / k, p % k));

    const std::size_t partitions = candidates[0].size();
    std::vector<std::vector<RingStructure>> buckets(partitions);
    std::vector<std::size_t> finish_order;
    std::mutex finish_mutex;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;

    auto worker = [&] {
        try {
            for (std::size_t part; (part = next.fetch_add(1)) < partitions;) {
                detail::walk_partition(G, candidates, part, buckets[part]);
                std::lock_guard lock(finish_mutex);
                finish_order.push_back(part);
            }
        } catch (...) {
            std::lock_guard lock(finish_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    const unsigned threads = std::min<std::size_t>(cfg.workers, partitions);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    if (cfg.deterministic) {
        finish_order.resize(partitions);
        for (std::size_t p = 0; p < partitions; ++p) finish_order[p] = p;
    }
    std::vector<RingStructure> out;
    for (std::size_t part : finish_order)
        for (auto& r : buckets[part]) out.push_back(std::move(r));
    return out;
}

/// The full |G| x |G| multiplication table as element indices, row-major.
inline std::vector<integer> multiplication_table(const StructureConstants& C)
{
    const auto elements = all_elements(C.group());
    std::vector<integer> table;
    table.reserve(elements.size() * elements.size());
    for (const auto& g : elements)
        for (const auto& h : elements) table.push_back(eval(C, g, h).index());
    return table;
}

/// Whether every product on Z/N equals a.n.m for a = 1 ∘ 1.
inline bool is_scaled_form(const StructureConstants& C)
{
    if (!C.group().is_cyclic()) throw usage_error("scaled form is only defined on cyclic groups");
    const integer N = C.group().order();
    const integer a = C.at(0, 0)[0];
    for (integer n = 0; n < N; ++n)
        for (integer m = 0; m < N; ++m)
            if (eval(C, GroupElement(C.group(), {n}), GroupElement(C.group(), {m}))[0] != mul_mod(a, n * m, N))
                return false;
    return true;
}

struct RigidityReport {
    explicit RigidityReport(GroupSpec g) : group(std::move(g)) {}

    GroupSpec group;
    integer search_space = 0;
    integer total = 0;
    integer commutative_count = 0;
    integer unital_count = 0;
    /// Cyclic groups only: the scales 1 ∘ 1 of the unital multiplications.
    std::vector<integer> unital_scales;
    /// Cyclic groups only.
    std::optional<bool> scaled_form_all;
    /// Two unital multiplications with different tables, when they exist.
    std::optional<std::pair<StructureConstants, StructureConstants>> non_rigidity_witness;
    std::chrono::milliseconds elapsed{0};
};

inline RigidityReport rigidity_report(const GroupSpec& G, const SearchConfig& cfg = {})
{
    const auto start = std::chrono::steady_clock::now();
    const auto rings = enumerate_multiplications(G, cfg);
    RigidityReport report(G);
    report.search_space = *search_space_size(G);
    std::vector<const RingStructure*> unital;
    if (G.is_cyclic()) report.scaled_form_all = true;
    for (const auto& r : rings) {
        ++report.total;
        if (r.commutative()) ++report.commutative_count;
        if (r.unit()) {
            ++report.unital_count;
            unital.push_back(&r);
            if (G.is_cyclic()) report.unital_scales.push_back(r.mult().at(0, 0)[0]);
        }
        if (G.is_cyclic() && !is_scaled_form(r.mult())) report.scaled_form_all = false;
    }
    for (std::size_t x = 0; x < unital.size() && !report.non_rigidity_witness; ++x)
        for (std::size_t y = x + 1; y < unital.size(); ++y)
            if (multiplication_table(unital[x]->mult()) != multiplication_table(unital[y]->mult())) {
                report.non_rigidity_witness.emplace(unital[x]->mult(), unital[y]->mult());
                break;
            }
    report.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return report;
}

using FullTable = std::vector<integer>;

/// Every binary operation on {0..N-1} that distributes over addition mod N
/// on both sides and is associative, each checked over all triples. This is
/// deliberately independent of the structure-constant machinery.
inline std::set<FullTable> full_table_oracle(integer N, integer cap = 3)
{
    if (N < 2) throw usage_error("modulus must be ≥ 2 (got " + std::to_string(N) + ")");
    if (N > cap)
        throw capacity_error("full-table oracle on " + std::to_string(N) + " elements would scan " +
                             std::to_string(N) + "^" + std::to_string(N * N) + " tables; cap is " +
                             std::to_string(cap));
    const std::size_t n = static_cast<std::size_t>(N);
    FullTable t(n * n, 0);
    auto at = [&](integer x, integer y) { return t[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)]; };
    std::set<FullTable> survivors;
    while (true) {
        bool ok = true;
        for (integer x = 0; x < N && ok; ++x)
            for (integer y = 0; y < N && ok; ++y)
                for (integer z = 0; z < N && ok; ++z) {
                    ok = at(x, (y + z) % N) == (at(x, y) + at(x, z)) % N &&
                         at((x + y) % N, z) == (at(x, z) + at(y, z)) % N && at(at(x, y), z) == at(x, at(y, z));
                }
        if (ok) survivors.insert(t);

        std::size_t p = t.size();
        while (p-- > 0) {
            if (++t[p] < N) break;
            t[p] = 0;
        }
        if (p == static_cast<std::size_t>(-1)) break;
    }
    return survivors;
}

struct CyclicClassification {
    integer a;
    std::optional<integer> unit;
    bool is_minus_one;
};

/// Classifies every multiplication on Z/N by its scale a = 1 ∘ 1 and checks
/// exhaustively that it is n ∘ m = a.n.m. A mismatch is an invariant violation.
inline std::vector<CyclicClassification> classify_cyclic(integer N, const SearchConfig& cfg = {})
{
    const GroupSpec G = GroupSpec::cyclic(N);
    std::vector<CyclicClassification> out;
    for (const auto& r : enumerate_multiplications(G, cfg)) {
        const integer a = eval(r.mult(), GroupElement(G, {1}), GroupElement(G, {1}))[0];
        if (!is_scaled_form(r.mult()))
            throw invariant_violation("multiplication on Z/" + std::to_string(N) + " with 1∘1 = " + std::to_string(a) +
                                      " is not of the scaled form");
        std::optional<integer> unit;
        if (r.unit()) unit = (*r.unit())[0];
        out.push_back({a, unit, a == N - 1});
    }
    return out;
}

} // namespace rigidity
