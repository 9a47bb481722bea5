#pragma once

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "checked.hpp"
#include "errors.hpp"

namespace rigidity {

/// A bilinear multiplication on a finite abelian group, given by the products
/// of standard generators: table[i][j] = e_i ∘ e_j.
///
/// Distributivity holds by construction. The constructor rejects tables whose
/// bilinear extension is not well defined, i.e. where the order of e_i ∘ e_j
/// does not divide gcd(n_i, n_j).
class StructureConstants {
public:
    StructureConstants(GroupSpec group, std::vector<std::vector<GroupElement>> table)
        : group_(std::move(group)), table_(std::move(table))
    {
        const std::size_t k = group_.rank();
        if (table_.size() != k)
            throw usage_error("structure table has " + std::to_string(table_.size()) + " rows, expected " +
                              std::to_string(k));
        for (std::size_t i = 0; i < k; ++i) {
            if (table_[i].size() != k)
                throw usage_error("structure table row " + std::to_string(i) + " has wrong length");
            for (std::size_t j = 0; j < k; ++j) {
                require_same_group(group_, table_[i][j].group());
                integer bound = std::gcd(group_.modulus(i), group_.modulus(j));
                if (bound % element_order(table_[i][j]) != 0) {
                    std::ostringstream msg;
                    msg << "product e" << i << "*e" << j << " = " << table_[i][j] << " has order "
                        << element_order(table_[i][j]) << ", which does not divide gcd(" << group_.modulus(i)
                        << "," << group_.modulus(j) << ")";
                    throw usage_error(msg.str());
                }
            }
        }
    }

    /// Cyclic group Z/N with 1 ∘ 1 = a.
    static StructureConstants cyclic(integer n, integer a)
    {
        GroupSpec g = GroupSpec::cyclic(n);
        return {g, {{GroupElement(g, {a})}}};
    }

    static StructureConstants zero(const GroupSpec& g)
    {
        return {g, std::vector<std::vector<GroupElement>>(g.rank(),
                                                          std::vector<GroupElement>(g.rank(), GroupElement::zero(g)))};
    }

    const GroupSpec& group() const noexcept { return group_; }
    const GroupElement& at(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }
    std::size_t rank() const noexcept { return group_.rank(); }

    friend bool operator==(const StructureConstants& x, const StructureConstants& y)
    {
        return x.group_ == y.group_ && x.table_ == y.table_;
    }

private:
    GroupSpec group_;
    std::vector<std::vector<GroupElement>> table_;
};

/// Bilinear extension: sum over i,j of g_i * h_j * (e_i ∘ e_j).
inline GroupElement eval(const StructureConstants& C, const GroupElement& g, const GroupElement& h)
{
    require_same_group(C.group(), g.group());
    require_same_group(C.group(), h.group());
    GroupElement acc = GroupElement::zero(C.group());
    for (std::size_t i = 0; i < C.rank(); ++i) {
        if (g[i] == 0) continue;
        for (std::size_t j = 0; j < C.rank(); ++j) {
            if (h[j] == 0) continue;
            acc = add(acc, scalar_mul(g[i], scalar_mul(h[j], C.at(i, j))));
        }
    }
    return acc;
}

/// Associativity on generator triples, which suffices by trilinearity.
inline bool check_associativity(const StructureConstants& C)
{
    const std::size_t k = C.rank();
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(GroupElement::generator(C.group(), i));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l)
                if (eval(C, C.at(i, j), gens[l]) != eval(C, gens[i], C.at(j, l))) return false;
    return true;
}

inline bool check_commutativity(const StructureConstants& C)
{
    for (std::size_t i = 0; i < C.rank(); ++i)
        for (std::size_t j = i + 1; j < C.rank(); ++j)
            if (C.at(i, j) != C.at(j, i)) return false;
    return true;
}

/// Scans the carrier for a two-sided identity. Candidates are screened against
/// the generators and the survivor is then verified against every element.
inline std::optional<GroupElement> find_unit(const StructureConstants& C, integer cap = default_element_cap)
{
    const auto elements = all_elements(C.group(), cap);
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < C.rank(); ++i) gens.push_back(GroupElement::generator(C.group(), i));

    std::optional<GroupElement> unit;
    for (const auto& u : elements) {
        bool ok = true;
        for (const auto& e : gens) {
            if (eval(C, u, e) != e || eval(C, e, u) != e) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (unit)
            throw invariant_violation("two distinct identities found in one multiplication");
        for (const auto& g : elements)
            if (eval(C, u, g) != g || eval(C, g, u) != g)
                throw invariant_violation("generator-verified identity fails on a full element scan");
        unit = u;
    }
    return unit;
}

/// A finite ring: an additive group with a verified multiplication.
/// The flags are always recomputed from the structure constants.
class RingStructure {
public:
    explicit RingStructure(StructureConstants mult, integer cap = default_element_cap)
        : mult_(std::move(mult)),
          associative_(check_associativity(mult_)),
          commutative_(check_commutativity(mult_)),
          unit_(find_unit(mult_, cap))
    {
    }

    /// Z/N with its usual multiplication.
    static RingStructure integers_mod(integer n) { return RingStructure(StructureConstants::cyclic(n, 1)); }

    const GroupSpec& group() const noexcept { return mult_.group(); }
    const StructureConstants& mult() const noexcept { return mult_; }
    bool associative() const noexcept { return associative_; }
    bool commutative() const noexcept { return commutative_; }
    const std::optional<GroupElement>& unit() const noexcept { return unit_; }

    GroupElement operator()(const GroupElement& g, const GroupElement& h) const { return eval(mult_, g, h); }

private:
    StructureConstants mult_;
    bool associative_;
    bool commutative_;
    std::optional<GroupElement> unit_;
};

// ---------------------------------------------------------------------------
// Black-box multiplications on windows of Z

using IntMul = std::function<integer(integer, integer)>;

struct Triple {
    integer n, m, k;
    friend bool operator==(const Triple&, const Triple&) = default;
};

inline std::string to_string(const Triple& t)
{
    return "(" + std::to_string(t.n) + "," + std::to_string(t.m) + "," + std::to_string(t.k) + ")";
}

struct DistributivityReport {
    bool holds = true;
    std::optional<Triple> counterexample;
    std::size_t triples_checked = 0;
};

/// Checks n*(m+k) = n*m + n*k and (m+k)*n = m*n + k*n on every triple with
/// entries in [-3, 3] and then on `samples` random triples from the window.
/// Stops at the first counterexample.
inline DistributivityReport check_distributivity_blackbox(const IntMul& mul, const IntegerWindow& window,
                                                          std::size_t samples, std::uint64_t seed = 0x5eed)
{
    DistributivityReport report;
    auto check = [&](const Triple& t) {
        ++report.triples_checked;
        try {
            integer mk = checked::add(t.m, t.k);
            bool left = mul(t.n, mk) == checked::add(mul(t.n, t.m), mul(t.n, t.k));
            bool right = mul(mk, t.n) == checked::add(mul(t.m, t.n), mul(t.k, t.n));
            if (!(left && right)) {
                report.holds = false;
                report.counterexample = t;
            }
        } catch (const overflow_error& e) {
            throw overflow_error(std::string(e.what()) + " at triple " + to_string(t));
        }
        return report.holds;
    };

    const integer small = std::min<integer>(3, window.bound());
    for (integer n = -small; n <= small; ++n)
        for (integer m = -small; m <= small; ++m)
            for (integer k = -small; k <= small; ++k)
                if (!check({n, m, k})) return report;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<integer> pick(window.lo(), window.hi());
    for (std::size_t s = 0; s < samples; ++s) {
        Triple t{pick(rng), pick(rng), pick(rng)};
        if (!check(t)) return report;
    }
    return report;
}

} // namespace rigidity
