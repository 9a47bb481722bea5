#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "checked.hpp"
#include "errors.hpp"
#include "mult_structure.hpp"

namespace rigidity {

// ---------------------------------------------------------------------------
// The scaled family n * m = a.n.m on windows of Z

/// (n, m) -> a*n*m with overflow checking.
inline IntMul make_scaled(integer a)
{
    return [a](integer n, integer m) { return checked::mul(a, n, m); };
}

/// The scaled multiplication with a = -1, i.e. n * m = -(n.m).
inline IntMul alternate() { return make_scaled(-1); }

/// Closed form: the scaled ring on Z is unital iff a = ±1, and then the unit is a.
inline std::optional<integer> unit_of_scaled(integer a)
{
    if (a == 1 || a == -1) return a;
    return std::nullopt;
}

inline integer extract_scale(const IntMul& mul) { return mul(1, 1); }

/// Brute-force two-sided identity search for `mul` restricted to a window.
/// A candidate u must satisfy u*n = n*u = n for every n in the window.
inline std::optional<integer> find_unit_in_window(const IntMul& mul, const IntegerWindow& window)
{
    for (integer u = window.lo(); u <= window.hi(); ++u) {
        bool ok = true;
        for (integer n = window.lo(); n <= window.hi() && ok; ++n)
            ok = mul(u, n) == n && mul(n, u) == n;
        if (ok) return u;
    }
    return std::nullopt;
}

struct ScaledIdentityReport {
    integer a = 0;
    std::size_t samples = 0;
    bool associative = true;
    bool distributive = true;
    bool commutative = true;
    std::optional<Triple> counterexample;

    bool holds() const noexcept { return associative && distributive && commutative; }
};

/// Random-sample check of the commutative ring identities of the scaled
/// multiplication: both associations of n*m*k, both distributive
/// expansions and commutativity, each compared against the closed forms
/// a.a.n.m.k and a.n.m + a.n.k. All arithmetic is exact or throws.
inline ScaledIdentityReport check_scaled_identities(integer a, const IntegerWindow& window, std::size_t samples,
                                                    std::uint64_t seed = 0x21)
{
    const IntMul star = make_scaled(a);
    ScaledIdentityReport report;
    report.a = a;
    report.samples = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<integer> pick(window.lo(), window.hi());

    for (std::size_t s = 0; s < samples; ++s) {
        const Triple t{pick(rng), pick(rng), pick(rng)};
        try {
            const integer triple = checked::mul(a, a, t.n, t.m, t.k);
            const bool assoc = star(t.n, star(t.m, t.k)) == triple && star(star(t.n, t.m), t.k) == triple;
            const integer expanded = checked::add(checked::mul(a, t.n, t.m), checked::mul(a, t.n, t.k));
            const bool dist = star(t.n, checked::add(t.m, t.k)) == checked::add(star(t.n, t.m), star(t.n, t.k)) &&
                              star(t.n, checked::add(t.m, t.k)) == expanded &&
                              star(checked::add(t.m, t.k), t.n) == checked::add(star(t.m, t.n), star(t.k, t.n));
            const bool comm = star(t.n, t.m) == star(t.m, t.n);
            report.associative &= assoc;
            report.distributive &= dist;
            report.commutative &= comm;
            if (!(assoc && dist && comm) && !report.counterexample) report.counterexample = t;
        } catch (const overflow_error& e) {
            throw overflow_error(std::string(e.what()) + " at a=" + std::to_string(a) + ", triple " + to_string(t));
        }
    }
    return report;
}

struct ScaledFormReport {
    enum class Status { scaled, not_scaled, non_distributive };

    Status status = Status::scaled;
    integer a = 0;
    /// First (n, m) with mul(n, m) != a.n.m.
    std::optional<std::pair<integer, integer>> counterexample;
    /// Set when the multiplication was rejected before classification.
    std::optional<Triple> distributivity_counterexample;

    bool holds() const noexcept { return status == Status::scaled; }
};

/// Distributivity is checked first; a non-distributive multiplication is
/// rejected rather than classified. Otherwise a = mul(1,1) and every pair in
/// the window, including zero and negative arguments, is compared with a.n.m.
inline ScaledFormReport verify_scaled_form(const IntMul& mul, const IntegerWindow& window,
                                           std::size_t distributivity_samples = 1000)
{
    ScaledFormReport report;
    auto dist = check_distributivity_blackbox(mul, window, distributivity_samples);
    if (!dist.holds) {
        report.status = ScaledFormReport::Status::non_distributive;
        report.distributivity_counterexample = dist.counterexample;
        return report;
    }
    report.a = extract_scale(mul);
    for (integer n = window.lo(); n <= window.hi(); ++n) {
        for (integer m = window.lo(); m <= window.hi(); ++m) {
            if (mul(n, m) != checked::mul(report.a, n, m)) {
                report.status = ScaledFormReport::Status::not_scaled;
                report.counterexample = {n, m};
                return report;
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// The scaled construction over a finite base ring

/// A finite ring whose multiplication is verified associative.
class BaseRing {
public:
    explicit BaseRing(RingStructure ring) : ring_(std::move(ring))
    {
        if (!ring_.associative()) throw precondition_error("base ring multiplication is not associative");
    }

    static BaseRing integers_mod(integer n) { return BaseRing(RingStructure::integers_mod(n)); }

    const RingStructure& ring() const noexcept { return ring_; }
    const GroupSpec& group() const noexcept { return ring_.group(); }
    GroupElement operator()(const GroupElement& x, const GroupElement& y) const { return ring_(x, y); }

    GroupElement element(std::vector<integer> coords) const { return {group(), std::move(coords)}; }

    const GroupElement& one() const
    {
        if (!ring_.unit()) throw precondition_error("base ring is not unital");
        return *ring_.unit();
    }

    /// The additive inverse of the unit.
    GroupElement minus_one() const { return negate(one()); }

private:
    RingStructure ring_;
};

/// Returns an element that does not commute with `a`, if any. Checking the
/// generators suffices by bilinearity.
inline std::optional<GroupElement> centrality_witness(const BaseRing& R, const GroupElement& a)
{
    for (std::size_t i = 0; i < R.group().rank(); ++i) {
        GroupElement e = GroupElement::generator(R.group(), i);
        if (R(a, e) != R(e, a)) return e;
    }
    return std::nullopt;
}

/// The multiplication (x, y) -> a.x.y on R's additive group.
/// `a` must be central in R, otherwise the result need not be associative.
inline StructureConstants scale_ring(const BaseRing& R, const GroupElement& a)
{
    require_same_group(R.group(), a.group());
    if (auto w = centrality_witness(R, a)) {
        std::ostringstream msg;
        msg << "scale element " << a << " is not central: it does not commute with " << *w;
        throw precondition_error(msg.str());
    }
    const std::size_t k = R.group().rank();
    std::vector<std::vector<GroupElement>> table(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            table[i].push_back(R(R(a, GroupElement::generator(R.group(), i)), GroupElement::generator(R.group(), j)));
    return {R.group(), std::move(table)};
}

/// First pair (a, u) with a.u = 1 other than (1, 1) and (-1, -1), scanning
/// a then u in lexicographic order.
inline std::optional<std::pair<GroupElement, GroupElement>> pm1_unit_witness(const BaseRing& R)
{
    const GroupElement one = R.one();
    const GroupElement minus = R.minus_one();
    const auto elements = all_elements(R.group());
    for (const auto& a : elements)
        for (const auto& u : elements)
            if (R(a, u) == one && !((a == one && u == one) || (a == minus && u == minus))) return std::pair{a, u};
    return std::nullopt;
}

/// True iff a.u = 1 forces a = u = 1 or a = u = -1.
inline bool has_pm1_unit_property(const BaseRing& R) { return !pm1_unit_witness(R).has_value(); }

struct ScaledUnitalityRow {
    GroupElement a;
    bool is_pm1;
    std::optional<GroupElement> unit;

    bool unital() const noexcept { return unit.has_value(); }
    bool consistent() const noexcept { return unital() == is_pm1; }
};

/// For every a in R, builds the scaled ring and searches it for a unit.
/// No hypothesis on R beyond a unit and centrality of every a (commutativity).
inline std::vector<ScaledUnitalityRow> scaled_unitality_sweep(const BaseRing& R)
{
    const GroupElement one = R.one();
    const GroupElement minus = R.minus_one();
    std::vector<ScaledUnitalityRow> rows;
    for (const auto& a : all_elements(R.group()))
        rows.push_back({a, a == one || a == minus, find_unit(scale_ring(R, a))});
    return rows;
}

struct UnitalIffPm1Report {
    std::vector<ScaledUnitalityRow> rows;

    bool holds() const noexcept
    {
        for (const auto& r : rows)
            if (!r.consistent()) return false;
        return true;
    }
};

/// Over a finite unital commutative ring in which a.u = 1 only for
/// a = u = ±1, the scaled ring is unital exactly when a = ±1.
inline UnitalIffPm1Report check_unital_iff_pm1(const BaseRing& R)
{
    R.one();
    if (!R.ring().commutative()) throw precondition_error("base ring is not commutative");
    if (auto w = pm1_unit_witness(R)) {
        std::ostringstream msg;
        msg << "base ring has a unit outside ±1: " << w->first << "·" << w->second << " = 1";
        throw precondition_error(msg.str());
    }
    return {scaled_unitality_sweep(R)};
}

} // namespace rigidity
