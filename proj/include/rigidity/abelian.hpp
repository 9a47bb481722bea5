#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "checked.hpp"
#include "errors.hpp"

namespace rigidity {

inline constexpr integer default_element_cap = 1'000'000;

/// A finite abelian group Z/n_1 x ... x Z/n_k, given by its factor list.
///
/// Specs are compared by factor list, not up to isomorphism: Z/2 x Z/3 and
/// Z/6 are different specs. Copies share the same immutable storage.
class GroupSpec {
public:
    explicit GroupSpec(std::vector<integer> moduli)
    {
        if (moduli.empty())
            throw usage_error("group needs at least one cyclic factor");
        integer order = 1;
        for (integer n : moduli) {
            if (n < 2)
                throw usage_error("modulus must be ≥ 2 (got " + std::to_string(n) + ")");
            try {
                order = checked::mul(order, n);
            } catch (const overflow_error&) {
                throw capacity_error("group order exceeds 64-bit integer capacity");
            }
        }
        impl_ = std::make_shared<const Impl>(Impl{std::move(moduli), order});
    }

    GroupSpec(std::initializer_list<integer> moduli) : GroupSpec(std::vector<integer>(moduli)) {}

    static GroupSpec cyclic(integer n) { return GroupSpec(std::vector<integer>{n}); }

    /// Parses "4" or "2,2,3".
    static GroupSpec parse(std::string_view text)
    {
        std::vector<integer> moduli;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = text.find(',', pos);
            std::string_view field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
            while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
            while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
            integer value = 0;
            auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec != std::errc{} || end != field.data() + field.size())
                throw usage_error("cannot parse modulus '" + std::string(field) + "' in group spec '" +
                                  std::string(text) + "'");
            moduli.push_back(value);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return GroupSpec(std::move(moduli));
    }

    std::span<const integer> moduli() const noexcept { return impl_->moduli; }
    integer modulus(std::size_t i) const { return impl_->moduli.at(i); }
    std::size_t rank() const noexcept { return impl_->moduli.size(); }
    integer order() const noexcept { return impl_->order; }
    bool is_cyclic() const noexcept { return rank() == 1; }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (i) s += ',';
            s += std::to_string(impl_->moduli[i]);
        }
        return s;
    }

    friend bool operator==(const GroupSpec& x, const GroupSpec& y) noexcept
    {
        return x.impl_ == y.impl_ || x.impl_->moduli == y.impl_->moduli;
    }

private:
    struct Impl {
        std::vector<integer> moduli;
        integer order;
    };
    std::shared_ptr<const Impl> impl_;
};

/// An element of a GroupSpec as a vector of reduced residues.
class GroupElement {
public:
    GroupElement(GroupSpec group, std::vector<integer> coords) : group_(std::move(group)), coords_(std::move(coords))
    {
        if (coords_.size() != group_.rank())
            throw usage_error("element has " + std::to_string(coords_.size()) + " coordinates, group has rank " +
                              std::to_string(group_.rank()));
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = mod(coords_[i], group_.modulus(i));
    }

    static GroupElement zero(const GroupSpec& g) { return {g, std::vector<integer>(g.rank(), 0)}; }

    /// The i-th standard generator e_i.
    static GroupElement generator(const GroupSpec& g, std::size_t i)
    {
        std::vector<integer> c(g.rank(), 0);
        c.at(i) = 1;
        return {g, std::move(c)};
    }

    const GroupSpec& group() const noexcept { return group_; }
    std::span<const integer> coords() const noexcept { return coords_; }
    integer operator[](std::size_t i) const { return coords_.at(i); }
    bool is_zero() const noexcept
    {
        return std::all_of(coords_.begin(), coords_.end(), [](integer c) { return c == 0; });
    }

    /// Mixed-radix index in lexicographic order (first coordinate most significant).
    integer index() const noexcept
    {
        integer idx = 0;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            idx = idx * group_.modulus(i) + coords_[i];
        return idx;
    }

    friend bool operator==(const GroupElement& x, const GroupElement& y) noexcept
    {
        return x.coords_ == y.coords_ && x.group_ == y.group_;
    }
    friend auto operator<=>(const GroupElement& x, const GroupElement& y) noexcept { return x.coords_ <=> y.coords_; }

    friend std::ostream& operator<<(std::ostream& os, const GroupElement& g)
    {
        os << '(';
        for (std::size_t i = 0; i < g.coords_.size(); ++i)
            os << (i ? "," : "") << g.coords_[i];
        return os << ')';
    }

private:
    GroupSpec group_;
    std::vector<integer> coords_;
};

inline void require_same_group(const GroupSpec& x, const GroupSpec& y)
{
    if (!(x == y))
        throw usage_error("group mismatch: (" + x.to_string() + ") vs (" + y.to_string() + ")");
}

inline GroupElement add(const GroupElement& g, const GroupElement& h)
{
    require_same_group(g.group(), h.group());
    std::vector<integer> c(g.coords().begin(), g.coords().end());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] += h[i];
        if (c[i] >= g.group().modulus(i)) c[i] -= g.group().modulus(i);
    }
    return {g.group(), std::move(c)};
}

inline GroupElement negate(const GroupElement& g)
{
    std::vector<integer> c(g.coords().begin(), g.coords().end());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = c[i] == 0 ? 0 : g.group().modulus(i) - c[i];
    return {g.group(), std::move(c)};
}

/// c-fold sum of g; negative c sums the inverse.
inline GroupElement scalar_mul(integer c, const GroupElement& g)
{
    std::vector<integer> out(g.coords().begin(), g.coords().end());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mul_mod(c, out[i], g.group().modulus(i));
    return {g.group(), std::move(out)};
}

/// Least d ≥ 1 with d·g = 0, as the lcm of the coordinate orders n_i / gcd(c_i, n_i).
inline integer element_order(const GroupElement& g)
{
    integer order = 1;
    for (std::size_t i = 0; i < g.group().rank(); ++i) {
        integer n = g.group().modulus(i);
        order = std::lcm(order, n / std::gcd(g[i], n));
    }
    return order;
}

/// The element with the given lexicographic index.
inline GroupElement element_at(const GroupSpec& G, integer index)
{
    std::vector<integer> c(G.rank(), 0);
    for (std::size_t i = G.rank(); i-- > 0;) {
        c[i] = index % G.modulus(i);
        index /= G.modulus(i);
    }
    return {G, std::move(c)};
}

/// Every element exactly once, in lexicographic coordinate order.
inline std::vector<GroupElement> all_elements(const GroupSpec& G, integer cap = default_element_cap)
{
    if (G.order() > cap)
        throw capacity_error("group order " + std::to_string(G.order()) + " exceeds element cap " +
                             std::to_string(cap));
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(G.order()));
    for (integer idx = 0; idx < G.order(); ++idx)
        out.push_back(element_at(G, idx));
    return out;
}

/// Symmetric slice {-B, ..., B} of Z used to check statements about (Z, +).
class IntegerWindow {
public:
    explicit IntegerWindow(integer bound) : bound_(bound)
    {
        if (bound < 1) throw usage_error("window bound must be ≥ 1 (got " + std::to_string(bound) + ")");
        if (bound > (integer{1} << 31)) throw capacity_error("window bound too large for exact checking");
    }

    integer bound() const noexcept { return bound_; }
    integer lo() const noexcept { return -bound_; }
    integer hi() const noexcept { return bound_; }
    integer size() const noexcept { return 2 * bound_ + 1; }
    bool contains(integer x) const noexcept { return x >= -bound_ && x <= bound_; }

    template <typename F>
    void for_each(F&& f) const
    {
        for (integer x = -bound_; x <= bound_; ++x) f(x);
    }

private:
    integer bound_;
};

} // namespace rigidity
