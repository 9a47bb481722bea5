#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "checked.hpp"
#include "errors.hpp"

namespace rigidity {

/// An n x n matrix over Z/m, entries stored row-major and reduced.
class MatrixElement {
public:
    MatrixElement(std::size_t n, integer m, std::vector<integer> entries) : n_(n), m_(m), entries_(std::move(entries))
    {
        if (n < 1) throw usage_error("matrix dimension must be ≥ 1");
        if (m < 2) throw usage_error("matrix modulus must be ≥ 2 (got " + std::to_string(m) + ")");
        if (entries_.size() != n * n)
            throw usage_error("expected " + std::to_string(n * n) + " entries, got " + std::to_string(entries_.size()));
        for (auto& x : entries_) x = mod(x, m);
    }

    MatrixElement(integer m, std::initializer_list<std::initializer_list<integer>> rows)
        : MatrixElement(rows.size(), m, flatten(rows))
    {
    }

    static MatrixElement zero(std::size_t n, integer m) { return {n, m, std::vector<integer>(n * n, 0)}; }
    static MatrixElement filled(std::size_t n, integer m, integer value)
    {
        return {n, m, std::vector<integer>(n * n, value)};
    }

    /// Matrix unit with a single 1 at (row, col).
    static MatrixElement matrix_unit(std::size_t n, integer m, std::size_t row, std::size_t col)
    {
        MatrixElement e = zero(n, m);
        e.entries_.at(row * n + col) = 1;
        return e;
    }

    std::size_t dim() const noexcept { return n_; }
    integer modulus() const noexcept { return m_; }
    integer operator()(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
    const std::vector<integer>& entries() const noexcept { return entries_; }

    std::vector<std::vector<integer>> rows() const
    {
        std::vector<std::vector<integer>> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
        return out;
    }

    friend bool operator==(const MatrixElement&, const MatrixElement&) = default;

private:
    static std::vector<integer> flatten(std::initializer_list<std::initializer_list<integer>> rows)
    {
        std::vector<integer> out;
        for (const auto& r : rows) {
            if (r.size() != rows.size()) throw usage_error("matrix must be square");
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }

    std::size_t n_;
    integer m_;
    std::vector<integer> entries_;
};

enum class MatrixProduct { standard, hadamard };

inline const char* to_string(MatrixProduct p) { return p == MatrixProduct::standard ? "standard" : "hadamard"; }

namespace detail {
inline void require_compatible(const MatrixElement& A, const MatrixElement& B)
{
    if (A.dim() != B.dim() || A.modulus() != B.modulus())
        throw usage_error("matrix shape/modulus mismatch: " + std::to_string(A.dim()) + "x" + std::to_string(A.dim()) +
                          " mod " + std::to_string(A.modulus()) + " vs " + std::to_string(B.dim()) + "x" +
                          std::to_string(B.dim()) + " mod " + std::to_string(B.modulus()));
}
} // namespace detail

inline MatrixElement mat_add(const MatrixElement& A, const MatrixElement& B)
{
    detail::require_compatible(A, B);
    std::vector<integer> c(A.entries());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(c[i] + B.entries()[i], A.modulus());
    return {A.dim(), A.modulus(), std::move(c)};
}

/// Row-by-column product.
inline MatrixElement mat_mul_standard(const MatrixElement& A, const MatrixElement& B)
{
    detail::require_compatible(A, B);
    const std::size_t n = A.dim();
    const integer m = A.modulus();
    std::vector<integer> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            integer s = 0;
            for (std::size_t l = 0; l < n; ++l) s = mod(s + mul_mod(A(i, l), B(l, j), m), m);
            c[i * n + j] = s;
        }
    return {n, m, std::move(c)};
}

/// Term-by-term product c_ij = a_ij * b_ij.
inline MatrixElement mat_mul_hadamard(const MatrixElement& A, const MatrixElement& B)
{
    detail::require_compatible(A, B);
    std::vector<integer> c(A.entries().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mul_mod(A.entries()[i], B.entries()[i], A.modulus());
    return {A.dim(), A.modulus(), std::move(c)};
}

inline MatrixElement multiply(MatrixProduct p, const MatrixElement& A, const MatrixElement& B)
{
    return p == MatrixProduct::standard ? mat_mul_standard(A, B) : mat_mul_hadamard(A, B);
}

/// Identity matrix for the standard product, all-ones matrix for the Hadamard product.
inline MatrixElement unit_matrix(MatrixProduct p, std::size_t n, integer m)
{
    if (p == MatrixProduct::hadamard) return MatrixElement::filled(n, m, 1);
    MatrixElement id = MatrixElement::zero(n, m);
    std::vector<integer> e(id.entries());
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return {n, m, std::move(e)};
}

/// Every n x n matrix over Z/m, in lexicographic order of the row-major entries.
inline std::vector<MatrixElement> all_matrices(std::size_t n, integer m, integer cap = 1'000'000)
{
    integer count = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
        count = checked::mul(count, m);
        if (count > cap) throw capacity_error("more than " + std::to_string(cap) + " matrices to enumerate");
    }
    std::vector<MatrixElement> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<integer> digits(n * n, 0);
    for (integer idx = 0; idx < count; ++idx) {
        integer r = idx;
        for (std::size_t d = digits.size(); d-- > 0;) {
            digits[d] = r % m;
            r /= m;
        }
        out.emplace_back(n, m, digits);
    }
    return out;
}

/// All two-sided identities of the given product, by exhaustive scan.
inline std::vector<MatrixElement> find_units_exhaustive(MatrixProduct p, std::size_t n, integer m)
{
    const auto all = all_matrices(n, m);
    std::vector<MatrixElement> units;
    for (const auto& u : all) {
        bool ok = true;
        for (const auto& x : all) {
            if (multiply(p, u, x) != x || multiply(p, x, u) != x) {
                ok = false;
                break;
            }
        }
        if (ok) units.push_back(u);
    }
    return units;
}

/// A pair (A, B) with AB != BA, when one exists in the canonical form E_01, E_10.
/// Present for every n ≥ 2 under the standard product.
inline std::optional<std::pair<MatrixElement, MatrixElement>> noncommutativity_witness(MatrixProduct p, std::size_t n,
                                                                                       integer m)
{
    if (n < 2) return std::nullopt;
    auto A = MatrixElement::matrix_unit(n, m, 0, 1);
    auto B = MatrixElement::matrix_unit(n, m, 1, 0);
    if (multiply(p, A, B) == multiply(p, B, A)) return std::nullopt;
    return std::pair{A, B};
}

struct MatrixAxiomSummary {
    MatrixProduct product;
    std::size_t samples = 0;
    bool associative = true;
    bool left_distributive = true;
    bool right_distributive = true;
    bool commutative = true;
    bool unit_verified = true;

    bool ring_axioms() const noexcept { return associative && left_distributive && right_distributive && unit_verified; }
};

inline MatrixElement random_matrix(std::mt19937_64& rng, std::size_t n, integer m)
{
    std::uniform_int_distribution<integer> pick(0, m - 1);
    std::vector<integer> e(n * n);
    for (auto& x : e) x = pick(rng);
    return {n, m, std::move(e)};
}

/// Ring axioms of one product on `samples` random triples (A, B, C).
inline MatrixAxiomSummary sample_ring_axioms(MatrixProduct p, std::size_t n, integer m, std::size_t samples,
                                             std::uint64_t seed = 0x3a7)
{
    MatrixAxiomSummary s;
    s.product = p;
    s.samples = samples;
    const MatrixElement one = unit_matrix(p, n, m);
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < samples; ++t) {
        const auto A = random_matrix(rng, n, m);
        const auto B = random_matrix(rng, n, m);
        const auto C = random_matrix(rng, n, m);
        s.associative &= multiply(p, multiply(p, A, B), C) == multiply(p, A, multiply(p, B, C));
        s.left_distributive &= multiply(p, A, mat_add(B, C)) == mat_add(multiply(p, A, B), multiply(p, A, C));
        s.right_distributive &= multiply(p, mat_add(A, B), C) == mat_add(multiply(p, A, C), multiply(p, B, C));
        s.commutative &= multiply(p, A, B) == multiply(p, B, A);
        s.unit_verified &= multiply(p, one, A) == A && multiply(p, A, one) == A;
    }
    return s;
}

} // namespace rigidity
