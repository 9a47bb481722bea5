#include <gtest/gtest.h>

#include <random>

#include "rigidity/mult_structure.hpp"

using namespace rigidity;

namespace {

GroupElement el(const GroupSpec& g, std::vector<integer> c) { return {g, std::move(c)}; }

using Table = std::vector<std::vector<GroupElement>>;

// g ∘ h by distributivity alone: expand g and h into sums of generators and
// add up one copy of e_i ∘ e_j per pair of summands. No scalar_mul involved.
GroupElement eval_by_iterated_addition(const StructureConstants& C, const GroupElement& g, const GroupElement& h)
{
    GroupElement acc = GroupElement::zero(C.group());
    for (std::size_t i = 0; i < C.rank(); ++i)
        for (integer gi = 0; gi < g[i]; ++gi)
            for (std::size_t j = 0; j < C.rank(); ++j)
                for (integer hj = 0; hj < h[j]; ++hj) acc = add(acc, C.at(i, j));
    return acc;
}

bool associative_by_full_scan(const StructureConstants& C)
{
    const auto all = all_elements(C.group());
    for (const auto& x : all)
        for (const auto& y : all)
            for (const auto& z : all)
                if (eval(C, eval(C, x, y), z) != eval(C, x, eval(C, y, z))) return false;
    return true;
}

std::vector<GroupElement> identities_by_full_scan(const StructureConstants& C)
{
    const auto all = all_elements(C.group());
    std::vector<GroupElement> out;
    for (const auto& u : all) {
        bool ok = true;
        for (const auto& x : all) ok = ok && eval(C, u, x) == x && eval(C, x, u) == x;
        if (ok) out.push_back(u);
    }
    return out;
}

// A random well-defined table: each constant is drawn from the elements whose
// order divides gcd(n_i, n_j).
StructureConstants random_constants(const GroupSpec& G, std::mt19937_64& rng)
{
    const auto all = all_elements(G);
    Table t(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i)
        for (std::size_t j = 0; j < G.rank(); ++j) {
            const integer bound = std::gcd(G.modulus(i), G.modulus(j));
            std::vector<GroupElement> legal;
            for (const auto& g : all)
                if (bound % element_order(g) == 0) legal.push_back(g);
            t[i].push_back(legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)]);
        }
    return {G, std::move(t)};
}

// The field with four elements on Z/2 x Z/2, basis 1 = (1,0), w = (0,1), w^2 = 1 + w.
StructureConstants field_of_four()
{
    GroupSpec k{2, 2};
    return {k, {{el(k, {1, 0}), el(k, {0, 1})}, {el(k, {0, 1}), el(k, {1, 1})}}};
}

std::vector<GroupSpec> groups_up_to_16()
{
    std::vector<GroupSpec> out;
    for (integer n = 2; n <= 16; ++n) out.push_back(GroupSpec::cyclic(n));
    for (auto g : {GroupSpec{2, 2}, GroupSpec{2, 3}, GroupSpec{2, 4}, GroupSpec{2, 5}, GroupSpec{2, 6}, GroupSpec{2, 7},
                   GroupSpec{2, 8}, GroupSpec{3, 3}, GroupSpec{3, 5}, GroupSpec{4, 4}, GroupSpec{4, 2},
                   GroupSpec{2, 2, 2}, GroupSpec{2, 2, 3}, GroupSpec{2, 2, 4}, GroupSpec{2, 2, 2, 2}})
        out.push_back(g);
    return out;
}

} // namespace

TEST(StructureConstants, RejectsMalformedTables)
{
    GroupSpec k{2, 2};
    EXPECT_THROW(StructureConstants(k, Table{{el(k, {0, 0})}}), usage_error);
    EXPECT_THROW(StructureConstants(k, Table{{el(k, {0, 0}), el(k, {0, 0})}, {el(k, {0, 0})}}), usage_error);
    GroupSpec other{4};
    EXPECT_THROW(StructureConstants(GroupSpec{4}, Table{{el(GroupSpec{2}, {1})}}), usage_error);
}

TEST(StructureConstants, TorsionMismatchForcesZeroCrossConstants)
{
    GroupSpec g{2, 3};
    auto z = el(g, {0, 0});
    EXPECT_NO_THROW(StructureConstants(g, Table{{el(g, {1, 0}), z}, {z, el(g, {0, 1})}}));
    EXPECT_THROW(StructureConstants(g, Table{{el(g, {1, 0}), el(g, {1, 0})}, {z, z}}), usage_error);
    EXPECT_THROW(StructureConstants(g, Table{{el(g, {0, 1}), z}, {z, z}}), usage_error);
}

TEST(StructureConstants, WellDefinednessGuardMatchesExpansionOracle)
{
    // Put x at position (i,j), zero elsewhere. The table must be rejected
    // exactly when two ways of writing a product give different answers:
    // e_i = (1 + n_i) e_i, so (e_i ∘ e_j) must equal (1 + n_i) copies of it,
    // and likewise on the right.
    std::vector<GroupSpec> groups;
    for (integer n = 2; n <= 36; ++n) groups.push_back(GroupSpec::cyclic(n));
    for (auto g : {GroupSpec{2, 2}, GroupSpec{2, 3}, GroupSpec{2, 4}, GroupSpec{4, 6}, GroupSpec{3, 9}, GroupSpec{6, 6},
                   GroupSpec{2, 2, 3}, GroupSpec{2, 3, 6}, GroupSpec{3, 12}})
        groups.push_back(g);

    int rejected = 0;
    for (const auto& G : groups) {
        const auto zero = GroupElement::zero(G);
        for (std::size_t i = 0; i < G.rank(); ++i)
            for (std::size_t j = 0; j < G.rank(); ++j)
                for (const auto& x : all_elements(G)) {
                    Table t(G.rank(), std::vector<GroupElement>(G.rank(), zero));
                    t[i][j] = x;
                    auto copies = [&](integer c) {
                        GroupElement acc = zero;
                        for (integer r = 0; r < c; ++r) acc = add(acc, x);
                        return acc;
                    };
                    const bool expansions_disagree = copies(1 + G.modulus(i)) != x || copies(1 + G.modulus(j)) != x;
                    bool threw = false;
                    try {
                        StructureConstants C(G, t);
                    } catch (const usage_error&) {
                        threw = true;
                    }
                    ASSERT_EQ(threw, expansions_disagree) << G.to_string() << " (" << i << "," << j << ") " << x;
                    rejected += threw;
                }
    }
    EXPECT_GT(rejected, 0);
}

TEST(Eval, Examples)
{
    GroupSpec z4{4};
    auto usual = StructureConstants::cyclic(4, 1);
    EXPECT_EQ(eval(usual, el(z4, {2}), el(z4, {3})), el(z4, {2}));
    auto doubled = StructureConstants::cyclic(4, 2);
    EXPECT_EQ(eval(doubled, el(z4, {3}), el(z4, {3})), el(z4, {2}));
    EXPECT_EQ(eval_by_iterated_addition(doubled, el(z4, {3}), el(z4, {3})), el(z4, {2}));

    auto f4 = field_of_four();
    for (const auto& h : all_elements(f4.group())) EXPECT_TRUE(eval(f4, GroupElement::zero(f4.group()), h).is_zero());
}

TEST(Eval, MismatchedGroupIsUsageError)
{
    auto C = StructureConstants::cyclic(6, 1);
    EXPECT_THROW(eval(C, el(GroupSpec{2, 3}, {1, 1}), el(GroupSpec{6}, {1})), usage_error);
}

TEST(Eval, AgreesWithIteratedAddition)
{
    std::mt19937_64 rng(11);
    for (const auto& G : groups_up_to_16()) {
        for (int trial = 0; trial < 5; ++trial) {
            auto C = random_constants(G, rng);
            for (const auto& g : all_elements(G))
                for (const auto& h : all_elements(G)) ASSERT_EQ(eval(C, g, h), eval_by_iterated_addition(C, g, h));
        }
    }
}

TEST(Eval, Bilinear)
{
    std::mt19937_64 rng(12);
    // Exhaustive on groups of order ≤ 64.
    for (auto G : {GroupSpec{2, 2}, GroupSpec{4, 4}, GroupSpec{2, 2, 2}, GroupSpec{8, 8}, GroupSpec{2, 4, 8},
                   GroupSpec{64}, GroupSpec{3, 6}, GroupSpec{2, 2, 2, 2, 2, 2}}) {
        auto C = random_constants(G, rng);
        const auto all = all_elements(G);
        for (const auto& g : all)
            for (const auto& g2 : all)
                for (const auto& h : all) {
                    ASSERT_EQ(eval(C, add(g, g2), h), add(eval(C, g, h), eval(C, g2, h)));
                    ASSERT_EQ(eval(C, h, add(g, g2)), add(eval(C, h, g), eval(C, h, g2)));
                }
    }
    // 10^4 random samples on larger groups.
    for (auto G : {GroupSpec{12, 18}, GroupSpec{5, 10, 20}, GroupSpec{997}, GroupSpec{4, 4, 4, 4}}) {
        auto C = random_constants(G, rng);
        std::uniform_int_distribution<integer> pick(0, G.order() - 1);
        for (int s = 0; s < 10'000; ++s) {
            auto g = element_at(G, pick(rng)), g2 = element_at(G, pick(rng)), h = element_at(G, pick(rng));
            ASSERT_EQ(eval(C, add(g, g2), h), add(eval(C, g, h), eval(C, g2, h)));
            ASSERT_EQ(eval(C, h, add(g, g2)), add(eval(C, h, g), eval(C, h, g2)));
        }
    }
}

TEST(CheckAssociativity, Examples)
{
    for (integer n = 2; n <= 8; ++n)
        for (integer a = 0; a < n; ++a) {
            auto C = StructureConstants::cyclic(n, a);
            EXPECT_TRUE(check_associativity(C));
            EXPECT_TRUE(associative_by_full_scan(C));
        }
    EXPECT_TRUE(check_associativity(field_of_four()));
    EXPECT_TRUE(associative_by_full_scan(field_of_four()));
    EXPECT_TRUE(check_associativity(StructureConstants::zero(GroupSpec{2, 2})));
    EXPECT_TRUE(check_associativity(StructureConstants::zero(GroupSpec{4, 6, 8})));
}

TEST(CheckAssociativity, GeneratorTriplesSufficeOnAllGroupsUpTo16)
{
    std::mt19937_64 rng(13);
    int non_associative = 0;
    for (const auto& G : groups_up_to_16()) {
        for (int trial = 0; trial < 40; ++trial) {
            auto C = random_constants(G, rng);
            const bool fast = check_associativity(C);
            ASSERT_EQ(fast, associative_by_full_scan(C)) << G.to_string();
            non_associative += !fast;
        }
    }
    EXPECT_GT(non_associative, 0);
}

TEST(CheckCommutativity, Examples)
{
    EXPECT_TRUE(check_commutativity(StructureConstants::cyclic(7, 3)));
    GroupSpec k{2, 2};
    StructureConstants asym(k, {{el(k, {0, 0}), el(k, {1, 0})}, {el(k, {0, 1}), el(k, {0, 0})}});
    EXPECT_FALSE(check_commutativity(asym));
    EXPECT_TRUE(check_commutativity(StructureConstants::zero(k)));
    EXPECT_TRUE(check_commutativity(field_of_four()));
}

TEST(FindUnit, Examples)
{
    EXPECT_EQ(find_unit(StructureConstants::cyclic(4, 1)), el(GroupSpec{4}, {1}));
    EXPECT_FALSE(find_unit(StructureConstants::cyclic(4, 2)).has_value());
    EXPECT_EQ(find_unit(StructureConstants::cyclic(5, 2)), el(GroupSpec{5}, {3}));
    EXPECT_EQ(find_unit(field_of_four()), el(GroupSpec{2, 2}, {1, 0}));
    EXPECT_FALSE(find_unit(StructureConstants::zero(GroupSpec{3, 3})).has_value());
}

TEST(FindUnit, CapIsEnforced)
{
    EXPECT_THROW(find_unit(StructureConstants::cyclic(101, 1), 100), capacity_error);
}

TEST(FindUnit, MatchesFullIdentityScan)
{
    // Every well-defined table on Z/2 x Z/2 (256 of them), plus random ones elsewhere.
    GroupSpec k{2, 2};
    const auto all = all_elements(k);
    int unital = 0;
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all)
                for (const auto& d : all) {
                    StructureConstants C(k, {{a, b}, {c, d}});
                    auto expected = identities_by_full_scan(C);
                    ASSERT_LE(expected.size(), 1u);
                    auto got = find_unit(C);
                    ASSERT_EQ(got.has_value(), !expected.empty());
                    if (got) {
                        EXPECT_EQ(*got, expected.front());
                        ++unital;
                    }
                }
    EXPECT_GT(unital, 0);

    std::mt19937_64 rng(14);
    for (const auto& G : groups_up_to_16())
        for (int trial = 0; trial < 10; ++trial) {
            auto C = random_constants(G, rng);
            auto expected = identities_by_full_scan(C);
            auto got = find_unit(C);
            ASSERT_EQ(got.has_value(), !expected.empty());
            if (got) {
                EXPECT_EQ(*got, expected.front());
            }
        }
}

TEST(RingStructure, FlagsAreRecomputed)
{
    auto r = RingStructure::integers_mod(6);
    EXPECT_TRUE(r.associative());
    EXPECT_TRUE(r.commutative());
    EXPECT_EQ(r.unit(), el(GroupSpec{6}, {1}));

    GroupSpec k{2, 2};
    // e0∘e1 = e0, everything else zero: (e0∘e1)∘e1 = e0 but e0∘(e1∘e1) = 0.
    StructureConstants bad(k, {{el(k, {0, 0}), el(k, {1, 0})}, {el(k, {0, 0}), el(k, {0, 0})}});
    RingStructure nr(bad);
    EXPECT_FALSE(nr.associative());
    EXPECT_FALSE(nr.commutative());
    EXPECT_FALSE(nr.unit().has_value());
}

TEST(DistributivityBlackbox, Examples)
{
    IntegerWindow w(100);
    auto usual = check_distributivity_blackbox([](integer n, integer m) { return checked::mul(n, m); }, w, 1000);
    EXPECT_TRUE(usual.holds);
    EXPECT_FALSE(usual.counterexample);
    EXPECT_EQ(usual.triples_checked, 343u + 1000u);

    auto shifted =
        check_distributivity_blackbox([](integer n, integer m) { return checked::add(checked::mul(n, m), 1); }, w, 1000);
    EXPECT_FALSE(shifted.holds);
    ASSERT_TRUE(shifted.counterexample);
    // n*(m+k)+1 never equals (n*m+1)+(n*k+1); the first triple scanned already fails.
    EXPECT_EQ(*shifted.counterexample, (Triple{-3, -3, -3}));

    auto alt = check_distributivity_blackbox([](integer n, integer m) { return checked::neg(checked::mul(n, m)); }, w,
                                             1000);
    EXPECT_TRUE(alt.holds);
}

TEST(DistributivityBlackbox, CatchesSubtleFailuresOnlyOutsideSmallRange)
{
    // Agrees with n*m for |arguments| ≤ 6 and with 2*n*m otherwise: only random sampling can catch it.
    IntMul sneaky = [](integer n, integer m) {
        const bool small = n >= -6 && n <= 6 && m >= -6 && m <= 6;
        return checked::mul(small ? 1 : 2, n, m);
    };
    auto r = check_distributivity_blackbox(sneaky, IntegerWindow(50), 2000);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.counterexample);
    EXPECT_GT(r.triples_checked, 343u);
}

TEST(DistributivityBlackbox, OverflowNamesTheTriple)
{
    IntMul huge = [](integer n, integer m) { return checked::mul(integer{1} << 62, n, m); };
    try {
        check_distributivity_blackbox(huge, IntegerWindow(10), 10);
        FAIL() << "expected overflow";
    } catch (const overflow_error& e) {
        EXPECT_NE(std::string(e.what()).find("triple ("), std::string::npos) << e.what();
    }
}
