#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ternary;

namespace {

std::vector<int> scales(const std::vector<JordanBlock>& blocks) {
    std::vector<int> out;
    for (const auto& b : blocks)
        for (int i = 0; i < b.rank; ++i) out.push_back(b.scale);
    return out;
}

// number of x mod m with Q(x) = t mod m, for every t
std::vector<long> counts_mod(const TernaryForm& f, i64 m) {
    std::vector<long> out(m, 0);
    for (i64 x = 0; x < m; ++x)
        for (i64 y = 0; y < m; ++y)
            for (i64 z = 0; z < m; ++z) ++out[mod(f.Q({x, y, z}), m)];
    return out;
}

// all reduced forms of 4d = D by brute force over a bounded coefficient box
std::vector<TernaryForm> forms_of(i64 D) {
    std::set<TernaryForm> out;
    for (i64 a = 1; a * a * a <= 2 * D; ++a)
        for (i64 b = a; a * b <= 2 * D; ++b)
            for (i64 c = b; c <= 2 * D; ++c)
                for (i64 p = -b; p <= b; ++p)
                    for (i64 q = -a; q <= a; ++q)
                        for (i64 r = -a; r <= a; ++r) {
                            TernaryForm f{a, b, c, p, q, r};
                            if (f.positive_definite() && f.four_disc() == D) out.insert(reduce(f));
                        }
    return {out.begin(), out.end()};
}

}  // namespace

TEST(Jordan, Examples) {
    EXPECT_EQ(scales(jordan(fx::M1, 2)), (std::vector<int>{0, 2, 4}));
    auto n5 = jordan(fx::N1, 5);
    EXPECT_EQ(scales(n5), (std::vector<int>{0, 1, 2}));
    for (const auto& b : n5) EXPECT_EQ(b.rank, 1);
    auto n3 = jordan(fx::N1, 3);
    ASSERT_EQ(n3.size(), 2u);
    EXPECT_EQ(n3[0].scale, 0);
    EXPECT_EQ(n3[0].rank, 2);
    EXPECT_EQ(n3[1].scale, 1);
    EXPECT_EQ(n3[1].rank, 1);
}

TEST(Jordan, ScalesAccountForTheDeterminant) {
    // sum of Gram-normalized scales = ord_p(d), with d = 4d / 4
    for (const auto& f : fx::N)
        for (i64 p : {2, 3, 5, 7}) {
            int total = 0;
            for (int s : scales(jordan(f, p))) total += s;
            EXPECT_EQ(total, val(f.four_disc(), p) - (p == 2 ? 2 : 0)) << emit(f) << " at " << p;
        }
}

TEST(LocalSymbol, Examples) {
    EXPECT_EQ(local_symbol(fx::N1, 7), local_symbol(make_form(1, 1, 1), 7));
    auto s7 = jordan(fx::N1, 7);
    ASSERT_EQ(s7.size(), 1u);
    EXPECT_EQ(s7[0].rank, 3);
    EXPECT_EQ(local_symbol(fx::M1, 2), local_symbol(fx::M[3], 2));
    for (const auto& f : fx::N)
        for (i64 p : symbol_primes(fx::N1)) EXPECT_EQ(local_symbol(f, p), local_symbol(fx::N1, p));
    EXPECT_FALSE(same_genus(fx::M1, make_form(1, 1, 1600)));
}

TEST(LocalSymbol, GenusMatchesRepresentationCountsModPrimePowers) {
    for (i64 D = 3; D <= 100; ++D) {
        bool small = true;
        for (i64 p : prime_divisors(2 * D)) small = small && ipow(p, val(D, p) + (p == 2 ? 3 : 1)) <= 128;
        if (!small) continue;
        auto fs = forms_of(D);
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j) {
                bool counts_equal = true;
                for (i64 p : prime_divisors(2 * D)) {
                    i64 m = ipow(p, val(D, p) + (p == 2 ? 3 : 1));
                    counts_equal = counts_equal && counts_mod(fs[i], m) == counts_mod(fs[j], m);
                }
                EXPECT_EQ(same_genus(fs[i], fs[j]), counts_equal) << emit(fs[i]) << " vs " << emit(fs[j]);
            }
    }
}

TEST(SpinorNorms, Examples) {
    auto t5 = spinor_norm_group(make_form(1, 1, 1), 5);
    EXPECT_TRUE(t5.all_units());
    auto t2 = spinor_norm_group(fx::M1, 2);
    EXPECT_LT(t2.size(), 8);
    // <1> + 5<4,16>: the binary block alone already yields every unit and 5 * unit
    auto m5 = spinor_norm_group(fx::M1, 5);
    EXPECT_EQ(m5.size(), 4);
}

TEST(HTable, Examples) {
    auto m2 = h_type_table_match(fx::M1, 2);
    ASSERT_TRUE(m2.has_value());
    EXPECT_EQ(m2->table, 2);
    EXPECT_EQ(m2->alpha, 2);
    EXPECT_EQ(m2->beta, 4);
    EXPECT_EQ(mod(m2->eps1, 4), 1);
    EXPECT_EQ(m2->row.substr(0, 5), "(2,4)");
    EXPECT_FALSE(h_type_table_match(fx::M1, 5).has_value());
    EXPECT_FALSE(h_type_table_match(make_form(1, 1, 1), 3).has_value());
    EXPECT_THROW(h_type_table_match(make_form(2, 2, 2), 2), NotPrimitive);
}

TEST(HTable, RowConditions) {
    EXPECT_TRUE(detail::rep_x_2y(1, 1, 3));
    EXPECT_FALSE(detail::rep_x_2y(1, 1, 5));
    EXPECT_TRUE(detail::table1_row(1, 2, false, false).has_value());
    EXPECT_FALSE(detail::table1_row(1, 2, false, true).has_value());
    EXPECT_TRUE(detail::table1_row(2, 5, false, true).has_value());
    EXPECT_FALSE(detail::table1_row(2, 4, false, true).has_value());
    EXPECT_TRUE(detail::table2_row(2, 2, 1, 3).has_value());
    EXPECT_FALSE(detail::table2_row(2, 2, 5, 3).has_value());
    EXPECT_TRUE(detail::table2_row(2, 7, 5, 1).has_value());
    EXPECT_FALSE(detail::table2_row(0, 0, 1, 1).has_value());
}
