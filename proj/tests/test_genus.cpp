#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ternary;

namespace {

// index in the table of the class isometric to f, checked by brute force
int locate(const GenusTable& T, const TernaryForm& f) {
    int hit = -1;
    for (std::size_t i = 0; i < T.classes.size(); ++i)
        if (oracle::isometric(T.classes[i], f)) {
            EXPECT_EQ(hit, -1) << "two table entries isometric to " << emit(f);
            hit = static_cast<int>(i);
        }
    return hit;
}

// classes reached from f by walks of even length in the p-neighbor graph
std::set<TernaryForm> even_walks(const TernaryForm& f, i64 p) {
    std::set<TernaryForm> seen{reduce(f)};
    std::vector<TernaryForm> todo{reduce(f)};
    while (!todo.empty()) {
        TernaryForm x = todo.back();
        todo.pop_back();
        for (const auto& y : p_neighbors(x, p))
            for (const auto& z : p_neighbors(y, p))
                if (seen.insert(z).second) todo.push_back(z);
    }
    return seen;
}

}  // namespace

TEST(Genus, EnumerationOfN1) {
    GenusTable T = enumerate_genus(fx::N1);
    ASSERT_EQ(T.classes.size(), 12u);
    std::set<int> hit;
    for (const auto& f : fx::N) hit.insert(locate(T, f));
    EXPECT_EQ(hit.size(), 12u);
    EXPECT_EQ(hit.count(-1), 0u);
    for (const auto& f : T.classes) EXPECT_TRUE(same_genus(f, fx::N1));
}

TEST(Genus, EnumerationOfM1AndSmallCases) {
    GenusTable T = enumerate_genus(fx::M1);
    ASSERT_EQ(T.classes.size(), 6u);
    std::set<int> hit;
    for (const auto& f : fx::M) hit.insert(locate(T, f));
    EXPECT_EQ(hit.size(), 6u);
    EXPECT_EQ(enumerate_genus(make_form(1, 1, 1)).classes.size(), 1u);
}

TEST(Genus, NeighborClosureMatchesEnumeration) {
    for (const auto& f : {fx::N1, fx::M1, make_form(1, 1, 80), make_form(3, 5, 7, 1, 2, 3)}) {
        GenusTable T = enumerate_genus(f);
        i64 p = smallest_good_prime(T.four_d);
        i64 q = smallest_good_prime(T.four_d, p);
        auto reach = neighbor_closure(f, {p, q});
        EXPECT_EQ(reach.size(), T.classes.size()) << emit(f);
        EXPECT_TRUE(neighbor_closed(T, {p, q}));
    }
}

TEST(Spinor, PartitionsOfTheExampleGenera) {
    SpinorPartition P = spinor_partition(enumerate_genus(fx::N1));
    ASSERT_EQ(P.g(), 2);
    for (int i = 0; i < 12; ++i)
        EXPECT_EQ(P.part_of_form(fx::N[i]) == P.part_of_form(fx::N[0]), i < 6) << i;
    SpinorPartition Q = spinor_partition(enumerate_genus(fx::M1));
    ASSERT_EQ(Q.g(), 2);
    for (int i = 0; i < 6; ++i) EXPECT_EQ(Q.part_of_form(fx::M[i]) == Q.part_of_form(fx::M[0]), i < 3) << i;
    EXPECT_EQ(spinor_partition(enumerate_genus(make_form(1, 1, 1))).g(), 1);
}

TEST(Spinor, PartsAreEvenNeighborWalks) {
    for (const auto& f : {fx::N1, fx::M1, make_form(1, 1, 16), make_form(1, 1, 80)}) {
        SpinorPartition P = spinor_partition(enumerate_genus(f));
        for (i64 p : {7, 11}) {
            if ((2 * P.table.four_d) % p == 0) continue;
            for (const auto& part : P.parts) {
                auto walk = even_walks(P.table.classes[part.front()], p);
                std::set<TernaryForm> want;
                for (int i : part) want.insert(P.table.classes[i]);
                EXPECT_EQ(walk, want) << emit(f) << " p=" << p;
            }
        }
    }
}

TEST(Spinor, IdeleClassGroup) {
    EXPECT_EQ(idele_class_group(make_form(1, 1, 1)).order(), 1);
    EXPECT_EQ(idele_class_group(fx::M1).order(), 2);
    auto G = idele_class_group(fx::N1);
    EXPECT_EQ(G.order(), 2);
    // j(p) nontrivial exactly when a p-neighbor step changes the spinor genus
    SpinorPartition P = spinor_partition(enumerate_genus(fx::N1));
    for (i64 p : {7, 11, 13, 17, 19}) {
        int here = P.part_of_form(fx::N1);
        for (const auto& y : p_neighbors(fx::N1, p)) EXPECT_EQ(P.part_of_form(y) != here, !G.j_trivial(p)) << p;
    }
    EXPECT_TRUE(P.labels_consistent);
}

TEST(Neighbors, Examples) {
    auto nb = p_neighbors(make_form(1, 1, 1), 3);
    EXPECT_EQ(nb.size(), 4u);
    for (const auto& y : nb) EXPECT_TRUE(oracle::isometric(y, make_form(1, 1, 1)));
    EXPECT_THROW(p_neighbors(make_form(1, 1, 1), 2), BadPrime);
    EXPECT_THROW(p_neighbors(fx::M1, 5), BadPrime);
    for (const auto& y : p_neighbors(fx::M1, 3)) {
        bool found = false;
        for (const auto& m : fx::M) found = found || oracle::isometric(y, m);
        EXPECT_TRUE(found) << emit(y);
    }
}

TEST(Spinor, ExceptionalIntegers) {
    SpinorPartition P16 = spinor_partition(enumerate_genus(make_form(1, 1, 16)));
    ASSERT_EQ(P16.g(), 2);
    int own = P16.part_of_form(make_form(1, 1, 16));
    EXPECT_TRUE(spn_represents(P16, own, 1));
    EXPECT_FALSE(spn_represents(P16, 1 - own, 1));
    EXPECT_TRUE(complete_exceptional_system_check(P16, {1}));

    SpinorPartition P80 = spinor_partition(enumerate_genus(make_form(1, 1, 80)));
    EXPECT_TRUE(spn_represents(P80, P80.part_of_form(make_form(1, 1, 80)), 5));
    EXPECT_TRUE(complete_exceptional_system_check(P80, {5}));

    EXPECT_TRUE(complete_exceptional_system_check(spinor_partition(enumerate_genus(make_form(1, 1, 1))), {}));
}
