#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ternary;

TEST(Watson, Examples) {
    WatsonResult w = watson(make_form(1, 1, 16), 2);
    EXPECT_TRUE(oracle::isometric(w.Lambda_form, make_form(2, 2, 16)));
    EXPECT_EQ(w.lambda_reduced, make_form(1, 1, 8));
    EXPECT_EQ(lambda(make_form(1, 1, 1), 3), make_form(1, 1, 1));
    EXPECT_EQ(lambda(fx::M1, 2), make_form(1, 5, 20));
    EXPECT_THROW(watson(fx::M1, 4), BadPrime);
}

TEST(Watson, LambdaMatchesTheDefinition) {
    std::vector<TernaryForm> fs = {make_form(1, 1, 16), make_form(1, 1, 80), make_form(3, 5, 7, 1, 2, 3)};
    fs.insert(fs.end(), fx::N.begin(), fx::N.end());
    fs.insert(fs.end(), fx::M.begin(), fx::M.end());
    for (const auto& f : fs)
        for (i64 p : {2, 3, 5, 7}) {
            WatsonResult w = watson(f, p);
            auto want = oracle::lambda_residues(f, p);
            EXPECT_EQ(oracle::residues(w.Lambda.basis, p), want) << emit(f) << " p=" << p;
            EXPECT_EQ(w.Lambda.index * static_cast<i64>(want.size()), p * p * p);
            EXPECT_EQ(w.Lambda_form, transform(f, w.Lambda.basis));
            EXPECT_TRUE(w.lambda.primitive());
            EXPECT_EQ(w.lambda, rescale(w.Lambda_form, w.factor));
            EXPECT_EQ(reduce(w.lambda), w.lambda_reduced);
        }
}

TEST(Watson, HTypeAndFibers) {
    EXPECT_FALSE(is_H_type(fx::M1, 2));
    EXPECT_TRUE(is_H_type(fx::M1, 5));
    EXPECT_TRUE(is_H_type(make_form(1, 1, 1), 3));
    EXPECT_EQ(lambda_fiber_exponent(make_form(1, 1, 1), 3), 0);
    EXPECT_EQ(g_truth(make_form(1, 5, 20)), 1);
    EXPECT_EQ(lambda_fiber_exponent(fx::M1, 2), 1);
    EXPECT_EQ(lambda_fiber_exponent(fx::M1, 5), 0);
    EXPECT_THROW(is_H_type(make_form(2, 2, 2), 3), NotPrimitive);
}

TEST(Watson, LambdaMapsTheGenusOntoTheImageGenus) {
    // spinor genera of gen(N1) and gen(M1) map into single spinor genera, onto the image genus
    for (const auto& base : {fx::N1, fx::M1})
        for (i64 p : {2, 3, 5}) {
            SpinorPartition P = spinor_partition(enumerate_genus(base));
            SpinorPartition Q = spinor_partition(enumerate_genus(lambda(base, p)));
            std::set<int> image;
            for (const auto& part : P.parts) {
                std::set<int> target;
                for (int i : part) {
                    TernaryForm l = lambda(P.table.classes[i], p);
                    int c = Q.table.find_reduced(l);
                    ASSERT_GE(c, 0) << emit(l);
                    image.insert(c);
                    target.insert(Q.part_of[c]);
                }
                EXPECT_EQ(target.size(), 1u) << emit(base) << " p=" << p;
            }
            EXPECT_EQ(image.size(), Q.table.classes.size()) << emit(base) << " p=" << p;
        }
}

TEST(Gamma, Examples) {
    GammaPair g = gamma_descendants(make_form(1, 1, 80), 5);
    EXPECT_EQ(g.candidates, 31);
    for (const auto& r : g.reduced) EXPECT_EQ(r, make_form(1, 1, 16));
    EXPECT_THROW(gamma_descendants(make_form(1, 1, 1), 3), NotHyperbolicAtP);
    EXPECT_EQ(hyperbolic_level(make_form(1, 1, 80), 5), 1);
    EXPECT_EQ(hyperbolic_level(make_form(1, 1, 16), 5), 0);
    // unimodular of rank 3 at an odd prime: H + <eps>, so level 0 and no descendants
    EXPECT_EQ(hyperbolic_level(make_form(1, 1, 1), 3), 0);
    EXPECT_FALSE(hyperbolic_level(make_form(1, 1, 4), 2).has_value());
}

TEST(Gamma, ExactlyTwoPlanesWithNormInPZ) {
    for (const auto& [f, p] : std::vector<std::pair<TernaryForm, i64>>{
             {make_form(1, 1, 80), 5}, {make_form(1, 2, 75), 3}, {make_form(1, 1, 16 * 13 * 13), 13}}) {
        std::set<oracle::Residues> want;
        for (const auto& plane : oracle::planes(p)) {
            bool ok = true;
            for (const auto& x : plane) ok = ok && mod(f.Q(x), p) == 0;
            if (ok) want.insert(plane);
        }
        ASSERT_EQ(want.size(), 2u) << emit(f);
        GammaPair g = gamma_descendants(f, p);
        std::set<oracle::Residues> got = {oracle::residues(g.sub[0].basis, p), oracle::residues(g.sub[1].basis, p)};
        EXPECT_EQ(got, want);
        for (int i = 0; i < 2; ++i) EXPECT_EQ(g.descendant[i].four_disc() * p, f.four_disc());
    }
}

TEST(Gamma, DescendantsOfACommonAncestorShareLambda) {
    FamilySlice s = family_slice(make_form(1, 1, 16), 5, 2);
    for (const auto& k : s.table.classes) {
        TernaryForm lk = lambda(k, 5);
        for (const auto& n : gamma_descendants(k, 5).reduced) {
            auto below = gamma_descendants(n, 5).reduced;
            EXPECT_TRUE(below[0] == lk || below[1] == lk) << emit(k);
        }
    }
}

TEST(Family, Slices) {
    FamilySlice s0 = family_slice(make_form(1, 1, 16), 5, 0);
    EXPECT_EQ(s0.table.classes, enumerate_genus(make_form(1, 1, 16)).classes);
    FamilySlice s1 = family_slice(make_form(1, 1, 16), 5, 1);
    EXPECT_EQ(s1.table.classes.size(), 4u);
    EXPECT_GE(s1.table.find_reduced(make_form(1, 1, 80)), 0);
    EXPECT_EQ(s1.table.four_d, 5 * s0.table.four_d);
    FamilySlice s2 = family_slice(make_form(1, 1, 16), 5, 2);
    EXPECT_EQ(s2.table.four_d, 5 * s1.table.four_d);
    EXPECT_THROW(family_slice(make_form(1, 1, 80), 5, 0), NotHyperbolicAtP);
}

TEST(WatsonGraph, ComponentsAreCspn) {
    for (const auto& [L, p] : std::vector<std::pair<TernaryForm, i64>>{
             {make_form(1, 1, 16), 3}, {make_form(1, 1, 16), 5}, {make_form(1, 1, 16), 7}, {fx::M1, 3}}) {
        for (int m = 0; m <= 1; ++m) {
            WatsonMultigraph G = watson_graph(L, p, m);
            EXPECT_EQ(G.type, watson_type(L, p, m));
            SpinorPartition PV = spinor_partition(G.vertices_slice.table);
            SpinorPartition PE = spinor_partition(G.edges_slice.table);
            char etype = watson_type(L, p, m + 1);
            for (const auto& [vs, es] : G.components()) {
                EXPECT_EQ(vs, cspn(PV, vs.front(), p, G.type)) << emit(L) << " p=" << p << " m=" << m;
                std::vector<int> ecls;
                for (int e : es) ecls.push_back(PE.table.find(G.edges[e].cls));
                std::sort(ecls.begin(), ecls.end());
                ASSERT_FALSE(ecls.empty());
                EXPECT_EQ(ecls, cspn(PE, ecls.front(), p, etype)) << emit(L) << " p=" << p << " m=" << m;
            }
            // cspn splits the slice into g or g/2 blocks
            int blocks = static_cast<int>(G.components().size());
            EXPECT_EQ(blocks * (G.type == 'E' ? 2 : 1), PV.g());
        }
    }
}

TEST(WatsonGraph, SingleClassSlices) {
    WatsonMultigraph G = watson_graph(make_form(1, 1, 1), 5, 0);
    EXPECT_EQ(G.vertices.size(), 1u);
    ASSERT_EQ(G.edges.size(), 1u);
    EXPECT_EQ(G.edges[0].v1, 0);
    EXPECT_EQ(G.edges[0].v2, 0);
}

TEST(Exchange, Checks) {
    ExchangeReport r = exchange_check(make_form(1, 2, 75), 3, 5);
    EXPECT_TRUE(r.ok());
    EXPECT_FALSE(r.part2.has_value());
    EXPECT_THROW(exchange_check(make_form(1, 1, 1), 3, 5), NotHyperbolicAtP);
    EXPECT_THROW(exchange_check(make_form(1, 2, 75), 3, 3), BadPrime);
}
