#pragma once

#include <array>
#include <utility>

#include "ternary.hpp"

namespace fx {

using ternary::gram_form;
using ternary::TernaryForm;

// gen(N1) and gen(M1) in Gram notation, spinor genera {0..5}/{6..11} and {0..2}/{3..5}
inline const std::array<TernaryForm, 12> N = {
    gram_form(12, 15, 135, 5, 0, 0), gram_form(3, 7, 1200, 0, 0, 1),  gram_form(3, 60, 140, 20, 0, 0),
    gram_form(3, 27, 300, 0, 0, 1),  gram_form(27, 27, 40, 10, 10, 3), gram_form(12, 28, 83, 12, 4, -4),
    gram_form(12, 28, 75, 0, 0, 4),  gram_form(15, 35, 48, 0, 0, 5),  gram_form(7, 12, 300, 0, 0, 2),
    gram_form(12, 43, 60, 20, 0, 6), gram_form(8, 12, 303, 4, -2, 4), gram_form(12, 35, 60, 10, 0, 0)};

inline const std::array<TernaryForm, 6> M = {gram_form(1, 20, 80),          gram_form(5, 16, 20),
                                             gram_form(4, 20, 25, 10, 0, 0), gram_form(4, 5, 80),
                                             gram_form(9, 9, 20, 0, 0, 1),   gram_form(4, 20, 21, 0, 2, 0)};

// the twelve (N_i, M_j) pairs of the non-respecting correspondence, 0-based
inline const std::array<std::pair<int, int>, 12> S = {{{0, 0}, {8, 0}, {2, 1}, {6, 1}, {4, 2}, {10, 2},
                                                       {1, 3}, {7, 3}, {5, 4}, {9, 4}, {3, 5}, {11, 5}}};

inline const TernaryForm& N1 = N[0];
inline const TernaryForm& M1 = M[0];

}  // namespace fx
