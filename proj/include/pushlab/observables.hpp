#pragma once

// Closed-form density, current, and nearest-neighbour two-point correlation
// formulas for the stationary distribution, in exact arithmetic.

#include <cstdint>
#include <vector>

#include "pushlab/rational.hpp"
#include "pushlab/state.hpp"

namespace pushlab {

// Single-species density at site j (0-based):
// beta_j e_{n1-1}(beta without beta_j) / e_{n1}(beta).
Rational density_single(const Content& content, const RateVector& beta,
                        int site);

// Density of species i at site 1:
// beta_1 s_{<1^{n_i-1}, 2^{N_{i+1}}>}(beta_2..beta_L) / (e_{N_i} e_{N_{i+1}}).
Rational density_multi(const Content& content, const RateVector& beta,
                       int species);

// Single-species current e_{n1-1}(beta)/e_{n1}(beta). Also evaluates the
// defining stationary sum and throws if the two disagree.
Rational current_single(const Content& content, const RateVector& beta);

// The defining current sum J = sum_j (1/beta_j) <eta_j ... eta_L> evaluated
// from the exact stationary distribution.
Rational current_defining_sum(const Content& content, const RateVector& beta);

// Current of species i:
// s_{<1^{n_i-1}, 2^{N_{i+1}}>}(beta) / (e_{N_i} e_{N_{i+1}}).
Rational current_multi(const Content& content, const RateVector& beta,
                       int species);

// Three-species correlations for content <0^{L-s-t}, 1^t, 2^s>:
// which = 1: P(vacancy at site 1, species 1 at site 2)
// which = 2: P(species 1 at site 1, vacancy at site 2)
Rational three_species_T(std::int64_t s_count, std::int64_t t_count,
                         const RateVector& beta, int which);

// The 3x3-determinant polynomial of the two-point formula (j < i case).
Rational f_poly(int j, int i, const RateVector& beta);

// The double-sum polynomial of the two-point formula (j >= i+1 cases).
Rational g_poly(int j, int i, const RateVector& beta);

// Joint probability of species j at site 1 and species i at site 2 for the
// content (L-1, ..., 1, 0); species 0 means a vacancy.
Rational two_point(int j, int i, const RateVector& beta);

}  // namespace pushlab
