#pragma once

// Independent reference implementations used only by the tests. Each one
// deliberately takes a different route than the library code it checks:
// eta via Euler transform instead of Borwein, zeta via raw partial sums
// plus an integral tail, theta via its asymptotic series, zero location
// via a brute-force fine grid, and decoding via exhaustive enumeration.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ceor/decoding.hpp"

namespace oracle {

using Complex = std::complex<double>;

// Euler-transform acceleration of sum (-1)^(n+1) n^-s. Accurate to about
// 1e-13 over the right half-plane when terms grows with |Im s|; callers
// can pass 0 to get the automatic choice 96 + ceil(2|Im s|).
Complex eta_euler_transform(const Complex& s, int terms = 0);

// Partial sums plus integral tail and two Euler-Maclaurin corrections.
// Only valid for Re s > 1; about 1e-14 at the default depth.
Complex zeta_tail_sum(const Complex& s, int terms = 2000);

// Asymptotic expansion of the Riemann-Siegel theta function, error below
// 5e-13 for t >= 10.
double theta_asymptotic(double t);

// Brute-force zero scan of the Hardy Z function on (t_lo, t_hi] with a
// 0.01 grid and bisection refined to a 1e-11 bracket.
std::vector<double> scan_zeros(double t_lo, double t_hi, double step = 0.01);

struct RankedPath {
  std::vector<int> tokens;
  double prob = 1.0;
};

// Every positive-probability completion of `start`, grown until end_token
// or max_len total tokens, sorted by probability descending with exact
// ties broken by lexicographically smaller token sequence. Probabilities
// are products of raw model probabilities in path order.
std::vector<RankedPath> enumerate_paths(const ceor::NextTokenModel& model,
                                        const std::vector<int>& start,
                                        int max_len,
                                        std::optional<int> end_token);

// Argmax continuation at every step (lowest id on ties).
RankedPath greedy_path(const ceor::NextTokenModel& model,
                       const std::vector<int>& start, int max_len,
                       std::optional<int> end_token);

// Random distribution over ids 0..size-1 with probabilities that are exact
// multiples of 1/64, so sums and renormalizations are exact in doubles.
ceor::TokenDistribution random_distribution(std::uint64_t seed, int size);

// Random Markov chain whose rows are built the same way.
ceor::MarkovModel random_markov(std::uint64_t seed, int vocab);

}  // namespace oracle
