#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "superlin/canonical.hpp"
#include "superlin/discovery.hpp"
#include "superlin/random.hpp"

namespace superlin {

// Seeded generators for property sweeps.
Polynomial random_polynomial(Rng& rng, int n_vars, int max_degree, int n_terms,
                             long long coeff_lo = -3, long long coeff_hi = 3);
PolyVectorField random_field(Rng& rng, int n_vars, int max_degree, int n_terms);
RatMatrix random_matrix(Rng& rng, int rows, int cols, long long lo = -3, long long hi = 3);
// product of integer shears; determinant +-1, exactly invertible
RatMatrix random_unimodular(Rng& rng, int n);
// polynomial with zero constant and linear parts, for the oracle sweeps
Polynomial random_reduced_polynomial(Rng& rng, int n_vars, int max_degree, int n_terms);

struct SelftestSuite {
  std::string name;
  int passed = 0;
  int total = 0;
};

// Property sweeps runnable from the command line: ring axioms, derivative
// and bracket identities, the annihilation oracle, and round-trip
// canonicalization of generated balanced families.
std::vector<SelftestSuite> run_selftest(std::uint64_t seed);

bool all_passed(const std::vector<SelftestSuite>& suites);

}  // namespace superlin
