#pragma once

#include <cstdint>
#include <optional>

#include "superlin/model.hpp"

namespace superlin {

struct DiscoveryConfig {
  int max_degree = 4;
  int max_observables = 64;
  bool require_balanced = false;
};

// Result of the closure search. When no affine closure exists within the
// bounds, `frontier` lists the monomials that were still open when the
// search stopped; NotFound is a bound report, not a proof that no
// super-linearization exists.
struct DiscoveryResult {
  std::optional<Embedding> embedding;
  std::vector<Monomial> frontier;
  bool found() const { return embedding.has_value(); }
};

// Carleman-style search for monomial observables whose Lie derivatives
// close affinely over (x, observables, 1). Seeds with the monomials of the
// nonlinear part of f and grows the set with every unexpressible monomial
// of degree >= 2 showing up in a Lie derivative. On success the returned
// embedding satisfies the closure identities by construction (re-checked).
// Requires a constant control field g == B.
DiscoveryResult discover_embedding(const ControlSystem& sys, const DiscoveryConfig& cfg);

// Randomly generated system with a known balanced super-linearization, for
// test families. Built directly in split coordinates — leading block driven
// by the visible observable over the trailing block, trailing block linear
// and autonomous, observables = all monomials of the chosen degree over the
// trailing variables — then scrambled by a random unimodular integer matrix.
struct GeneratedSystem {
  ControlSystem system;        // scrambled coordinates
  Embedding embedding;         // scrambled coordinates
  ControlSystem base_system;   // split (pre-scramble) coordinates
  Embedding base_embedding;
  RatMatrix scramble;          // x_scrambled = scramble * x_base
  int designed_k = 0;          // leading block size by construction
  Polynomial visible_base;     // visible observable in base coordinates

  GeneratedSystem(ControlSystem sys, Embedding emb, ControlSystem base_sys,
                  Embedding base_emb, RatMatrix T0, int k, Polynomial q)
      : system(std::move(sys)), embedding(std::move(emb)),
        base_system(std::move(base_sys)), base_embedding(std::move(base_emb)),
        scramble(std::move(T0)), designed_k(k), visible_base(std::move(q)) {}
};

GeneratedSystem generate_random_balanced(std::uint64_t seed, int k, int n2, int deg);

}  // namespace superlin
