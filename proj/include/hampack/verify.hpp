#pragma once

// Ground truth for packings: Hamiltonicity / disjointness checks and an exact
// exhaustive psi(D) for digraphs on at most 8 vertices.

#include "hampack/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hampack {

struct VerifyResult {
  bool hamiltonian_ok = true;
  bool disjoint_ok = true;
  bool subset_ok = true;
  bool count_ok = true;
  std::string witness; ///< first violation found, empty on success

  bool passed() const { return hamiltonian_ok && disjoint_ok && subset_ok && count_ok; }

  friend bool operator==(const VerifyResult&, const VerifyResult&) = default;
};

/// Every member spans all n vertices once and returns, members are pairwise
/// edge-disjoint, every edge lies in `d`, and there are exactly `delta_pm` members.
VerifyResult verify_packing(const Digraph& d, std::span<const Cycle> family, std::size_t delta_pm);

std::size_t delta_pm(const Digraph& d);

struct PsiResult {
  std::size_t psi = 0;
  std::vector<Cycle> family;
  std::size_t hamilton_cycles = 0; ///< number of directed Hamilton cycles in D
};

/// Exact maximum number of edge-disjoint Hamilton cycles. Throws SizeError for n > 8.
PsiResult brute_force_psi(const Digraph& d);

/// All directed Hamilton cycles of `d` in canonical form, ordered. n <= 8.
std::vector<Cycle> enumerate_hamilton_cycles(const Digraph& d);

} // namespace hampack
