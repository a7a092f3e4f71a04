#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arbokt/ktcore.hpp"

namespace arbokt {

/// Ordered tree with a +1 or -1 coefficient.
struct SignedTree {
  int sign = 1;
  Node tree;
};

/// The element k_n[a_1..a_n]: a signed sum of all ordered binary trees with n leaves
/// decorated by a_1..a_n, kept in ordered (not canonical) form.
struct KnElement {
  std::vector<Gen> decorations;
  std::vector<SignedTree> terms;

  std::size_t n() const { return decorations.size(); }
  /// Sum of decoration degrees plus n - 1.
  int degree() const;
  /// Image in the quotient by the symmetry relations.
  TreeElement canonical(const RingPtr& ring) const;
};

/// Ordered binary trees with n leaves, built by splitting at the root into (j, n - j)
/// leaves for j = 1..n-1. Leaves carry Gen{1, i} in leaf order.
const std::vector<Node>& binary_trees(std::size_t n);

/// k_n by the recursion k_n = sum_j (-1)^{|k_j|} root(k_j, k_{n-j}), k_1 = |[a_1].
KnElement build_kn(const std::vector<Gen>& decorations);
/// k_n as sum over binary trees t of (-1)^{P(t)} t, P the total degree of left subtrees.
KnElement kn_closed_form(const std::vector<Gen>& decorations);
/// Tree differential of k_n: sum of (-1)^W times each inner-vertex merge, canonicalized.
TreeElement kn_boundary(const KnElement& k, const RingPtr& ring);

/// Elements of M (+) O are chains; the unit generator carries the O component.
/// mu_1 = -d, mu_2 = O-bilinear product plus psi on the binary tree, and for n >= 3 the
/// signed sum of psi over binary trees (zero as soon as an argument lies in O).
/// Arguments need not be homogeneous. Throws Error when psi is incomplete.
Chain mu(const PsiTable& psi, const std::vector<Chain>& args);
/// mu_n on generators via (-1)^{sum |a_r| (n - r)} psi(k_n[a]); module generators only.
Chain mu_via_kn(const PsiTable& psi, const std::vector<Gen>& args);

/// mu_2(a, mu_2(b, c)) - mu_2(mu_2(a, b), c).
Chain mu2_associator(const PsiTable& psi, const Chain& a, const Chain& b, const Chain& c);

/// Sum of (-1)^{i+jk} mu_{n-j+1}(id^i (x) mu_j (x) id^k) applied to the arguments, with
/// the Koszul sign for moving mu_j past a_1..a_i.
Chain ainfty_residual(const PsiTable& psi, const std::vector<Chain>& args);
/// Signed sum of mu_n over the shuffles of (a_1..a_i) with (a_{i+1}..a_n), each term
/// weighted by the ordinary signature times the Koszul signature.
Chain cinfty_residual(const PsiTable& psi, const std::vector<Chain>& args, std::size_t i);

struct RelationRow {
  std::string relation;  ///< "ainfty" or "cinfty"
  std::size_t n = 0;
  std::size_t i = 0;  ///< shuffle split for "cinfty", 0 otherwise
  std::size_t tuples = 0;
  std::size_t failures = 0;
  /// Arguments and residual of the first failure.
  std::string first_failure;
};

struct AInftyReport {
  std::vector<RelationRow> rows;
  /// Highest tree degree (sum of argument degrees plus n - 2) covered by the tuples.
  int degree_bound = 0;
  bool passed() const;
};

struct AInftyOptions {
  /// Random tuples mixing O elements and coefficients, per n.
  std::size_t random_tuples = 20;
  std::uint64_t seed = 1;
};

/// Higher associativity for n = 1..n_max on every tuple of unit and module generators
/// within the truncation, plus random O-mixed tuples.
AInftyReport verify_ainfty(const PsiTable& psi, std::size_t n_max, const AInftyOptions& opts = {});
/// Shuffle relations for n = 2..n_max and every split on every tuple of module
/// generators within the truncation.
AInftyReport verify_cinfty(const PsiTable& psi, std::size_t n_max);

/// Nonzero values of mu_n on tuples of module generators within the truncation.
struct MuValue {
  std::vector<Gen> args;
  Chain value;
};
std::vector<MuValue> nonzero_mu(const PsiTable& psi, std::size_t n);

}  // namespace arbokt
