#pragma once

// Truncated operator realizations of the sphere representations psi and pi,
// the graph representation rho, and residual checks of the relations they
// are meant to satisfy.
//
// Basis: multi-indices (k_1..k_n) with 0 <= k_i <= N, optionally followed by
// a winding index -M <= m <= M, in lexicographic order. Shifts that would
// leave the box are dropped.

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qpsgraph::numerics {

using Complex = std::complex<double>;
using Operator = Eigen::SparseMatrix<Complex>;
using DenseOperator = Eigen::MatrixXcd;

struct Truncation {
  int n = 1;
  int N = 2;
  int M = 0;  // 0: no winding index

  static Truncation without_winding(int n, int N);
  static Truncation with_winding(int n, int N, int M);

  bool has_winding() const { return M > 0; }
  std::size_t k_extent() const;  // (N+1)^n
  std::size_t dimension() const;

  std::size_t index(const std::vector<int>& k, int m = 0) const;
  // Inverse of index(); m is 0 without winding.
  void decode(std::size_t index, std::vector<int>& k, int& m) const;

  // All k_i <= N - margin and |m| <= M - margin.
  bool is_interior(std::size_t index, int margin) const;
};

enum class RepresentationKind { Psi, Pi, Rho };

struct RepresentationTable {
  RepresentationKind kind = RepresentationKind::Psi;
  Truncation trunc;
  double q = 0.0;  // unused for rho
  // psi, pi: "z0".."z<n>".
  // rho: "P_v<j>" for j = 1..n+1 and "S_e<i>_<j>" for 1 <= i <= j <= n+1.
  std::map<std::string, Operator> ops;

  const Operator& at(const std::string& name) const;
};

std::string z_name(int j);
std::string rho_vertex_name(int j);
std::string rho_edge_name(int i, int j);

// Throw PreconditionError unless 0 < q < 1, n >= 1 and N >= 2.
RepresentationTable rep_psi(int n, double q, int N);
// Require a truncation with winding (M >= 1).
RepresentationTable rep_rho(const Truncation& trunc);
RepresentationTable rep_pi(double q, const Truncation& trunc);

enum class RelationSet {
  // Sphere relations in the form the representation satisfies:
  //   z_i z_j = q^{-1} z_j z_i (i < j), z_j^* z_i = q z_i z_j^* (i != j),
  //   z_i^* z_i = z_i z_i^* + (1 - q^2) sum_{j>i} z_j z_j^*, sum z_j z_j^* = 1.
  Sphere,
  // The same list with the adjoint relation read as z_i z_j^* = q z_j^* z_i.
  SphereAsPrinted,
  // Relations (i)-(v) of the graph L_{2n+1} on a rho table.
  Graph,
  // p_ij = z_i^* z_j: sum_j p_ij p_jk = p_ik and p_ij^* = p_ji.
  ProjectionEntries,
  // The three commutation families of the p_ij.
  ProjectiveCommutation,
};

std::string relation_set_name(RelationSet set);

inline constexpr int kRelationMargin = 2;

struct ResidualEntry {
  std::string relation;
  double residual = 0.0;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  int margin = 0;
  std::size_t interior_vectors = 0;

  double max_residual() const;
  bool within(double tol) const { return max_residual() < tol; }
  void append(const ResidualReport& other);
};

// Max over interior basis vectors of ||(LHS - RHS) e||. Throws
// PreconditionError if margin < kRelationMargin, if the box has no interior
// vector, or if the relation set does not fit the table kind.
ResidualReport relation_residuals(const RepresentationTable& table, RelationSet set,
                                  int margin = kRelationMargin);

// q^{-2 steps} prod_{r=1}^{steps} (q^2 A - q^{2(r+1)}) / (1 - q^{2r}) with
// A = sum_{j=l}^{n} z_j z_j^*, on a psi or pi table. 1 <= l <= n, steps >= 1.
Operator projection_limit(int l, int steps, const RepresentationTable& table);

// Largest |entry| of projection_limit(l, steps, table) - projection_closed_form(l),
// ignoring rows and columns in the layer m = -M when the table has winding.
double limit_deviation(int l, int steps, const RepresentationTable& table);

// Diagonal 0/1 projection onto k_1 = ... = k_l = 0; l = 0 gives identity.
Operator projection_closed_form(int l, const Truncation& trunc);

// For l = 0..n compares the closed form for P_l with
// rho(P_{v_{l+1}} + ... + P_{v_{n+1}}) and with 1 - rho(P_{v_1} + ... + P_{v_l})
// (both exact), and for l >= 1 with projection_limit on rep_pi at
// steps = l*N. The limit rows skip the lowest winding layer m = -M, where
// the dropped shift of z_n^* cuts A.
ResidualReport check_rel_proj(int n, double q, const Truncation& trunc);
// Same comparisons on given rho and pi tables over one truncation.
ResidualReport check_rel_proj(const RepresentationTable& rho, const RepresentationTable& pi);

// ProjectionEntries (and, if requested, ProjectiveCommutation) on rep_psi.
ResidualReport cp_generator_check(int n, double q, int N, bool include_commutation = false);

DenseOperator to_dense(const Operator& op);
// Largest absolute entry of a - b.
double max_abs_difference(const Operator& a, const Operator& b);
double trace(const Operator& op);

}  // namespace qpsgraph::numerics
