#pragma once

// K-theory of graph C*-algebras. For a graph E with regular vertices V_E the
// map K_E : Z^{V_E} -> Z^{E^0} sends a regular vertex v to
// (sum of ranges of edges leaving v) - v; K_0 is its cokernel and K_1 its
// kernel. Both are read off a Smith normal form.

#include <cstddef>
#include <string>
#include <vector>

#include "qpsgraph/graph.hpp"
#include "qpsgraph/integer_matrix.hpp"

namespace qpsgraph {

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
// U_inverse is tracked alongside U; its columns give the cokernel basis.
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
  IntegerMatrix U_inverse;

  std::size_t rank() const;
  // Diagonal entries d_1..d_min(rows, cols), zeros included.
  std::vector<BigInt> diagonal() const;
};

// Elementary row/column reduction, always pivoting on an entry of least
// nonzero absolute value to keep coefficients small.
SmithDecomposition smith_normal_form(const IntegerMatrix& m);

// Finitely generated abelian group Z^free_rank (+) Z/t_1 (+) ... with
// 1 < t_1 | t_2 | ...
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroup&) const = default;

  // "0", "Z", "Z^4", "Z/2", "Z^2 (+) Z/3 (+) Z/6".
  std::string to_string() const;
};

AbelianGroup cokernel_group(const SmithDecomposition& snf);
AbelianGroup kernel_group(const SmithDecomposition& snf);

// Rows follow the graph's vertex order, columns its regular vertices in
// vertex order. Infinite emitters and sinks contribute no column.
IntegerMatrix k_map(const Graph& graph);

struct KGroups {
  AbelianGroup k0;
  AbelianGroup k1;
};

KGroups k_groups(const Graph& graph);

// Coordinates of an element of K_0 in the cokernel basis fixed by the Smith
// decomposition: one integer per free generator, and one residue per torsion
// generator reduced into [0, modulus).
struct K0Class {
  std::vector<BigInt> free;
  std::vector<BigInt> torsion;
  std::vector<BigInt> moduli;

  bool is_zero() const;
  K0Class operator+(const K0Class& other) const;
  bool operator==(const K0Class&) const = default;
  std::string to_string() const;
};

// Cokernel coordinates for one graph. Reuses a single decomposition so all
// classes are expressed in the same basis.
class K0Coordinates {
 public:
  explicit K0Coordinates(const Graph& graph);

  const Graph& graph() const { return graph_; }
  const SmithDecomposition& decomposition() const { return snf_; }
  AbelianGroup group() const { return cokernel_group(snf_); }

  // Class of sum_v c_v [P_v] given integer coefficients in vertex order.
  K0Class class_of(const std::vector<BigInt>& vertex_coefficients) const;
  // Class of the sum of vertex projections of a multiset of vertices.
  // Throws GraphError for unknown vertex names.
  K0Class class_of(const std::vector<VertexId>& vertex_sum) const;

  // Columns are the basis elements of Z^{E^0} whose images generate the free
  // part, then the torsion part, of the cokernel.
  IntegerMatrix basis() const;

 private:
  Graph graph_;
  SmithDecomposition snf_;
  std::vector<std::size_t> free_rows_;
  std::vector<std::size_t> torsion_rows_;
};

K0Class class_in_k0(const Graph& graph, const std::vector<VertexId>& vertex_sum);

}  // namespace qpsgraph
