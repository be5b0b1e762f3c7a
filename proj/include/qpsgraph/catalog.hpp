#pragma once

// The sphere graphs L_{2n+1}, the projective graphs F_n, the quotient and
// splitting maps between consecutive F's, and the projection classes.
// Vertices of F_n are always w1..w{n+1}; edge f_{ij}^m is label m of the
// class wi -> wj.

#include <cstdint>
#include <string>
#include <vector>

#include "qpsgraph/graph.hpp"
#include "qpsgraph/integer_matrix.hpp"
#include "qpsgraph/ktheory.hpp"
#include "qpsgraph/star_calculus.hpp"

namespace qpsgraph {

std::string sphere_vertex(int i);      // "v<i>"
std::string projective_vertex(int i);  // "w<i>"

// v1..v{n+1}, one edge vi -> vj for every i <= j.
Graph sphere_graph(int n);
// w1..w{n+1}, infinitely many edges wi -> wj for every i < j.
Graph projective_graph(int n);

// Shared, cached instances so elements built from them compare by pointer.
GraphPtr sphere_graph_ptr(int n);
GraphPtr projective_graph_ptr(int n);

// q_n : C*(F_n) -> C*(F_{n-1}); n >= 1.
GeneratorMap quotient_map(int n);
// s_n : C*(F_{n-1}) -> C*(F_n); n >= 1.
GeneratorMap splitting_map(int n);

struct ExtensionData {
  int n = 0;
  VertexId ideal_generator;
  GeneratorMap quotient;
  GeneratorMap splitting;
};

ExtensionData extension_data(int n);

// S_alpha S_beta^* in C*(F_n) for paths ending at w{n+1}; the image under
// j_n of a matrix unit of the ideal generated by w{n+1}.
Element matrix_unit_image(int n, const Path& alpha, const Path& beta);

// s_n o ... o s_{n-k} o j_{n-k-1} applied to P_{w_{n-k}}; 0 <= k <= n-1.
Element splitting_chain_image(int n, int k);

// P_{w_from} + ... + P_{w_{n+1}} in C*(F_n).
Element vertex_projection_sum(int n, int from);

// [P_l] in K_0(C*(F_n)): class of w{l+1}..w{n+1}; P_0 = 1 is every vertex.
K0Class projection_class(int n, int l);
// Row l holds the coordinates of [P_l], l = 0..n.
IntegerMatrix basis_change_matrix(int n);

}  // namespace qpsgraph
