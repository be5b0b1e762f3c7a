#include "qpsgraph/ktheory.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "qpsgraph/errors.hpp"

namespace qpsgraph {
namespace {

// Working state of the reduction: every row operation is mirrored on U (from
// the left) and, inverted, on U_inverse (from the right); column operations
// are mirrored on V.
struct Reducer {
  IntegerMatrix D;
  IntegerMatrix U;
  IntegerMatrix U_inverse;
  IntegerMatrix V;

  explicit Reducer(const IntegerMatrix& m)
      : D(m),
        U(IntegerMatrix::identity(m.rows())),
        U_inverse(IntegerMatrix::identity(m.rows())),
        V(IntegerMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    U_inverse.swap_cols(a, b);
  }
  void add_row(std::size_t target, std::size_t source, const BigInt& f) {
    D.add_row_multiple(target, source, f);
    U.add_row_multiple(target, source, f);
    U_inverse.add_col_multiple(source, target, -f);
  }
  void negate_row(std::size_t r) {
    D.negate_row(r);
    U.negate_row(r);
    U_inverse.negate_col(r);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }
  void add_col(std::size_t target, std::size_t source, const BigInt& f) {
    D.add_col_multiple(target, source, f);
    V.add_col_multiple(target, source, f);
  }

  // Least nonzero |entry| in the trailing block starting at (t, t).
  std::optional<std::pair<std::size_t, std::size_t>> least_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t r = t; r < D.rows(); ++r) {
      for (std::size_t c = t; c < D.cols(); ++c) {
        const BigInt& x = D(r, c);
        if (x == 0) continue;
        BigInt a = abs(x);
        if (!best || a < best_abs) {
          best = {r, c};
          best_abs = a;
        }
      }
    }
    return best;
  }

  // Least nonzero |entry| in row t or column t of the trailing block.
  std::pair<std::size_t, std::size_t> least_in_cross(std::size_t t) const {
    std::pair<std::size_t, std::size_t> best{t, t};
    BigInt best_abs = abs(D(t, t));
    for (std::size_t r = t + 1; r < D.rows(); ++r) {
      if (D(r, t) != 0 && abs(D(r, t)) < best_abs) {
        best = {r, t};
        best_abs = abs(D(r, t));
      }
    }
    for (std::size_t c = t + 1; c < D.cols(); ++c) {
      if (D(t, c) != 0 && abs(D(t, c)) < best_abs) {
        best = {t, c};
        best_abs = abs(D(t, c));
      }
    }
    return best;
  }

  void move_to(std::size_t t, std::pair<std::size_t, std::size_t> at) {
    swap_rows(t, at.first);
    swap_cols(t, at.second);
  }

  // Clears row t and column t outside the pivot. Returns false if a nonzero
  // remainder survived (a smaller pivot now exists in the cross).
  bool clear_cross(std::size_t t) {
    bool clean = true;
    const BigInt pivot = D(t, t);
    for (std::size_t r = t + 1; r < D.rows(); ++r) {
      if (D(r, t) == 0) continue;
      add_row(r, t, -(D(r, t) / pivot));
      if (D(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < D.cols(); ++c) {
      if (D(t, c) == 0) continue;
      add_col(c, t, -(D(t, c) / pivot));
      if (D(t, c) != 0) clean = false;
    }
    return clean;
  }

  // Row of the trailing block holding an entry not divisible by the pivot.
  std::optional<std::size_t> non_divisible_row(std::size_t t) const {
    const BigInt& pivot = D(t, t);
    for (std::size_t r = t + 1; r < D.rows(); ++r) {
      for (std::size_t c = t + 1; c < D.cols(); ++c) {
        if (D(r, c) % pivot != 0) return r;
      }
    }
    return std::nullopt;
  }

  void run() {
    const std::size_t limit = std::min(D.rows(), D.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      auto start = least_entry(t);
      if (!start) break;
      move_to(t, *start);
      for (;;) {
        if (!clear_cross(t)) {
          move_to(t, least_in_cross(t));
          continue;
        }
        if (auto r = non_divisible_row(t)) {
          add_row(t, *r, 1);
          continue;
        }
        break;
      }
      if (D(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t limit = std::min(D.rows(), D.cols());
  while (r < limit && D(r, r) != 0) ++r;
  return r;
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
  std::vector<BigInt> out;
  const std::size_t limit = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < limit; ++i) out.push_back(D(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  Reducer reducer(m);
  reducer.run();
  return SmithDecomposition{std::move(reducer.U), std::move(reducer.D),
                            std::move(reducer.V), std::move(reducer.U_inverse)};
}

std::string AbelianGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) {
    parts.emplace_back("Z");
  } else if (free_rank > 1) {
    parts.push_back("Z^" + std::to_string(free_rank));
  }
  for (const auto& t : torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " (+) " + parts[i];
  return out;
}

AbelianGroup cokernel_group(const SmithDecomposition& snf) {
  AbelianGroup g;
  const std::size_t rank = snf.rank();
  g.free_rank = snf.D.rows() - rank;
  for (std::size_t i = 0; i < rank; ++i) {
    if (snf.D(i, i) > 1) g.torsion.push_back(snf.D(i, i));
  }
  return g;
}

AbelianGroup kernel_group(const SmithDecomposition& snf) {
  return AbelianGroup{snf.D.cols() - snf.rank(), {}};
}

IntegerMatrix k_map(const Graph& graph) {
  const auto regular = regular_vertices(graph);
  IntegerMatrix m(graph.vertex_count(), regular.size());
  for (std::size_t col = 0; col < regular.size(); ++col) {
    const VertexIndex v = regular[col];
    for (const auto& e : graph.out_edges(v)) {
      m(e.target, col) += BigInt(e.multiplicity.count());
    }
    m(v, col) -= 1;
  }
  return m;
}

KGroups k_groups(const Graph& graph) {
  const auto snf = smith_normal_form(k_map(graph));
  return KGroups{cokernel_group(snf), kernel_group(snf)};
}

bool K0Class::is_zero() const {
  auto zero = [](const BigInt& x) { return x == 0; };
  return std::all_of(free.begin(), free.end(), zero) &&
         std::all_of(torsion.begin(), torsion.end(), zero);
}

K0Class K0Class::operator+(const K0Class& other) const {
  if (free.size() != other.free.size() || moduli != other.moduli) {
    throw PreconditionError("adding K0 classes from different groups");
  }
  K0Class out = *this;
  for (std::size_t i = 0; i < free.size(); ++i) out.free[i] += other.free[i];
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    out.torsion[i] = (out.torsion[i] + other.torsion[i]) % moduli[i];
  }
  return out;
}

std::string K0Class::to_string() const {
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (const auto& x : free) {
    out << (first ? "" : ", ") << x;
    first = false;
  }
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    out << (first ? "" : ", ") << torsion[i] << " mod " << moduli[i];
    first = false;
  }
  out << ')';
  return out.str();
}

K0Coordinates::K0Coordinates(const Graph& graph)
    : graph_(graph), snf_(smith_normal_form(k_map(graph))) {
  const std::size_t rank = snf_.rank();
  for (std::size_t i = 0; i < rank; ++i) {
    if (snf_.D(i, i) > 1) torsion_rows_.push_back(i);
  }
  for (std::size_t i = rank; i < snf_.D.rows(); ++i) free_rows_.push_back(i);
}

K0Class K0Coordinates::class_of(const std::vector<BigInt>& vertex_coefficients) const {
  if (vertex_coefficients.size() != graph_.vertex_count()) {
    throw PreconditionError("coefficient vector does not match the vertex count");
  }
  // x + im(M) maps to U x + im(D).
  const auto y = snf_.U * vertex_coefficients;
  K0Class out;
  for (auto r : free_rows_) out.free.push_back(y[r]);
  for (auto r : torsion_rows_) {
    const BigInt& d = snf_.D(r, r);
    BigInt residue = y[r] % d;
    if (residue < 0) residue += d;
    out.torsion.push_back(residue);
    out.moduli.push_back(d);
  }
  return out;
}

K0Class K0Coordinates::class_of(const std::vector<VertexId>& vertex_sum) const {
  std::vector<BigInt> coefficients(graph_.vertex_count());
  for (const auto& name : vertex_sum) coefficients[graph_.index_of(name)] += 1;
  return class_of(coefficients);
}

IntegerMatrix K0Coordinates::basis() const {
  std::vector<std::size_t> rows = free_rows_;
  rows.insert(rows.end(), torsion_rows_.begin(), torsion_rows_.end());
  IntegerMatrix out(graph_.vertex_count(), rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, j) = snf_.U_inverse(i, rows[j]);
  }
  return out;
}

K0Class class_in_k0(const Graph& graph, const std::vector<VertexId>& vertex_sum) {
  return K0Coordinates(graph).class_of(vertex_sum);
}

}  // namespace qpsgraph
