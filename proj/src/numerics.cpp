#include "qpsgraph/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qpsgraph/errors.hpp"

namespace qpsgraph::numerics {
namespace {

using Triplet = Eigen::Triplet<Complex>;

void require_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("q must lie in (0, 1)");
}

Operator from_triplets(std::size_t dim, const std::vector<Triplet>& t) {
  Operator op(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  op.setFromTriplets(t.begin(), t.end());
  op.makeCompressed();
  return op;
}

Operator identity(std::size_t dim) {
  Operator id(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  id.setIdentity();
  return id;
}

Operator adj(const Operator& a) { return Operator(a.adjoint()); }

// Builds an operator column by column: `image` receives the decoded basis
// vector and returns (target index, coefficient) or a zero coefficient.
Operator build(const Truncation& t,
               const std::function<bool(std::vector<int>&, int&, double&)>& image) {
  std::vector<Triplet> triplets;
  std::vector<int> k;
  int m = 0;
  for (std::size_t c = 0; c < t.dimension(); ++c) {
    t.decode(c, k, m);
    double weight = 1.0;
    if (!image(k, m, weight) || weight == 0.0) continue;
    bool inside = std::all_of(k.begin(), k.end(), [&](int x) { return x >= 0 && x <= t.N; });
    if (t.has_winding()) inside = inside && m >= -t.M && m <= t.M;
    if (!inside) continue;
    triplets.emplace_back(static_cast<Eigen::Index>(t.index(k, m)),
                          static_cast<Eigen::Index>(c), Complex(weight, 0.0));
  }
  return from_triplets(t.dimension(), triplets);
}

int partial_sum(const std::vector<int>& k, int upto) {
  return std::accumulate(k.begin(), k.begin() + upto, 0);
}

bool zero_prefix(const std::vector<int>& k, int len) {
  return std::all_of(k.begin(), k.begin() + len, [](int x) { return x == 0; });
}

// z_0 .. z_{n-1} of psi; z_n is left to the caller.
void lower_sphere_generators(RepresentationTable& table) {
  const Truncation& t = table.trunc;
  const double q = table.q;
  table.ops[z_name(0)] = build(t, [q](std::vector<int>& k, int&, double& w) {
    w = std::sqrt(1.0 - std::pow(q, 2.0 * (k[0] + 1)));
    k[0] += 1;
    return true;
  });
  for (int j = 1; j < t.n; ++j) {
    table.ops[z_name(j)] = build(t, [q, j](std::vector<int>& k, int&, double& w) {
      w = std::pow(q, partial_sum(k, j)) * std::sqrt(1.0 - std::pow(q, 2.0 * (k[j] + 1)));
      k[j] += 1;
      return true;
    });
  }
}

double interior_norm_max(const Operator& d, const std::vector<char>& interior) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
    if (!interior[static_cast<std::size_t>(c)]) continue;
    double sq = 0.0;
    for (Operator::InnerIterator it(d, c); it; ++it) sq += std::norm(it.value());
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

struct Family {
  std::string name;
  double residual = 0.0;
};

class ResidualAccumulator {
 public:
  ResidualAccumulator(const Truncation& t, int margin) : interior_(t.dimension()) {
    for (std::size_t i = 0; i < t.dimension(); ++i) {
      interior_[i] = t.is_interior(i, margin) ? 1 : 0;
      count_ += interior_[i];
    }
    if (count_ == 0) throw PreconditionError("truncation has no interior vectors at this margin");
    report_.margin = margin;
    report_.interior_vectors = count_;
  }

  void add(const std::string& family, const Operator& difference) {
    const double r = interior_norm_max(difference, interior_);
    for (auto& e : report_.entries) {
      if (e.relation == family) {
        e.residual = std::max(e.residual, r);
        return;
      }
    }
    report_.entries.push_back({family, r});
  }

  ResidualReport take() { return std::move(report_); }

 private:
  std::vector<char> interior_;
  std::size_t count_ = 0;
  ResidualReport report_;
};

std::vector<Operator> z_ops(const RepresentationTable& table) {
  std::vector<Operator> z;
  for (int j = 0; j <= table.trunc.n; ++j) z.push_back(table.at(z_name(j)));
  return z;
}

void sphere_relations(const RepresentationTable& table, bool as_printed,
                      ResidualAccumulator& acc) {
  const auto z = z_ops(table);
  const int n = table.trunc.n;
  const double q = table.q;
  std::vector<Operator> zs;
  std::vector<Operator> zz;  // z_j z_j^*
  for (const auto& x : z) {
    zs.push_back(adj(x));
    zz.push_back(Operator(x * zs.back()));
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      acc.add("z_i z_j = q^-1 z_j z_i (i<j)", Operator(z[i] * z[j] - (1.0 / q) * (z[j] * z[i])));
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      if (as_printed) {
        acc.add("z_i z_j^* = q z_j^* z_i (i!=j)", Operator(z[i] * zs[j] - q * (zs[j] * z[i])));
      } else {
        acc.add("z_j^* z_i = q z_i z_j^* (i!=j)", Operator(zs[j] * z[i] - q * (z[i] * zs[j])));
      }
    }
  }
  for (int i = 0; i <= n; ++i) {
    Operator tail(zz[0].rows(), zz[0].cols());
    for (int j = i + 1; j <= n; ++j) tail += zz[j];
    acc.add("z_i^* z_i = z_i z_i^* + (1-q^2) sum_{j>i} z_j z_j^*",
            Operator(zs[i] * z[i] - zz[i] - (1.0 - q * q) * tail));
  }
  Operator total(zz[0].rows(), zz[0].cols());
  for (const auto& x : zz) total += x;
  acc.add("sum_j z_j z_j^* = 1", Operator(total - identity(table.trunc.dimension())));
}

void graph_relations(const RepresentationTable& table, ResidualAccumulator& acc) {
  const int v = table.trunc.n + 1;
  struct Edge {
    int source;
    int target;
    Operator s;
    Operator s_adj;
  };
  std::vector<Operator> p;
  for (int j = 1; j <= v; ++j) p.push_back(table.at(rho_vertex_name(j)));
  std::vector<Edge> edges;
  for (int i = 1; i <= v; ++i) {
    for (int j = i; j <= v; ++j) {
      const Operator& s = table.at(rho_edge_name(i, j));
      edges.push_back({i, j, s, adj(s)});
    }
  }
  for (int a = 0; a < v; ++a) {
    acc.add("projection", Operator(p[a] * p[a] - p[a]));
    acc.add("projection", Operator(adj(p[a]) - p[a]));
    for (int b = 0; b < v; ++b) {
      if (a != b) acc.add("(i) P_v P_w = 0", Operator(p[a] * p[b]));
    }
  }
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = 0; b < edges.size(); ++b) {
      if (a != b) acc.add("(ii) S_e^* S_f = 0", Operator(edges[a].s_adj * edges[b].s));
    }
    const Edge& e = edges[a];
    acc.add("(iii) S_e^* S_e = P_r(e)", Operator(e.s_adj * e.s - p[e.target - 1]));
    const Operator range = e.s * e.s_adj;
    acc.add("(iv) P_s(e) S_e S_e^* = S_e S_e^*", Operator(p[e.source - 1] * range - range));
  }
  for (int a = 1; a <= v; ++a) {
    Operator sum(p[0].rows(), p[0].cols());
    for (const auto& e : edges) {
      if (e.source == a) sum += Operator(e.s * e.s_adj);
    }
    acc.add("(v) P_v = sum S_e S_e^*", Operator(p[a - 1] - sum));
  }
}

std::vector<std::vector<Operator>> p_entries(const RepresentationTable& table) {
  const auto z = z_ops(table);
  std::vector<std::vector<Operator>> p(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Operator zi_adj = adj(z[i]);
    for (std::size_t j = 0; j < z.size(); ++j) p[i].push_back(Operator(zi_adj * z[j]));
  }
  return p;
}

int sgn(int x) { return (x > 0) - (x < 0); }

void projection_entry_relations(const RepresentationTable& table, ResidualAccumulator& acc) {
  const auto p = p_entries(table);
  const int n = table.trunc.n;
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= n; ++k) {
      Operator sum(p[0][0].rows(), p[0][0].cols());
      for (int j = 0; j <= n; ++j) sum += Operator(p[i][j] * p[j][k]);
      acc.add("sum_j p_ij p_jk = p_ik", Operator(sum - p[i][k]));
      acc.add("p_ij^* = p_ji", Operator(adj(p[i][k]) - p[k][i]));
    }
  }
}

void commutation_relations(const RepresentationTable& table, ResidualAccumulator& acc) {
  const auto p = p_entries(table);
  const int n = table.trunc.n;
  const double q = table.q;
  const Eigen::Index dim = p[0][0].rows();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= n; ++l) {
          if (i == l || j == k) continue;
          const double c = std::pow(q, sgn(k - i) + sgn(j - l));
          acc.add("p_ij p_kl = q^(sgn(k-i)+sgn(j-l)) p_kl p_ij",
                  Operator(p[i][j] * p[k][l] - c * (p[k][l] * p[i][j])));
        }
      }
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= n; ++k) {
        if (i == k) continue;
        const double c = std::pow(q, sgn(j - i) + sgn(j - k) + 1);
        Operator tail(dim, dim);
        for (int l = j + 1; l <= n; ++l) tail += Operator(p[i][l] * p[l][k]);
        acc.add("p_ij p_jk (i!=k)",
                Operator(p[i][j] * p[j][k] - c * (p[j][k] * p[i][j]) + (1.0 - q * q) * tail));
      }
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double c = std::pow(q, 2 * sgn(j - i));
      Operator first(dim, dim);
      for (int l = i + 1; l <= n; ++l) first += Operator(p[j][l] * p[l][j]);
      Operator second(dim, dim);
      for (int l = j + 1; l <= n; ++l) second += Operator(p[i][l] * p[l][i]);
      acc.add("p_ij p_ji (i!=j)",
              Operator(p[i][j] * p[j][i] - c * (p[j][i] * p[i][j]) -
                       (1.0 - q * q) * (c * first - second)));
    }
  }
}

}  // namespace

Truncation Truncation::without_winding(int n, int N) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (N < 2) throw PreconditionError("cutoff N must be at least 2");
  return Truncation{n, N, 0};
}

Truncation Truncation::with_winding(int n, int N, int M) {
  Truncation t = without_winding(n, N);
  if (M < 1) throw PreconditionError("winding cutoff M must be at least 1");
  t.M = M;
  return t;
}

std::size_t Truncation::k_extent() const {
  std::size_t out = 1;
  for (int i = 0; i < n; ++i) out *= static_cast<std::size_t>(N + 1);
  return out;
}

std::size_t Truncation::dimension() const {
  return k_extent() * (has_winding() ? static_cast<std::size_t>(2 * M + 1) : 1);
}

std::size_t Truncation::index(const std::vector<int>& k, int m) const {
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) idx = idx * static_cast<std::size_t>(N + 1) + static_cast<std::size_t>(k[i]);
  if (has_winding()) idx = idx * static_cast<std::size_t>(2 * M + 1) + static_cast<std::size_t>(m + M);
  return idx;
}

void Truncation::decode(std::size_t idx, std::vector<int>& k, int& m) const {
  m = 0;
  if (has_winding()) {
    const auto w = static_cast<std::size_t>(2 * M + 1);
    m = static_cast<int>(idx % w) - M;
    idx /= w;
  }
  k.assign(static_cast<std::size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    k[i] = static_cast<int>(idx % static_cast<std::size_t>(N + 1));
    idx /= static_cast<std::size_t>(N + 1);
  }
}

bool Truncation::is_interior(std::size_t idx, int margin) const {
  std::vector<int> k;
  int m = 0;
  decode(idx, k, m);
  if (std::any_of(k.begin(), k.end(), [&](int x) { return x > N - margin; })) return false;
  return !has_winding() || std::abs(m) <= M - margin;
}

const Operator& RepresentationTable::at(const std::string& name) const {
  auto it = ops.find(name);
  if (it == ops.end()) throw PreconditionError("representation has no operator " + name);
  return it->second;
}

std::string z_name(int j) { return "z" + std::to_string(j); }
std::string rho_vertex_name(int j) { return "P_v" + std::to_string(j); }
std::string rho_edge_name(int i, int j) {
  return "S_e" + std::to_string(i) + "_" + std::to_string(j);
}

RepresentationTable rep_psi(int n, double q, int N) {
  require_q(q);
  RepresentationTable table;
  table.kind = RepresentationKind::Psi;
  table.trunc = Truncation::without_winding(n, N);
  table.q = q;
  lower_sphere_generators(table);
  table.ops[z_name(n)] = build(table.trunc, [q, n](std::vector<int>& k, int&, double& w) {
    w = std::pow(q, partial_sum(k, n));
    return true;
  });
  return table;
}

RepresentationTable rep_pi(double q, const Truncation& trunc) {
  require_q(q);
  if (!trunc.has_winding()) throw PreconditionError("pi needs a winding cutoff M >= 1");
  RepresentationTable table;
  table.kind = RepresentationKind::Pi;
  table.trunc = Truncation::with_winding(trunc.n, trunc.N, trunc.M);
  table.q = q;
  lower_sphere_generators(table);
  const int n = trunc.n;
  table.ops[z_name(n)] = build(table.trunc, [q, n](std::vector<int>& k, int& m, double& w) {
    w = std::pow(q, partial_sum(k, n));
    m += 1;
    return true;
  });
  return table;
}

RepresentationTable rep_rho(const Truncation& trunc) {
  if (!trunc.has_winding()) throw PreconditionError("rho needs a winding cutoff M >= 1");
  RepresentationTable table;
  table.kind = RepresentationKind::Rho;
  table.trunc = Truncation::with_winding(trunc.n, trunc.N, trunc.M);
  const Truncation& t = table.trunc;
  const int n = t.n;
  // Support of P_{v_j}: k_1..k_{j-1} = 0 and k_j != 0 (j <= n); k = 0 for j = n+1.
  auto support = [n](const std::vector<int>& k, int j) {
    if (j == n + 1) return zero_prefix(k, n);
    return zero_prefix(k, j - 1) && k[j - 1] != 0;
  };
  for (int j = 1; j <= n + 1; ++j) {
    table.ops[rho_vertex_name(j)] = build(t, [support, j](std::vector<int>& k, int&, double&) {
      return support(k, j);
    });
  }
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i; j <= n + 1; ++j) {
      table.ops[rho_edge_name(i, j)] =
          build(t, [support, i, j, n](std::vector<int>& k, int& m, double&) {
            if (!support(k, j)) return false;
            if (i == n + 1) {
              m += 1;
            } else {
              k[i - 1] += 1;
            }
            return true;
          });
    }
  }
  return table;
}

std::string relation_set_name(RelationSet set) {
  switch (set) {
    case RelationSet::Sphere: return "sphere";
    case RelationSet::SphereAsPrinted: return "sphere-as-printed";
    case RelationSet::Graph: return "graph";
    case RelationSet::ProjectionEntries: return "projection-entries";
    case RelationSet::ProjectiveCommutation: return "projective-commutation";
  }
  return "?";
}

double ResidualReport::max_residual() const {
  double worst = 0.0;
  for (const auto& e : entries) worst = std::max(worst, e.residual);
  return worst;
}

void ResidualReport::append(const ResidualReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  margin = std::max(margin, other.margin);
  interior_vectors = std::max(interior_vectors, other.interior_vectors);
}

ResidualReport relation_residuals(const RepresentationTable& table, RelationSet set,
                                  int margin) {
  if (margin < kRelationMargin) {
    throw PreconditionError("margin " + std::to_string(margin) + " is below the shift degree " +
                            std::to_string(kRelationMargin) + " of the relations");
  }
  const bool sphere_kind =
      table.kind == RepresentationKind::Psi || table.kind == RepresentationKind::Pi;
  if ((set == RelationSet::Graph) == sphere_kind) {
    throw PreconditionError("relation set " + relation_set_name(set) +
                            " does not apply to this representation");
  }
  ResidualAccumulator acc(table.trunc, margin);
  switch (set) {
    case RelationSet::Sphere: sphere_relations(table, false, acc); break;
    case RelationSet::SphereAsPrinted: sphere_relations(table, true, acc); break;
    case RelationSet::Graph: graph_relations(table, acc); break;
    case RelationSet::ProjectionEntries: projection_entry_relations(table, acc); break;
    case RelationSet::ProjectiveCommutation: commutation_relations(table, acc); break;
  }
  return acc.take();
}

Operator projection_limit(int l, int steps, const RepresentationTable& table) {
  if (table.kind == RepresentationKind::Rho) {
    throw PreconditionError("projection_limit needs a psi or pi table");
  }
  const int n = table.trunc.n;
  if (l < 1 || l > n) throw PreconditionError("l must lie in [1, n]");
  if (steps < 1) throw PreconditionError("steps must be at least 1");
  const double q = table.q;
  const std::size_t dim = table.trunc.dimension();
  Operator a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (int j = l; j <= n; ++j) {
    const Operator& z = table.at(z_name(j));
    a += Operator(z * adj(z));
  }
  const Operator id = identity(dim);
  Operator result = id;
  // q^{-2} is folded into each factor: (A - q^{2r}) / (1 - q^{2r}).
  for (int r = 1; r <= steps; ++r) {
    const double q2r = std::pow(q, 2.0 * r);
    result = Operator(result * Operator((a - q2r * id) / (1.0 - q2r)));
    result.prune(Complex(0.0, 0.0));
  }
  return result;
}

Operator projection_closed_form(int l, const Truncation& trunc) {
  if (l < 0 || l > trunc.n) throw PreconditionError("l must lie in [0, n]");
  return build(trunc, [l](std::vector<int>& k, int&, double&) { return zero_prefix(k, l); });
}

namespace {

double restricted_difference(const Operator& a, const Operator& b, const Truncation& t) {
  const Operator d = a - b;
  double worst = 0.0;
  std::vector<int> k;
  int m_row = 0;
  int m_col = 0;
  for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
    t.decode(static_cast<std::size_t>(c), k, m_col);
    if (t.has_winding() && m_col == -t.M) continue;
    for (Operator::InnerIterator it(d, c); it; ++it) {
      t.decode(static_cast<std::size_t>(it.row()), k, m_row);
      if (t.has_winding() && m_row == -t.M) continue;
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

}  // namespace

double limit_deviation(int l, int steps, const RepresentationTable& table) {
  return restricted_difference(projection_limit(l, steps, table),
                               projection_closed_form(l, table.trunc), table.trunc);
}

ResidualReport check_rel_proj(int n, double q, const Truncation& trunc) {
  require_q(q);
  if (trunc.n != n) throw PreconditionError("truncation dimension does not match n");
  const Truncation t = Truncation::with_winding(n, trunc.N, trunc.M);
  return check_rel_proj(rep_rho(t), rep_pi(q, t));
}

ResidualReport check_rel_proj(const RepresentationTable& rho, const RepresentationTable& pi) {
  if (rho.kind != RepresentationKind::Rho || pi.kind != RepresentationKind::Pi) {
    throw PreconditionError("check_rel_proj needs a rho table and a pi table");
  }
  const Truncation& t = rho.trunc;
  if (pi.trunc.n != t.n || pi.trunc.N != t.N || pi.trunc.M != t.M) {
    throw PreconditionError("rho and pi tables use different truncations");
  }
  const int n = t.n;
  const Operator id = identity(t.dimension());
  ResidualReport report;
  for (int l = 0; l <= n; ++l) {
    const Operator closed = projection_closed_form(l, t);
    Operator tail(closed.rows(), closed.cols());
    for (int i = l + 1; i <= n + 1; ++i) tail += rho.at(rho_vertex_name(i));
    Operator head(closed.rows(), closed.cols());
    for (int i = 1; i <= l; ++i) head += rho.at(rho_vertex_name(i));
    const std::string tag = "P_" + std::to_string(l);
    report.entries.push_back({tag + " = rho(P_v" + std::to_string(l + 1) + "+...+P_v" +
                                  std::to_string(n + 1) + ")",
                              max_abs_difference(closed, tail)});
    report.entries.push_back({tag + " = 1 - rho(P_v1+...+P_v" + std::to_string(l) + ")",
                              max_abs_difference(closed, Operator(id - head))});
    if (l >= 1) {
      report.entries.push_back({tag + " limit at steps = l*N", limit_deviation(l, l * t.N, pi)});
    }
  }
  return report;
}

ResidualReport cp_generator_check(int n, double q, int N, bool include_commutation) {
  const RepresentationTable psi = rep_psi(n, q, N);
  ResidualReport report = relation_residuals(psi, RelationSet::ProjectionEntries);
  if (include_commutation) {
    report.append(relation_residuals(psi, RelationSet::ProjectiveCommutation));
  }
  return report;
}

DenseOperator to_dense(const Operator& op) { return DenseOperator(op); }

double max_abs_difference(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw PreconditionError("operator dimensions differ");
  }
  const Operator d = a - b;
  double worst = 0.0;
  for (Eigen::Index c = 0; c < d.outerSize(); ++c) {
    for (Operator::InnerIterator it(d, c); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

double trace(const Operator& op) {
  double t = 0.0;
  for (Eigen::Index c = 0; c < op.outerSize(); ++c) {
    for (Operator::InnerIterator it(op, c); it; ++it) {
      if (it.row() == c) t += it.value().real();
    }
  }
  return t;
}

}  // namespace qpsgraph::numerics
