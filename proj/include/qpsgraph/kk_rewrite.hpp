#pragma once

// Formal KK-classes as integer combinations of chains of generator arrows,
// with a rewriting normalizer that reproduces the split-exact identities.
//
// Chains are written in Kasparov order: the chain (a, b) is a (x) b, i.e.
// first a, then b. (s(n), q(n)) is therefore the class of q_n o s_n.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qpsgraph::kk {

// CP(n) for n >= 1, C (also CP(0)), K.
struct Atom {
  enum class Kind { CP, C, K };
  Kind kind = Kind::C;
  int n = 0;

  static Atom cp(int n);  // cp(0) is C
  static Atom c() { return Atom{Kind::C, 0}; }
  static Atom k() { return Atom{Kind::K, 0}; }

  auto operator<=>(const Atom&) const = default;
  std::string to_string() const;
};

struct Arrow {
  enum class Tag { J, Q, S, Pi, Phi, Mor };
  Tag tag = Tag::J;
  int n = 0;  // 0 for phi and mor

  static Arrow j(int n);    // K -> CP(n)
  static Arrow q(int n);    // CP(n) -> CP(n-1)
  static Arrow s(int n);    // CP(n-1) -> CP(n)
  static Arrow pi(int n);   // CP(n) -> K
  static Arrow phi();       // C -> K
  static Arrow mor();       // K -> C

  Atom domain() const;
  Atom codomain() const;

  auto operator<=>(const Arrow&) const = default;
  std::string to_string() const;
};

using Word = std::vector<Arrow>;

// An empty word is the identity of `domain` (== codomain).
struct Chain {
  Atom domain;
  Atom codomain;
  Word arrows;

  static Chain identity(Atom a) { return Chain{a, a, {}}; }
  // Throws PreconditionError when the arrows do not compose.
  static Chain of(Word arrows);

  bool is_identity() const { return arrows.empty(); }
  // this, then next.
  Chain then(const Chain& next) const;

  auto operator<=>(const Chain&) const = default;
  std::string to_string() const;
};

class FormalSum {
 public:
  FormalSum(Atom domain, Atom codomain) : domain_(domain), codomain_(codomain) {}
  static FormalSum of(const Chain& c, long long coefficient = 1);
  static FormalSum identity(Atom a) { return of(Chain::identity(a)); }

  const Atom& domain() const { return domain_; }
  const Atom& codomain() const { return codomain_; }
  // Keyed by word; no zero coefficients.
  const std::map<Word, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t total_length() const;

  void add(const Word& w, long long coefficient);
  FormalSum operator+(const FormalSum& other) const;
  // this, then next (bilinear).
  FormalSum then(const FormalSum& next) const;

  bool operator==(const FormalSum&) const = default;
  std::string to_string() const;

 private:
  Atom domain_;
  Atom codomain_;
  std::map<Word, long long> terms_;
};

// Entry (i, j) goes from domain atom j to codomain atom i.
class SumMatrix {
 public:
  SumMatrix() = default;
  SumMatrix(std::vector<Atom> domain, std::vector<Atom> codomain);

  static SumMatrix identity(const std::vector<Atom>& objects);
  // Square diagonal matrix with the given chains.
  static SumMatrix diagonal(const std::vector<Chain>& chains);
  static SumMatrix column(Atom domain, const std::vector<Chain>& entries);
  static SumMatrix row(Atom codomain, const std::vector<Chain>& entries);

  const std::vector<Atom>& domain() const { return domain_; }
  const std::vector<Atom>& codomain() const { return codomain_; }
  std::size_t rows() const { return codomain_.size(); }
  std::size_t cols() const { return domain_.size(); }

  const FormalSum& at(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
  void set(std::size_t i, std::size_t j, FormalSum value);

  bool operator==(const SumMatrix&) const = default;
  std::string to_string() const;

 private:
  std::vector<Atom> domain_;
  std::vector<Atom> codomain_;
  std::vector<FormalSum> entries_;
};

// a, then b; requires a.codomain() == b.domain().
SumMatrix product(const SumMatrix& a, const SumMatrix& b);

struct RewriteStep {
  std::string rule;   // "R1".."R5"
  std::string entry;  // "(i,j)" for matrix entries, empty otherwise
  std::string before;
  std::string after;
};

using Trace = std::vector<RewriteStep>;

struct NormalizeStats {
  std::size_t rewrites = 0;
  std::size_t outer_iterations = 0;
  bool hit_cap = false;
};

// Rules, each applied to one chain (R1-R3, R5) or a pair of chains (R4):
//   R1  (s(n), q(n))            -> identity
//   R2  (j(n), pi(n))           -> identity
//   R3  (phi, mor) -> id_C,  (mor, phi) -> id_K
//   R4  X(pi(n), j(n))Y + X(q(n), s(n))Y -> XY
//   R5  (j(n), q(n)) -> 0,  (s(n), pi(n)) -> 0
// Strategy: leftmost single-chain rewrites to a fixpoint, then one R4 step
// found by exhaustive pair search; repeated at most 10 * (term count) times.
FormalSum normalize(const FormalSum& sum, Trace* trace = nullptr,
                    const std::string& entry = "", NormalizeStats* stats = nullptr);
SumMatrix normalize(const SumMatrix& m, Trace* trace = nullptr,
                    NormalizeStats* stats = nullptr);

// K^n (+) C in the order K, ..., K, C.
std::vector<Atom> k_sum_object(int n);

// Pi_n : CP(n) -> K^n (+) C. Row t < n is (q(n), ..., q(n-t+1), pi(n-t)),
// row n is (q(n), ..., q(1)).
SumMatrix build_Pi(int n);
// I_n : K^n (+) C -> CP(n). Column t < n is (j(n-t), s(n-t+1), ..., s(n)),
// column n is (s(1), ..., s(n)).
SumMatrix build_I(int n);

struct EquivalenceReport {
  bool passed = false;
  int n = 0;
  SumMatrix left;   // normalize(I_n then Pi_n), expected identity of K^n (+) C
  SumMatrix right;  // normalize(Pi_n then I_n), expected identity of CP(n)
  Trace left_trace;
  Trace right_trace;
  std::vector<std::string> rules_used;

  std::string to_string(bool with_trace) const;
};

EquivalenceReport verify_kk_equivalence(int n);

struct MoritaResult {
  SumMatrix forward;  // CP(n) -> C^{n+1}
  SumMatrix inverse;  // C^{n+1} -> CP(n)
  EquivalenceReport report;
};

// forward = Pi_n then diag(mor, ..., mor, id_C);
// inverse = diag(phi, ..., phi, id_C) then I_n.
MoritaResult morita_compress(int n);

}  // namespace qpsgraph::kk
