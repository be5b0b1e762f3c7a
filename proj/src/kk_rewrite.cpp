#include "qpsgraph/kk_rewrite.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qpsgraph/errors.hpp"

namespace qpsgraph::kk {

Atom Atom::cp(int n) {
  if (n < 0) throw PreconditionError("CP(n) needs n >= 0");
  return n == 0 ? c() : Atom{Kind::CP, n};
}

std::string Atom::to_string() const {
  switch (kind) {
    case Kind::CP: return "CP(" + std::to_string(n) + ")";
    case Kind::C: return "C";
    case Kind::K: return "K";
  }
  return "?";
}

namespace {

Arrow indexed(Arrow::Tag tag, int n) {
  if (n < 1) throw PreconditionError("arrow index must be at least 1");
  return Arrow{tag, n};
}

}  // namespace

Arrow Arrow::j(int n) { return indexed(Tag::J, n); }
Arrow Arrow::q(int n) { return indexed(Tag::Q, n); }
Arrow Arrow::s(int n) { return indexed(Tag::S, n); }
Arrow Arrow::pi(int n) { return indexed(Tag::Pi, n); }
Arrow Arrow::phi() { return Arrow{Tag::Phi, 0}; }
Arrow Arrow::mor() { return Arrow{Tag::Mor, 0}; }

Atom Arrow::domain() const {
  switch (tag) {
    case Tag::J: return Atom::k();
    case Tag::Q: return Atom::cp(n);
    case Tag::S: return Atom::cp(n - 1);
    case Tag::Pi: return Atom::cp(n);
    case Tag::Phi: return Atom::c();
    case Tag::Mor: return Atom::k();
  }
  return Atom::c();
}

Atom Arrow::codomain() const {
  switch (tag) {
    case Tag::J: return Atom::cp(n);
    case Tag::Q: return Atom::cp(n - 1);
    case Tag::S: return Atom::cp(n);
    case Tag::Pi: return Atom::k();
    case Tag::Phi: return Atom::k();
    case Tag::Mor: return Atom::c();
  }
  return Atom::c();
}

std::string Arrow::to_string() const {
  const std::string idx = "(" + std::to_string(n) + ")";
  switch (tag) {
    case Tag::J: return "j" + idx;
    case Tag::Q: return "q" + idx;
    case Tag::S: return "s" + idx;
    case Tag::Pi: return "pi" + idx;
    case Tag::Phi: return "phi";
    case Tag::Mor: return "mor";
  }
  return "?";
}

namespace {

void check_composable(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i].codomain() != w[i + 1].domain()) {
      throw PreconditionError("arrows " + w[i].to_string() + " and " + w[i + 1].to_string() +
                              " do not compose");
    }
  }
}

std::string word_string(const Word& w, const Atom& domain) {
  if (w.empty()) return "id_" + domain.to_string();
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i].to_string();
  return out + ")";
}

}  // namespace

Chain Chain::of(Word arrows) {
  if (arrows.empty()) throw PreconditionError("use Chain::identity for empty chains");
  check_composable(arrows);
  const Atom d = arrows.front().domain();
  const Atom c = arrows.back().codomain();
  return Chain{d, c, std::move(arrows)};
}

Chain Chain::then(const Chain& next) const {
  if (codomain != next.domain) throw PreconditionError("chains do not compose");
  Chain out{domain, next.codomain, arrows};
  out.arrows.insert(out.arrows.end(), next.arrows.begin(), next.arrows.end());
  return out;
}

std::string Chain::to_string() const { return word_string(arrows, domain); }

FormalSum FormalSum::of(const Chain& c, long long coefficient) {
  FormalSum out(c.domain, c.codomain);
  out.add(c.arrows, coefficient);
  return out;
}

std::size_t FormalSum::total_length() const {
  std::size_t total = 0;
  for (const auto& [w, c] : terms_) total += w.size();
  return total;
}

void FormalSum::add(const Word& w, long long coefficient) {
  if (w.empty()) {
    if (domain_ != codomain_) throw PreconditionError("identity term in a sum between different objects");
  } else {
    check_composable(w);
    if (w.front().domain() != domain_ || w.back().codomain() != codomain_) {
      throw PreconditionError("chain " + word_string(w, domain_) + " does not go " +
                              domain_.to_string() + " -> " + codomain_.to_string());
    }
  }
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(w, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second == 0) terms_.erase(it);
}

FormalSum FormalSum::operator+(const FormalSum& other) const {
  if (domain_ != other.domain_ || codomain_ != other.codomain_) {
    throw PreconditionError("adding classes between different objects");
  }
  FormalSum out = *this;
  for (const auto& [w, c] : other.terms_) out.add(w, c);
  return out;
}

FormalSum FormalSum::then(const FormalSum& next) const {
  if (codomain_ != next.domain_) throw PreconditionError("classes do not compose");
  FormalSum out(domain_, next.codomain_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : next.terms_) {
      Word w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.add(w, ca * cb);
    }
  }
  return out;
}

std::string FormalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    const long long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a) + "*";
    out += word_string(w, domain_);
  }
  return out;
}

SumMatrix::SumMatrix(std::vector<Atom> domain, std::vector<Atom> codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (domain_.empty() || codomain_.empty()) throw PreconditionError("empty direct sum");
  entries_.reserve(rows() * cols());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) entries_.emplace_back(domain_[j], codomain_[i]);
  }
}

SumMatrix SumMatrix::identity(const std::vector<Atom>& objects) {
  SumMatrix m(objects, objects);
  for (std::size_t i = 0; i < objects.size(); ++i) m.set(i, i, FormalSum::identity(objects[i]));
  return m;
}

SumMatrix SumMatrix::diagonal(const std::vector<Chain>& chains) {
  std::vector<Atom> domain;
  std::vector<Atom> codomain;
  for (const auto& c : chains) {
    domain.push_back(c.domain);
    codomain.push_back(c.codomain);
  }
  SumMatrix m(domain, codomain);
  for (std::size_t i = 0; i < chains.size(); ++i) m.set(i, i, FormalSum::of(chains[i]));
  return m;
}

SumMatrix SumMatrix::column(Atom domain, const std::vector<Chain>& entries) {
  std::vector<Atom> codomain;
  for (const auto& c : entries) codomain.push_back(c.codomain);
  SumMatrix m({domain}, codomain);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, FormalSum::of(entries[i]));
  return m;
}

SumMatrix SumMatrix::row(Atom codomain, const std::vector<Chain>& entries) {
  std::vector<Atom> domain;
  for (const auto& c : entries) domain.push_back(c.domain);
  SumMatrix m(domain, {codomain});
  for (std::size_t j = 0; j < entries.size(); ++j) m.set(0, j, FormalSum::of(entries[j]));
  return m;
}

void SumMatrix::set(std::size_t i, std::size_t j, FormalSum value) {
  if (i >= rows() || j >= cols()) throw PreconditionError("matrix index out of range");
  if (value.domain() != domain_[j] || value.codomain() != codomain_[i]) {
    throw PreconditionError("entry does not match the matrix objects");
  }
  entries_[i * cols() + j] = std::move(value);
}

std::string SumMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows(); ++i) {
    out << "[";
    for (std::size_t j = 0; j < cols(); ++j) out << (j ? " | " : "") << at(i, j).to_string();
    out << "]\n";
  }
  return out.str();
}

SumMatrix product(const SumMatrix& a, const SumMatrix& b) {
  if (a.codomain() != b.domain()) throw PreconditionError("matrices do not compose");
  SumMatrix out(a.domain(), b.codomain());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      FormalSum sum(a.domain()[j], b.codomain()[i]);
      for (std::size_t k = 0; k < a.rows(); ++k) sum = sum + a.at(k, j).then(b.at(i, k));
      out.set(i, j, std::move(sum));
    }
  }
  return out;
}

namespace {

using Tag = Arrow::Tag;

struct LocalRedex {
  const char* rule;
  bool kills;
};

std::optional<LocalRedex> local_redex(const Arrow& a, const Arrow& b) {
  const bool same = a.n == b.n;
  if (same && a.tag == Tag::J && b.tag == Tag::Q) return LocalRedex{"R5", true};
  if (same && a.tag == Tag::S && b.tag == Tag::Pi) return LocalRedex{"R5", true};
  if (same && a.tag == Tag::S && b.tag == Tag::Q) return LocalRedex{"R1", false};
  if (same && a.tag == Tag::J && b.tag == Tag::Pi) return LocalRedex{"R2", false};
  if ((a.tag == Tag::Phi && b.tag == Tag::Mor) || (a.tag == Tag::Mor && b.tag == Tag::Phi)) {
    return LocalRedex{"R3", false};
  }
  return std::nullopt;
}

class Normalizer {
 public:
  Normalizer(FormalSum sum, Trace* trace, std::string entry, NormalizeStats* stats)
      : sum_(std::move(sum)), trace_(trace), entry_(std::move(entry)), stats_(stats) {}

  FormalSum run() {
    const std::size_t cap = 10 * std::max<std::size_t>(1, sum_.term_count());
    bool settled = false;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      if (stats_) ++stats_->outer_iterations;
      while (local_step()) {
      }
      if (!pair_step()) {
        settled = true;
        break;
      }
    }
    if (!settled) {
      while (local_step()) {
      }
      if (stats_ && has_pair_redex()) stats_->hit_cap = true;
    }
    return sum_;
  }

 private:
  void record(const char* rule, const std::string& before) {
    if (stats_) ++stats_->rewrites;
    if (trace_) trace_->push_back(RewriteStep{rule, entry_, before, sum_.to_string()});
  }

  bool local_step() {
    for (const auto& [w, c] : sum_.terms()) {
      for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        auto redex = local_redex(w[p], w[p + 1]);
        if (!redex) continue;
        const std::string before = sum_.to_string();
        const Word word = w;
        const long long coefficient = c;
        sum_.add(word, -coefficient);
        if (!redex->kills) {
          Word reduced(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p));
          reduced.insert(reduced.end(), word.begin() + static_cast<std::ptrdiff_t>(p) + 2,
                         word.end());
          sum_.add(reduced, coefficient);
        }
        record(redex->rule, before);
        return true;
      }
    }
    return false;
  }

  struct PairMatch {
    Word with_pi;
    Word with_q;
    Word collapsed;
    long long amount;
  };

  std::optional<PairMatch> find_pair() const {
    for (const auto& [w, a] : sum_.terms()) {
      for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        if (w[p].tag != Tag::Pi || w[p + 1].tag != Tag::J || w[p].n != w[p + 1].n) continue;
        Word partner = w;
        partner[p] = Arrow::q(w[p].n);
        partner[p + 1] = Arrow::s(w[p].n);
        auto it = sum_.terms().find(partner);
        if (it == sum_.terms().end()) continue;
        const long long b = it->second;
        if ((a > 0) != (b > 0)) continue;
        const long long amount = a > 0 ? std::min(a, b) : std::max(a, b);
        Word collapsed(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
        collapsed.insert(collapsed.end(), w.begin() + static_cast<std::ptrdiff_t>(p) + 2, w.end());
        return PairMatch{w, partner, collapsed, amount};
      }
    }
    return std::nullopt;
  }

  bool has_pair_redex() const { return find_pair().has_value(); }

  bool pair_step() {
    auto match = find_pair();
    if (!match) return false;
    const std::string before = sum_.to_string();
    sum_.add(match->with_pi, -match->amount);
    sum_.add(match->with_q, -match->amount);
    sum_.add(match->collapsed, match->amount);
    record("R4", before);
    return true;
  }

  FormalSum sum_;
  Trace* trace_;
  std::string entry_;
  NormalizeStats* stats_;
};

}  // namespace

FormalSum normalize(const FormalSum& sum, Trace* trace, const std::string& entry,
                    NormalizeStats* stats) {
  return Normalizer(sum, trace, entry, stats).run();
}

SumMatrix normalize(const SumMatrix& m, Trace* trace, NormalizeStats* stats) {
  SumMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string entry = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      out.set(i, j, normalize(m.at(i, j), trace, entry, stats));
    }
  }
  return out;
}

std::vector<Atom> k_sum_object(int n) {
  std::vector<Atom> out(static_cast<std::size_t>(n), Atom::k());
  out.push_back(Atom::c());
  return out;
}

SumMatrix build_Pi(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  std::vector<Chain> rows;
  for (int t = 0; t <= n; ++t) {
    Word w;
    for (int m = n; m > n - t; --m) w.push_back(Arrow::q(m));
    if (t < n) w.push_back(Arrow::pi(n - t));
    rows.push_back(Chain::of(std::move(w)));
  }
  return SumMatrix::column(Atom::cp(n), rows);
}

SumMatrix build_I(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  std::vector<Chain> cols;
  for (int t = 0; t <= n; ++t) {
    Word w;
    if (t < n) w.push_back(Arrow::j(n - t));
    for (int m = n - t + 1; m <= n; ++m) w.push_back(Arrow::s(m));
    cols.push_back(Chain::of(std::move(w)));
  }
  return SumMatrix::row(Atom::cp(n), cols);
}

namespace {

std::vector<std::string> rules_in(const Trace& a, const Trace& b) {
  std::set<std::string> rules;
  for (const auto& s : a) rules.insert(s.rule);
  for (const auto& s : b) rules.insert(s.rule);
  return {rules.begin(), rules.end()};
}

EquivalenceReport check_inverse_pair(int n, const SumMatrix& there, const SumMatrix& back) {
  EquivalenceReport r;
  r.n = n;
  r.left = normalize(product(back, there), &r.left_trace);
  r.right = normalize(product(there, back), &r.right_trace);
  r.passed = r.left == SumMatrix::identity(back.domain()) &&
             r.right == SumMatrix::identity(there.domain());
  r.rules_used = rules_in(r.left_trace, r.right_trace);
  return r;
}

}  // namespace

std::string EquivalenceReport::to_string(bool with_trace) const {
  std::ostringstream out;
  const SumMatrix left_id = SumMatrix::identity(left.domain());
  const SumMatrix right_id = SumMatrix::identity(right.domain());
  out << "n = " << n << ": " << (passed ? "verified" : "failed") << "\n";
  out << "  inverse then forward is identity: " << (left == left_id ? "yes" : "no") << "\n";
  out << "  forward then inverse is identity: " << (right == right_id ? "yes" : "no") << "\n";
  out << "  rules used:";
  for (const auto& rule : rules_used) out << " " << rule;
  out << "\n";
  if (!passed) {
    out << "  residual (inverse then forward):\n" << left.to_string();
    out << "  residual (forward then inverse):\n" << right.to_string();
  }
  if (with_trace) {
    auto dump = [&](const char* title, const Trace& t) {
      out << "  " << title << ":\n";
      for (const auto& s : t) {
        out << "    [" << s.rule << "] " << s.entry << " " << s.before << "  =>  " << s.after
            << "\n";
      }
    };
    dump("trace (inverse then forward)", left_trace);
    dump("trace (forward then inverse)", right_trace);
  }
  return out.str();
}

EquivalenceReport verify_kk_equivalence(int n) {
  return check_inverse_pair(n, build_Pi(n), build_I(n));
}

MoritaResult morita_compress(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  std::vector<Chain> mor(static_cast<std::size_t>(n), Chain::of({Arrow::mor()}));
  std::vector<Chain> phi(static_cast<std::size_t>(n), Chain::of({Arrow::phi()}));
  mor.push_back(Chain::identity(Atom::c()));
  phi.push_back(Chain::identity(Atom::c()));
  MoritaResult out;
  out.forward = product(build_Pi(n), SumMatrix::diagonal(mor));
  out.inverse = product(SumMatrix::diagonal(phi), build_I(n));
  out.report = check_inverse_pair(n, out.forward, out.inverse);
  return out;
}

}  // namespace qpsgraph::kk
