#pragma once

// Sparse homogeneous forms in at most four variables.
//
// A monomial packs four 16-bit exponents into one word with X_0 in the high
// bits, so comparing words compares monomials lexicographically with
// X_0 > X_1 > X_2 > X_3. Terms are kept sorted ascending; the first term is
// the lex-least monomial.

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mincrit/errors.hpp"
#include "mincrit/ring.hpp"

namespace mincrit {

using Monomial = std::uint64_t;
constexpr int kMaxVars = 4;
constexpr unsigned kMaxExponent = 0xFFFF;

inline unsigned mono_exp(Monomial m, int i) {
  return static_cast<unsigned>((m >> (16 * (3 - i))) & 0xFFFF);
}
inline Monomial mono_unit(int i) { return Monomial(1) << (16 * (3 - i)); }
inline Monomial mono_make(const std::vector<unsigned>& e) {
  Monomial m = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > kMaxExponent) fail(ErrorKind::Budget, "exponent exceeds 16 bits");
    m |= Monomial(e[i]) << (16 * (3 - i));
  }
  return m;
}
inline Monomial mono_with(Monomial m, int i, unsigned e) {
  Monomial mask = Monomial(0xFFFF) << (16 * (3 - i));
  return (m & ~mask) | (Monomial(e) << (16 * (3 - i)));
}
inline unsigned mono_degree(Monomial m) {
  return mono_exp(m, 0) + mono_exp(m, 1) + mono_exp(m, 2) + mono_exp(m, 3);
}

template <class K>
class Form {
 public:
  using Term = std::pair<Monomial, K>;

  Form() : nvars_(1), degree_(0) {}
  Form(int nvars, unsigned degree) : nvars_(nvars), degree_(degree) { check_vars(); }
  // Terms may be unsorted and contain repeats or zeros.
  Form(int nvars, unsigned degree, std::vector<Term> terms)
      : nvars_(nvars), degree_(degree), terms_(std::move(terms)) {
    check_vars();
    canonicalize();
  }

  static Form variable(int nvars, int i) {
    return Form(nvars, 1, {{mono_unit(i), Ring<K>::one()}});
  }
  static Form constant(int nvars, const K& c) { return Form(nvars, 0, {{Monomial(0), c}}); }
  static Form monomial(int nvars, const std::vector<unsigned>& e, const K& c) {
    unsigned deg = 0;
    for (auto x : e) deg += x;
    return Form(nvars, deg, {{mono_make(e), c}});
  }

  int nvars() const { return nvars_; }
  unsigned degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Coefficient of a monomial (zero if absent).
  K coeff(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial x) { return t.first < x; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Ring<K>::zero();
  }

  Form& operator+=(const Form& o) { return *this = merge(*this, o, false); }
  Form& operator-=(const Form& o) { return *this = merge(*this, o, true); }
  friend Form operator+(const Form& a, const Form& b) { return merge(a, b, false); }
  friend Form operator-(const Form& a, const Form& b) { return merge(a, b, true); }
  friend Form operator-(Form a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }

  friend Form operator*(const Form& a, const Form& b) {
    if (a.nvars_ != b.nvars_) fail(ErrorKind::Domain, "variable count mismatch");
    unsigned deg = a.degree_ + b.degree_;
    if (deg > kMaxExponent) fail(ErrorKind::Budget, "product degree exceeds 16 bits");
    if (a.is_zero() || b.is_zero()) return Form(a.nvars_, deg);
    std::unordered_map<Monomial, K> acc;
    acc.reserve(a.size() * b.size() / 2 + 16);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ma + mb, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    std::vector<Term> terms(acc.begin(), acc.end());
    return Form(a.nvars_, deg, std::move(terms));
  }

  Form scaled(const K& c) const {
    Form out = *this;
    for (auto& t : out.terms_) t.second *= c;
    out.drop_zeros();
    return out;
  }

  Form pow(unsigned e) const {
    Form result = constant(nvars_, Ring<K>::one());
    Form base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  // Partial derivative with respect to X_i.
  Form derivative(int i) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      unsigned e = mono_exp(m, i);
      if (e == 0) continue;
      out.emplace_back(m - mono_unit(i), c * K(static_cast<long>(e)));
    }
    return Form(nvars_, degree_ == 0 ? 0 : degree_ - 1, std::move(out));
  }

  K evaluate(const std::vector<K>& x) const {
    K sum = Ring<K>::zero();
    for (const auto& [m, c] : terms_) {
      K t = c;
      for (int i = 0; i < nvars_; ++i) {
        unsigned e = mono_exp(m, i);
        for (unsigned k = 0; k < e; ++k) t *= x[static_cast<std::size_t>(i)];
      }
      sum += t;
    }
    return sum;
  }

  template <class F>
  auto map(F f) const -> Form<decltype(f(std::declval<K>()))> {
    using T = decltype(f(std::declval<K>()));
    std::vector<std::pair<Monomial, T>> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m, f(c));
    return Form<T>(nvars_, degree_, std::move(out));
  }

  friend bool operator==(const Form& a, const Form& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    if (a.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  // Direct access for kernels that keep the terms sorted themselves.
  std::vector<Term>& mutable_terms() { return terms_; }
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size();) {
      Monomial m = terms_[r].first;
      K c = std::move(terms_[r].second);
      for (++r; r < terms_.size() && terms_[r].first == m; ++r) c += terms_[r].second;
      if (!Ring<K>::is_zero(c)) {
        if (mono_degree(m) != degree_) fail(ErrorKind::Domain, "inhomogeneous term in form");
        terms_[w].first = m;
        terms_[w].second = std::move(c);
        ++w;
      }
    }
    terms_.resize(w);
  }

 private:
  void check_vars() const {
    if (nvars_ < 1 || nvars_ > kMaxVars) fail(ErrorKind::Domain, "forms support 1 to 4 variables");
  }
  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return Ring<K>::is_zero(t.second); }),
                 terms_.end());
  }
  static Form merge(const Form& a, const Form& b, bool subtract) {
    if (a.nvars_ != b.nvars_) fail(ErrorKind::Domain, "variable count mismatch");
    if (a.is_zero()) return subtract ? -b : b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_) fail(ErrorKind::Domain, "adding forms of different degree");
    Form out(a.nvars_, a.degree_);
    auto& t = out.terms_;
    t.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].first < b.terms_[j].first)) {
        t.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].first < a.terms_[i].first) {
        t.emplace_back(b.terms_[j].first, subtract ? K(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        K c = subtract ? K(a.terms_[i].second - b.terms_[j].second)
                       : K(a.terms_[i].second + b.terms_[j].second);
        if (!Ring<K>::is_zero(c)) t.emplace_back(a.terms_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    return out;
  }

  int nvars_;
  unsigned degree_;
  std::vector<Term> terms_;
};

// Scale so the coefficient of the lex-least monomial is 1 (exact fields).
template <class K>
Form<K> normalize_projective(const Form<K>& f) {
  if (f.is_zero()) fail(ErrorKind::Domain, "normalize of the zero form");
  static_assert(Ring<K>::field, "normalize needs a field");
  return f.scaled(Ring<K>::inv(f.terms().front().second));
}

// Divide every exponent of X_i by q (all must be divisible); the result is
// only weighted-homogeneous, so it is returned as raw terms.
template <class K>
std::vector<std::pair<Monomial, K>> divide_exponents(std::vector<std::pair<Monomial, K>> terms,
                                                     int i, unsigned q) {
  std::size_t w = 0;
  for (auto& t : terms) {
    unsigned e = mono_exp(t.first, i);
    if (e % q != 0) {
      if (!Ring<K>::exact) continue;  // rounding residue of a cancelled term
      fail(ErrorKind::Domain, "exponent not divisible during pushforward");
    }
    t.first = mono_with(t.first, i, e / q);
    if (&terms[w] != &t) terms[w] = std::move(t);
    ++w;
  }
  terms.resize(w);
  return terms;
}

}  // namespace mincrit
