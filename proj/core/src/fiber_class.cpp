#include "jacstab/fiber_class.hpp"

#include <algorithm>
#include <sstream>

#include "jacstab/error.hpp"

namespace jacstab {

std::string Atom::text() const {
  switch (kind) {
    case Kind::D:
      return "D_" + std::to_string(marking);
    case Kind::KTilde:
      return "K~";
    case Kind::B: {
      std::string s = "B_{" + std::to_string(boundary.h) + ",{";
      for (std::size_t i = 0; i < boundary.legs.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(boundary.legs[i]);
      }
      return s + "}}";
    }
  }
  return {};
}

namespace {

// Returns the normal form of a single monomial as (coefficient factor, monomial);
// a zero factor means the monomial vanishes.
std::pair<Rational, Monomial> normal_form(Monomial m) {
  std::sort(m.begin(), m.end());
  if (m.size() != 2) return {Rational(1), m};
  const Atom& x = m[0];
  const Atom& y = m[1];
  using K = Atom::Kind;
  if (x.kind == K::D && y.kind == K::KTilde) return {Rational(-1), Monomial{x, x}};
  if (x.kind == K::D && y.kind == K::D && x.marking != y.marking) return {Rational(0), {}};
  if (x.kind == K::B && y.kind == K::B && x.boundary != y.boundary) return {Rational(0), {}};
  return {Rational(1), m};
}

}  // namespace

FiberClass::FiberClass(int g, int n) : g_(g), n_(n) {}

FiberClass FiberClass::constant(int g, int n, const Rational& c) {
  FiberClass f(g, n);
  f.add_term({}, c);
  return f;
}

FiberClass FiberClass::d(int g, int n, int i) {
  if (i < 1 || i > n) throw Error(ErrorCode::InvalidIndex, "D_" + std::to_string(i) + " out of range");
  FiberClass f(g, n);
  f.add_term({Atom::d(i)}, Rational(1));
  return f;
}

FiberClass FiberClass::k_tilde(int g, int n) {
  FiberClass f(g, n);
  f.add_term({Atom::k_tilde()}, Rational(1));
  return f;
}

FiberClass FiberClass::b(int g, int n, int h, std::vector<int> legs) {
  std::sort(legs.begin(), legs.end());
  const LegMask mask = to_mask(legs);
  if (!is_valid_boundary(g, n, h, mask) || !is_canonical_boundary(g, n, h, mask)) {
    throw Error(ErrorCode::InvalidIndex, "B_{" + std::to_string(h) + ",...} is not a canonical boundary index");
  }
  FiberClass f(g, n);
  f.add_term({Atom::b({h, from_mask(mask)})}, Rational(1));
  return f;
}

Rational FiberClass::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FiberClass::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  std::sort(m.begin(), m.end());
  auto& slot = terms_[m];
  slot += c;
  if (slot == 0) terms_.erase(m);
}

void FiberClass::require_same_space(const FiberClass& other) const {
  if (g_ != other.g_ || n_ != other.n_) {
    throw Error(ErrorCode::InvalidIndex, "fiber classes live over different moduli spaces");
  }
}

FiberClass& FiberClass::operator+=(const FiberClass& other) {
  require_same_space(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

FiberClass& FiberClass::operator-=(const FiberClass& other) {
  require_same_space(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

FiberClass& FiberClass::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

FiberClass multiply_raw(const FiberClass& a, const FiberClass& b) {
  a.require_same_space(b);
  FiberClass out(a.g_, a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.size() + mb.size() > 2) {
        throw Error(ErrorCode::DegreeOverflow, "product has degree " + std::to_string(ma.size() + mb.size()));
      }
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

FiberClass normalize(const FiberClass& c) {
  FiberClass out(c.g_, c.n_);
  for (const auto& [m, coeff] : c.terms_) {
    auto [factor, nf] = normal_form(m);
    out.add_term(std::move(nf), coeff * factor);
  }
  return out;
}

FiberClass operator*(const FiberClass& a, const FiberClass& b) { return normalize(multiply_raw(a, b)); }

bool FiberClass::is_normalized() const { return normalize(*this) == *this; }

std::string FiberClass::text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const Rational mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.empty()) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << " ";
    if (m.size() == 2 && m[0] == m[1]) {
      os << m[0].text() << "^2";
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) os << (i > 0 ? " " : "") << m[i].text();
    }
  }
  return os.str();
}

}  // namespace jacstab
