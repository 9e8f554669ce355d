#include "jacstab/divisor_class.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "jacstab/error.hpp"

namespace jacstab {

LegMask to_mask(std::span<const int> legs) {
  LegMask mask = 0;
  for (int i : legs) {
    if (i < 1 || i > kMaxMarkings) {
      throw Error(ErrorCode::InvalidIndex, "marking " + std::to_string(i) + " out of range");
    }
    mask |= LegMask{1} << (i - 1);
  }
  return mask;
}

std::vector<int> from_mask(LegMask mask) {
  std::vector<int> out;
  for (auto bits = mask; bits != 0; bits &= bits - 1) out.push_back(std::countr_zero(bits) + 1);
  return out;
}

LegMask full_mask(int n) { return n >= 32 ? ~LegMask{0} : (LegMask{1} << n) - 1; }

bool is_valid_boundary(int g, int n, int h, LegMask legs) {
  if (h < 0 || h > g || (legs & ~full_mask(n)) != 0) return false;
  const int weight = h + std::popcount(legs);
  return 2 <= weight && weight <= g + n - 2;
}

bool is_canonical_boundary(int g, int /*n*/, int h, LegMask legs) {
  return 2 * h < g || (2 * h == g && (legs & 1U) != 0);
}

BoundaryIndex canonical_boundary(int g, int n, int h, LegMask legs) {
  if (is_canonical_boundary(g, n, h, legs)) return {h, from_mask(legs)};
  const LegMask comp = full_mask(n) & ~legs;
  if (2 * (g - h) == g && (comp & 1U) == 0) return {h, from_mask(legs)};  // n = 0 at h = g/2
  return {g - h, from_mask(comp)};
}

std::vector<BoundaryIndex> canonical_boundaries(int g, int n) {
  std::vector<BoundaryIndex> out;
  for (int h = 0; 2 * h <= g; ++h) {
    for (LegMask a = 0; a <= full_mask(n); ++a) {
      if (is_valid_boundary(g, n, h, a) && is_canonical_boundary(g, n, h, a)) {
        out.push_back({h, from_mask(a)});
      }
      if (a == full_mask(n)) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_moduli_range(int g, int n) {
  if (g < 0 || g > kMaxGenus || n < 0 || n > kMaxMarkings) {
    throw Error(ErrorCode::InputRange, "need 0 <= g <= " + std::to_string(kMaxGenus) + " and 0 <= n <= " +
                                           std::to_string(kMaxMarkings));
  }
  if (2 * g - 2 + n <= 0) throw Error(ErrorCode::InputRange, "2g-2+n must be positive");
}

DivisorClass::DivisorClass(int g, int n) : g_(g), n_(n) {}

Rational DivisorClass::psi_coefficient(int i) const {
  auto it = psi_.find(i);
  return it == psi_.end() ? Rational(0) : it->second;
}

Rational DivisorClass::delta_coefficient(int h, std::span<const int> legs) const {
  auto it = delta_.find(canonical_boundary(g_, n_, h, to_mask(legs)));
  return it == delta_.end() ? Rational(0) : it->second;
}

bool DivisorClass::is_zero() const {
  return psi_.empty() && delta_.empty() && lambda1_ == 0 && kappa1t_ == 0 && delta_irr_ == 0;
}

void DivisorClass::require_same_space(const DivisorClass& other) const {
  if (g_ != other.g_ || n_ != other.n_) {
    throw Error(ErrorCode::InvalidIndex, "classes live on different moduli spaces");
  }
}

void DivisorClass::prune() {
  std::erase_if(psi_, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(delta_, [](const auto& kv) { return kv.second == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  require_same_space(other);
  for (const auto& [i, c] : other.psi_) psi_[i] += c;
  lambda1_ += other.lambda1_;
  kappa1t_ += other.kappa1t_;
  delta_irr_ += other.delta_irr_;
  for (const auto& [b, c] : other.delta_) delta_[b] += c;
  prune();
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  DivisorClass neg = other;
  neg *= Rational(-1);
  return *this += neg;
}

DivisorClass& DivisorClass::operator*=(const Rational& s) {
  for (auto& [i, c] : psi_) c *= s;
  lambda1_ *= s;
  kappa1t_ *= s;
  delta_irr_ *= s;
  for (auto& [b, c] : delta_) c *= s;
  prune();
  return *this;
}

namespace {

void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& symbol) {
  if (c == 0) return;
  const Rational mag = c < 0 ? -c : c;
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (mag != 1) os << to_string(mag) << " ";
  os << symbol;
  first = false;
}

std::string legs_text(const std::vector<int>& legs) {
  std::string s = "{";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(legs[i]);
  }
  return s + "}";
}

}  // namespace

std::string DivisorClass::text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : psi_) append_term(os, first, c, "psi_" + std::to_string(i));
  append_term(os, first, lambda1_, "lambda_1");
  append_term(os, first, kappa1t_, "kappa~_1");
  append_term(os, first, delta_irr_, "delta_irr");
  for (const auto& [b, c] : delta_) {
    append_term(os, first, c, "delta_{" + std::to_string(b.h) + "," + legs_text(b.legs) + "}");
  }
  return first ? "0" : os.str();
}

DivisorClassBuilder::DivisorClassBuilder(int g, int n) : g_(g), n_(n) {
  if (n < 0 || n > kMaxMarkings || g < 0 || g > kMaxGenus) {
    throw Error(ErrorCode::InputRange, "genus or number of markings out of range");
  }
}

DivisorClassBuilder& DivisorClassBuilder::add_psi(int i, const Rational& c) {
  if (i < 1 || i > n_) throw Error(ErrorCode::InvalidIndex, "psi_" + std::to_string(i) + " out of range");
  psi_[i] += c;
  return *this;
}

DivisorClassBuilder& DivisorClassBuilder::add_lambda1(const Rational& c) {
  lambda1_ += c;
  return *this;
}

DivisorClassBuilder& DivisorClassBuilder::add_kappa1t(const Rational& c) {
  kappa1t_ += c;
  return *this;
}

DivisorClassBuilder& DivisorClassBuilder::add_delta_irr(const Rational& c) {
  delta_irr_ += c;
  return *this;
}

DivisorClassBuilder& DivisorClassBuilder::add_boundary(int h, std::span<const int> legs, const Rational& c) {
  return add_boundary(h, to_mask(legs), c);
}

DivisorClassBuilder& DivisorClassBuilder::add_boundary(int h, LegMask legs, const Rational& c) {
  raw_.push_back({h, legs, c});
  return *this;
}

DivisorClassBuilder& DivisorClassBuilder::add(const DivisorClass& c) {
  for (const auto& [i, x] : c.psi()) add_psi(i, x);
  add_lambda1(c.lambda1());
  add_kappa1t(c.kappa1t());
  add_delta_irr(c.delta_irr());
  for (const auto& [b, x] : c.delta()) add_boundary(b.h, b.legs, x);
  return *this;
}

DivisorClass DivisorClassBuilder::build() const {
  DivisorClass out(g_, n_);
  out.psi_ = psi_;
  out.lambda1_ = lambda1_;
  out.kappa1t_ = kappa1t_;
  out.delta_irr_ = delta_irr_;

  const LegMask all = full_mask(n_);
  for (const auto& term : raw_) {
    if (term.c == 0) continue;
    if (term.h < 0 || term.h > g_ || (term.legs & ~all) != 0) {
      throw Error(ErrorCode::InvalidIndex, "boundary index (" + std::to_string(term.h) + ", " +
                                               legs_text(from_mask(term.legs)) + ") out of range");
    }
    // delta_{0,{i}} = delta_{g,[n]-{i}} = -psi_i
    if (term.h == 0 && std::popcount(term.legs) == 1) {
      out.psi_[std::countr_zero(term.legs) + 1] -= term.c;
      continue;
    }
    const LegMask comp = all & ~term.legs;
    if (term.h == g_ && std::popcount(comp) == 1) {
      out.psi_[std::countr_zero(comp) + 1] -= term.c;
      continue;
    }
    if (!is_valid_boundary(g_, n_, term.h, term.legs)) {
      throw Error(ErrorCode::InvalidIndex, "(" + std::to_string(term.h) + ", " + legs_text(from_mask(term.legs)) +
                                               ") is not a boundary divisor");
    }
    out.delta_[canonical_boundary(g_, n_, term.h, term.legs)] += term.c;
  }
  out.prune();
  return out;
}

DivisorClass canonicalize(const DivisorClass& c) {
  return DivisorClassBuilder(c.genus(), c.markings()).add(c).build();
}

}  // namespace jacstab
