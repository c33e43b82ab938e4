#pragma once

// Discrete-log arithmetic in GF(q^2), q = p^e odd, with GF(q) as the
// subfield of index q+1.  Every nonzero element is stored as its exponent
// against a fixed primitive element g; addition goes through a Zech table.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regmaps {

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed object fails a structural check.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

struct FieldParams {
  int p = 0;
  int e = 0;
  std::int64_t q = 0;   // p^e
  std::int64_t q2 = 0;  // p^(2e)
};

/// An element of GF(q^2): zero, or g^log for 0 <= log < q^2 - 1.
class Fel {
 public:
  constexpr Fel() = default;

  static constexpr Fel from_log(std::int32_t log) { return Fel(log); }

  constexpr bool is_zero() const { return log_ < 0; }
  /// Exponent against the generator; -1 encodes zero.
  constexpr std::int32_t log() const { return log_; }

  friend constexpr bool operator==(Fel, Fel) = default;
  friend constexpr auto operator<=>(Fel, Fel) = default;

 private:
  constexpr explicit Fel(std::int32_t log) : log_(log) {}
  std::int32_t log_ = -1;
};

/// A root of unity together with its trace parameter xi + 1/xi.
struct RootTrace {
  Fel xi;
  Fel omega;
};

class FieldCtx {
 public:
  static constexpr std::int64_t kDefaultTableLimit = std::int64_t{1} << 20;

  FieldCtx(int p, int e, std::int64_t table_limit = kDefaultTableLimit) {
    if (p < 3 || !detail::is_prime(p))
      throw PreconditionError("characteristic must be an odd prime, got " + std::to_string(p));
    if (e < 1) throw PreconditionError("extension degree must be >= 1");
    params_.p = p;
    params_.e = e;
    params_.q = detail::ipow(p, e);
    params_.q2 = params_.q * params_.q;
    if (params_.q2 > table_limit)
      throw PreconditionError("GF(" + std::to_string(params_.q) + "^2) exceeds the table limit");
    order_ = params_.q2 - 1;
    degree_ = 2 * e;
    choose_modulus();
    build_tables();
    alpha_ = *sqrt(neg(one()));
  }

  const FieldParams& params() const { return params_; }
  int p() const { return params_.p; }
  int e() const { return params_.e; }
  std::int64_t q() const { return params_.q; }
  /// |GF(q^2)^x| = q^2 - 1.
  std::int64_t group_order() const { return order_; }

  /// Monic modulus, low coefficient first, leading 1 included.
  const std::vector<int>& modulus() const { return modulus_; }
  /// Polynomial-basis code (sum c_i p^i) of the generator.
  int generator_code() const { return exp_[1]; }

  Fel zero() const { return Fel{}; }
  Fel one() const { return Fel::from_log(0); }
  Fel generator() const { return Fel::from_log(order_ > 1 ? 1 : 0); }
  /// Canonical square root of -1.
  Fel alpha() const { return alpha_; }

  Fel from_int(std::int64_t n) const { return from_code(static_cast<int>(detail::mod(n, p()))); }
  Fel from_code(int code) const {
    if (code < 0 || code >= params_.q2) throw PreconditionError("element code out of range");
    return code == 0 ? Fel{} : Fel::from_log(log_[code]);
  }
  int code(Fel x) const { return x.is_zero() ? 0 : exp_[x.log()]; }

  Fel add(Fel a, Fel b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int32_t z = zech_[detail::mod(b.log() - a.log(), order_)];
    if (z < 0) return Fel{};
    return Fel::from_log(static_cast<std::int32_t>((a.log() + z) % order_));
  }
  Fel neg(Fel a) const {
    if (a.is_zero()) return a;
    return Fel::from_log(static_cast<std::int32_t>((a.log() + order_ / 2) % order_));
  }
  Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
  Fel mul(Fel a, Fel b) const {
    if (a.is_zero() || b.is_zero()) return Fel{};
    return Fel::from_log(static_cast<std::int32_t>((std::int64_t{a.log()} + b.log()) % order_));
  }
  Fel inv(Fel a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    return Fel::from_log(static_cast<std::int32_t>(detail::mod(-std::int64_t{a.log()}, order_)));
  }
  Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
  Fel pow(Fel a, std::int64_t n) const {
    if (a.is_zero()) {
      if (n < 0) throw std::domain_error("negative power of zero");
      return n == 0 ? one() : a;
    }
    const std::int64_t m = detail::mod(n, order_);
    return Fel::from_log(static_cast<std::int32_t>((std::int64_t{a.log()} * m) % order_));
  }

  /// x^(p^j); the identity when 2e divides j.
  Fel frobenius(Fel x, int j) const {
    if (j < 0) throw PreconditionError("frobenius exponent must be non-negative");
    if (x.is_zero()) return x;
    std::int64_t r = 1;
    for (int i = 0; i < j % degree_; ++i) r = (r * p()) % order_;
    return Fel::from_log(static_cast<std::int32_t>((std::int64_t{x.log()} * r) % order_));
  }

  /// True iff x^q = x.
  bool in_gfq(Fel x) const { return x.is_zero() || x.log() % (params_.q + 1) == 0; }

  /// True iff x lies in GF(p^d); d must divide 2e.
  bool in_subfield(Fel x, int d) const {
    if (d < 1 || degree_ % d != 0) throw PreconditionError("subfield degree must divide 2e");
    if (x.is_zero()) return true;
    return x.log() % (order_ / (detail::ipow(p(), d) - 1)) == 0;
  }

  /// True iff x is a nonzero square of GF(q).  x must lie in GF(q).
  bool is_square_gfq(Fel x) const {
    if (!in_gfq(x)) throw PreconditionError("is_square_gfq: element outside GF(q)");
    return !x.is_zero() && x.log() % (2 * (params_.q + 1)) == 0;
  }

  /// Square root in GF(q^2) with the smaller exponent, if one exists.
  std::optional<Fel> sqrt(Fel x) const {
    if (x.is_zero()) return x;
    if (x.log() % 2 != 0) return std::nullopt;
    return Fel::from_log(x.log() / 2);
  }

  std::int64_t mult_order(Fel x) const {
    if (x.is_zero()) throw std::domain_error("order of zero");
    return order_ / std::gcd(std::int64_t{x.log()}, order_);
  }

  /// All elements of exact multiplicative order 2k.
  std::vector<Fel> primitive_2k_roots(int k) const {
    check_root_order(k);
    std::vector<Fel> out;
    const std::int64_t n = 2 * std::int64_t{k};
    if (order_ % n != 0) return out;
    const std::int64_t step = order_ / n;
    for (std::int64_t i = 1; i < n; ++i)
      if (std::gcd(i, n) == 1) out.push_back(Fel::from_log(static_cast<std::int32_t>(i * step)));
    return out;
  }

  /// One (xi, omega) per distinct omega = xi + 1/xi lying in GF(q), xi of
  /// exact order 2k.  The xi kept is the one with the smallest exponent.
  std::vector<RootTrace> omegas_for_order(int k) const {
    std::vector<RootTrace> out;
    for (Fel xi : primitive_2k_roots(k)) {
      const Fel omega = add(xi, inv(xi));
      if (!in_gfq(omega)) continue;
      bool seen = false;
      for (const auto& rt : out) seen = seen || rt.omega == omega;
      if (!seen) out.push_back({xi, omega});
    }
    return out;
  }

  /// "g^i" for nonzero elements, "0" for zero.
  std::string power_notation(Fel x) const {
    return x.is_zero() ? std::string("0") : "g^" + std::to_string(x.log());
  }

 private:
  void check_root_order(int k) const {
    if (k < 3) throw PreconditionError("root order k must be >= 3");
    if (k % p() == 0) throw PreconditionError("root order k must be coprime to p");
  }

  // Polynomials over GF(p) as coefficient vectors, low degree first.
  using Poly = std::vector<int>;

  Poly poly_from_index(std::int64_t idx, int deg) const {
    Poly f(deg + 1, 0);
    for (int i = 0; i < deg; ++i) {
      f[i] = static_cast<int>(idx % p());
      idx /= p();
    }
    f[deg] = 1;
    return f;
  }

  // Remainder of f modulo monic g.
  Poly poly_rem(Poly f, const Poly& g) const {
    const int dg = static_cast<int>(g.size()) - 1;
    for (int d = static_cast<int>(f.size()) - 1; d >= dg; --d) {
      const int c = f[d];
      if (c == 0) continue;
      for (int i = 0; i <= dg; ++i) f[d - dg + i] = static_cast<int>(detail::mod(f[d - dg + i] - c * g[i], p()));
    }
    f.resize(dg);
    return f;
  }

  bool irreducible(const Poly& f) const {
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= n / 2; ++d) {
      const std::int64_t count = detail::ipow(p(), d);
      for (std::int64_t idx = 0; idx < count; ++idx) {
        const Poly rem = poly_rem(f, poly_from_index(idx, d));
        bool zero = true;
        for (int c : rem) zero = zero && c == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  // Lowest monic irreducible of degree 2e, ordering by sum c_i p^i.
  void choose_modulus() {
    const std::int64_t count = detail::ipow(p(), degree_);
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Poly f = poly_from_index(idx, degree_);
      if (f[0] != 0 && irreducible(f)) {
        modulus_ = std::move(f);
        return;
      }
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  Poly code_to_poly(int code) const {
    Poly v(degree_, 0);
    for (int i = 0; i < degree_; ++i) {
      v[i] = code % p();
      code /= p();
    }
    return v;
  }
  int poly_to_code(const Poly& v) const {
    int code = 0;
    for (int i = degree_ - 1; i >= 0; --i) code = code * p() + v[i];
    return code;
  }
  int mul_codes(int a, int b) const {
    const Poly x = code_to_poly(a), y = code_to_poly(b);
    Poly prod(2 * degree_ - 1, 0);
    for (int i = 0; i < degree_; ++i)
      for (int j = 0; j < degree_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p();
    return poly_to_code(poly_rem(prod, modulus_));
  }
  int add_codes(int a, int b) const {
    int out = 0, scale = 1;
    for (int i = 0; i < degree_; ++i) {
      out += ((a % p() + b % p()) % p()) * scale;
      a /= p();
      b /= p();
      scale *= p();
    }
    return out;
  }

  void build_tables() {
    const auto n = static_cast<std::size_t>(order_);
    // Smallest code of full multiplicative order.
    for (int cand = 2; cand < params_.q2; ++cand) {
      std::vector<std::int32_t> powers;
      powers.reserve(n);
      int x = 1;
      do {
        powers.push_back(x);
        x = mul_codes(x, cand);
      } while (x != 1 && powers.size() < n);
      if (x == 1 && powers.size() == n) {
        exp_ = std::move(powers);
        break;
      }
    }
    if (exp_.size() != n) throw std::logic_error("no primitive element found");
    log_.assign(static_cast<std::size_t>(params_.q2), -1);
    for (std::size_t i = 0; i < n; ++i) log_[exp_[i]] = static_cast<std::int32_t>(i);
    zech_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) zech_[i] = log_[add_codes(1, exp_[i])];
  }

  FieldParams params_;
  std::int64_t order_ = 0;
  int degree_ = 0;
  Poly modulus_;
  std::vector<std::int32_t> exp_;   // exponent -> code
  std::vector<std::int32_t> log_;   // code -> exponent, -1 for zero
  std::vector<std::int32_t> zech_;  // i -> log(1 + g^i), -1 when zero
  Fel alpha_;
};

/// Builds the context for GF((p^e)^2).
inline FieldCtx build_ctx(int p, int e, std::int64_t table_limit = FieldCtx::kDefaultTableLimit) {
  return FieldCtx(p, e, table_limit);
}

/// Splits q into (p, e) when q is an odd prime power.
inline std::optional<std::pair<int, int>> odd_prime_power(std::int64_t q) {
  if (q < 3 || q % 2 == 0) return std::nullopt;
  for (int p = 3; p <= q; p += 2) {
    if (q % p != 0) continue;
    if (!detail::is_prime(p)) return std::nullopt;
    int e = 0;
    std::int64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (rest != 1) return std::nullopt;
    return std::pair{p, e};
  }
  return std::nullopt;
}

inline FieldCtx ctx_for_q(std::int64_t q) {
  const auto pe = odd_prime_power(q);
  if (!pe) throw PreconditionError(std::to_string(q) + " is not an odd prime power");
  return FieldCtx(pe->first, pe->second);
}

/// Field element bound to its context, for transcribing closed-form formulas.
class Elem {
 public:
  Elem(const FieldCtx& ctx, Fel v) : ctx_(&ctx), v_(v) {}
  Elem(const FieldCtx& ctx, std::int64_t n) : ctx_(&ctx), v_(ctx.from_int(n)) {}

  Fel fel() const { return v_; }
  operator Fel() const { return v_; }  // NOLINT(google-explicit-constructor)
  const FieldCtx& ctx() const { return *ctx_; }
  bool is_zero() const { return v_.is_zero(); }

  friend Elem operator+(Elem a, Elem b) { return {*a.ctx_, a.ctx_->add(a.v_, b.v_)}; }
  friend Elem operator-(Elem a, Elem b) { return {*a.ctx_, a.ctx_->sub(a.v_, b.v_)}; }
  friend Elem operator*(Elem a, Elem b) { return {*a.ctx_, a.ctx_->mul(a.v_, b.v_)}; }
  friend Elem operator/(Elem a, Elem b) { return {*a.ctx_, a.ctx_->div(a.v_, b.v_)}; }
  friend Elem operator-(Elem a) { return {*a.ctx_, a.ctx_->neg(a.v_)}; }
  friend bool operator==(Elem a, Elem b) { return a.v_ == b.v_; }

  Elem pow(std::int64_t n) const { return {*ctx_, ctx_->pow(v_, n)}; }
  Elem inv() const { return {*ctx_, ctx_->inv(v_)}; }
  Elem frob(int j) const { return {*ctx_, ctx_->frobenius(v_, j)}; }

 private:
  const FieldCtx* ctx_;
  Fel v_;
};

}  // namespace regmaps
