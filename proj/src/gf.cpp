#include "convcode/gf.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <mutex>
#include <ostream>
#include <sstream>

#include "convcode/error.hpp"

namespace convcode::gf {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  unsigned m = 0;
  std::vector<std::uint32_t> modulus;
  mpz_class q;
  std::size_t nwords = 0;
  bool binary = false;
  std::size_t symbol_bytes = 0;
  // Binary fields: exponents e < m whose modulus coefficient is 1.
  std::vector<unsigned> low_exponents;

  mutable std::once_flag factors_once;
  mutable std::vector<mpz_class> factors;
  mutable std::once_flag primitive_once;
  mutable std::vector<std::uint64_t> primitive;
};

}  // namespace detail

namespace {

using Poly = std::vector<std::uint64_t>;

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - quot * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - quot * new_r};
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

// Quotient and remainder of a by nonzero b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const int db = deg(b);
  if (deg(a) < db) return {Poly{}, a};
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  Poly quot(a.size() - b.size() + 1, 0);
  for (int d = deg(a); d >= db; --d) {
    const std::uint64_t c = a[d] * lead_inv % p;
    if (c == 0) continue;
    quot[d - db] = c;
    for (int i = 0; i <= db; ++i) a[d - db + i] = (a[d - db + i] + p - c * b[i] % p) % p;
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

Poly poly_mod(const Poly& a, const Poly& f, std::uint64_t p) { return poly_divmod(a, f, p).second; }

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(base, f, p);
  while (e > 0) {
    if (e & 1) result = poly_mod(poly_mul(result, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

// Ben-Or: f of degree m is irreducible iff gcd(x^(p^i) - x, f) = 1 for
// i = 1..floor(m/2).
bool poly_is_irreducible(const Poly& f, std::uint64_t p) {
  const int m = deg(f);
  if (m < 1) return false;
  if (m == 1) return true;
  if (f[0] == 0) return false;
  const Poly x{0, 1};
  Poly h = x;
  for (int i = 1; i <= m / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly g = poly_gcd(poly_sub(h, x, p), f, p);
    if (deg(g) > 0) return false;
  }
  return true;
}

// Inverse of a modulo irreducible f by the extended Euclidean algorithm.
Poly poly_inverse(const Poly& a, const Poly& f, std::uint64_t p) {
  Poly r0 = f, r1 = a, s0, s1{1};
  trim(r1);
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1, p);
    Poly s2 = poly_sub(s0, poly_mul(quot, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  assert(r0.size() == 1);
  const std::uint64_t c = inv_mod(r0[0], p);
  for (auto& v : s0) v = v * c % p;
  return s0;
}

Poly unpack(const detail::FieldData& d, const std::vector<std::uint64_t>& w) {
  Poly out(d.m, 0);
  if (d.binary) {
    for (unsigned i = 0; i < d.m; ++i) out[i] = (w[i / 64] >> (i % 64)) & 1u;
  } else {
    std::copy(w.begin(), w.end(), out.begin());
  }
  trim(out);
  return out;
}

std::vector<std::uint64_t> pack(const detail::FieldData& d, const Poly& a) {
  std::vector<std::uint64_t> w(d.nwords, 0);
  for (std::size_t i = 0; i < a.size() && i < d.m; ++i) {
    if (d.binary) {
      if (a[i] & 1u) w[i / 64] |= std::uint64_t{1} << (i % 64);
    } else {
      w[i] = a[i];
    }
  }
  return w;
}

Poly modulus_poly(const detail::FieldData& d) {
  return Poly(d.modulus.begin(), d.modulus.end());
}

void binary_mul(const detail::FieldData& d, const std::uint64_t* a, const std::uint64_t* b,
                std::uint64_t* out) {
  const std::size_t n = d.nwords;
  thread_local std::vector<std::uint64_t> prod;
  prod.assign(2 * n + 1, 0);
  for (std::size_t wi = 0; wi < n; ++wi) {
    std::uint64_t bits = a[wi];
    while (bits != 0) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(bits));
      bits &= bits - 1;
      const std::size_t ws = wi;
      if (bit == 0) {
        for (std::size_t k = 0; k < n; ++k) prod[k + ws] ^= b[k];
      } else {
        for (std::size_t k = 0; k < n; ++k) {
          prod[k + ws] ^= b[k] << bit;
          prod[k + ws + 1] ^= b[k] >> (64 - bit);
        }
      }
    }
  }
  const unsigned m = d.m;
  for (int deg_i = 2 * static_cast<int>(m) - 2; deg_i >= static_cast<int>(m); --deg_i) {
    const std::size_t word = static_cast<std::size_t>(deg_i) / 64;
    const std::uint64_t mask = std::uint64_t{1} << (deg_i % 64);
    if ((prod[word] & mask) == 0) continue;
    prod[word] ^= mask;
    for (unsigned e : d.low_exponents) {
      const std::size_t target = static_cast<std::size_t>(deg_i) - m + e;
      prod[target / 64] ^= std::uint64_t{1} << (target % 64);
    }
  }
  std::copy(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n), out);
}

void odd_mul(const detail::FieldData& d, const std::uint64_t* a, const std::uint64_t* b,
             std::uint64_t* out) {
  const unsigned m = d.m;
  const std::uint64_t p = d.p;
  thread_local std::vector<std::uint64_t> prod;
  prod.assign(2 * m - 1, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (int k = 2 * static_cast<int>(m) - 2; k >= static_cast<int>(m); --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned e = 0; e < m; ++e) {
      const std::uint64_t me = d.modulus[e];
      if (me == 0) continue;
      const std::size_t t = static_cast<std::size_t>(k) - m + e;
      prod[t] = (prod[t] + (p - c) * me) % p;
    }
  }
  std::copy(prod.begin(), prod.begin() + m, out);
}

// --- integer factorization of q-1 ---------------------------------------

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % n; };
    mpz_class y = 2, x, ys, q = 1, g = 1;
    const std::size_t batch = 128;
    std::size_t r = 1;
    do {
      x = y;
      for (std::size_t i = 0; i < r; ++i) y = f(y);
      std::size_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::size_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += batch;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
  for (unsigned long small = 2; small < 1000 && n > 1; ++small) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), small)) {
      out.emplace_back(small);
      while (mpz_divisible_ui_p(n.get_mpz_t(), small)) n /= small;
    }
  }
  std::vector<mpz_class> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    mpz_class v = stack.back();
    stack.pop_back();
    if (v == 1) continue;
    if (mpz_probab_prime_p(v.get_mpz_t(), 40) > 0) {
      out.push_back(v);
      continue;
    }
    mpz_class d = pollard_brent(v);
    stack.push_back(d);
    stack.push_back(v / d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::shared_ptr<detail::FieldData> make_data(std::uint32_t p, unsigned m,
                                             std::vector<std::uint32_t> modulus) {
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->m = m;
  d->modulus = std::move(modulus);
  mpz_ui_pow_ui(d->q.get_mpz_t(), p, m);
  d->binary = (p == 2);
  d->nwords = d->binary ? (m + 63) / 64 : m;
  const mpz_class qm1 = d->q - 1;
  d->symbol_bytes = (mpz_sizeinbase(qm1.get_mpz_t(), 2) + 7) / 8;
  if (d->binary) {
    for (unsigned e = 0; e < m; ++e) {
      if (d->modulus[e] != 0) d->low_exponents.push_back(e);
    }
  }
  return d;
}

}  // namespace

// --- Field ------------------------------------------------------------------

Field Field::make(std::uint32_t p, unsigned m, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime_u32(p) || p > (std::uint32_t{1} << 31)) {
    throw Error(Errc::NotPrime, "characteristic " + std::to_string(p) + " is not a supported prime");
  }
  if (m < 1) throw Error(Errc::DegreeMismatch, "extension degree must be at least 1");
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != m + 1 || mod.back() != 1) {
      throw Error(Errc::DegreeMismatch, "modulus must be monic of degree " + std::to_string(m));
    }
    for (auto c : mod) {
      if (c >= p) throw Error(Errc::DegreeMismatch, "modulus coefficient out of range");
    }
    if (!poly_is_irreducible(Poly(mod.begin(), mod.end()), p)) {
      throw Error(Errc::NotIrreducible, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
  } else {
    for (std::uint64_t counter = 0;; ++counter) {
      Poly cand(m + 1, 0);
      cand[m] = 1;
      std::uint64_t c = counter;
      for (unsigned i = 0; i < m && c != 0; ++i) {
        cand[i] = c % p;
        c /= p;
      }
      if (c != 0) throw Error(Errc::NotIrreducible, "irreducible search overflowed");
      if (poly_is_irreducible(cand, p)) {
        mod.assign(cand.begin(), cand.end());
        break;
      }
    }
  }
  return Field(make_data(p, m, std::move(mod)));
}

Field Field::with_order(const mpz_class& q) {
  if (q < 2) throw Error(Errc::NotPrime, "field order must be at least 2");
  const std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  for (unsigned long m = bits; m >= 1; --m) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), m) == 0) continue;
    if (!root.fits_uint_p()) continue;
    const auto p = static_cast<std::uint32_t>(root.get_ui());
    if (is_prime_u32(p)) return make(p, static_cast<unsigned>(m));
  }
  throw Error(Errc::NotPrime, "field order " + q.get_str() + " is not a prime power");
}

Field Field::smallest_with_order_at_least(const mpz_class& n) {
  mpz_class q = n < 2 ? mpz_class(2) : n;
  for (;; ++q) {
    try {
      return with_order(q);
    } catch (const Error& e) {
      if (e.code() != Errc::NotPrime) throw;
    }
  }
}

const detail::FieldData& Field::data() const {
  if (!d_) throw Error(Errc::FieldMismatch, "element is not attached to a field");
  return *d_;
}

std::uint32_t Field::characteristic() const { return data().p; }
unsigned Field::degree() const { return data().m; }
const std::vector<std::uint32_t>& Field::modulus() const { return data().modulus; }
const mpz_class& Field::order() const { return data().q; }
std::size_t Field::symbol_bytes() const { return data().symbol_bytes; }

Element Field::zero() const { return Element(*this, std::vector<std::uint64_t>(data().nwords, 0)); }

Element Field::one() const {
  std::vector<std::uint64_t> w(data().nwords, 0);
  w[0] = 1;
  return Element(*this, std::move(w));
}

Element Field::from_integer(const mpz_class& value) const {
  const auto& d = data();
  if (value < 0 || value >= d.q) {
    throw Error(Errc::Format, "integer " + value.get_str() + " is not an element of " + describe());
  }
  std::vector<std::uint64_t> w(d.nwords, 0);
  if (d.binary) {
    std::size_t count = 0;
    mpz_export(w.data(), &count, -1, sizeof(std::uint64_t), 0, 0, value.get_mpz_t());
  } else {
    mpz_class v = value;
    for (unsigned i = 0; i < d.m; ++i) {
      w[i] = mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), d.p);
    }
  }
  return Element(*this, std::move(w));
}

Element Field::from_u64(std::uint64_t value) const {
  mpz_class v;
  mpz_import(v.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return from_integer(v);
}

Element Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  const auto& d = data();
  if (coeffs.size() > d.m) throw Error(Errc::DegreeMismatch, "too many coefficients");
  Poly a(coeffs.begin(), coeffs.end());
  for (auto& c : a) c %= d.p;
  return Element(*this, pack(d, a));
}

const std::vector<mpz_class>& Field::order_minus_one_factors() const {
  const auto& d = data();
  std::call_once(d.factors_once, [&] { factor_into(d.q - 1, d.factors); });
  return d.factors;
}

Element Field::primitive_element() const {
  const auto& d = data();
  std::call_once(d.primitive_once, [&] {
    const mpz_class qm1 = d.q - 1;
    const auto& primes = order_minus_one_factors();
    for (mpz_class cand = 1; cand < d.q; ++cand) {
      const Element g = from_integer(cand);
      bool generator = true;
      for (const auto& r : primes) {
        if (g.pow(mpz_class(qm1 / r)).is_one()) {
          generator = false;
          break;
        }
      }
      if (generator) {
        d.primitive = g.w_;
        return;
      }
    }
    throw Error(Errc::SearchExhausted, "no primitive element found");
  });
  return Element(*this, d.primitive);
}

Element Field::random(std::mt19937_64& rng) const {
  const auto& d = data();
  std::vector<std::uint64_t> w(d.nwords, 0);
  if (d.binary) {
    for (auto& v : w) v = rng();
    const unsigned tail = d.m % 64;
    if (tail != 0) w.back() &= (std::uint64_t{1} << tail) - 1;
  } else {
    const std::uint64_t limit = (~std::uint64_t{0} / d.p) * d.p;
    for (auto& v : w) {
      std::uint64_t r;
      do {
        r = rng();
      } while (r >= limit);
      v = r % d.p;
    }
  }
  return Element(*this, std::move(w));
}

std::string Field::describe() const {
  const auto& d = data();
  if (d.m == 1) return "GF(" + std::to_string(d.p) + ")";
  return "GF(" + std::to_string(d.p) + "^" + std::to_string(d.m) + ")";
}

bool operator==(const Field& a, const Field& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  return a.d_->p == b.d_->p && a.d_->m == b.d_->m && a.d_->modulus == b.d_->modulus;
}

// --- Element ----------------------------------------------------------------

void Element::require_same_field(const Element& other) const {
  if (!(field_ == other.field_)) {
    throw Error(Errc::FieldMismatch, "operands belong to different fields");
  }
}

bool Element::is_zero() const noexcept {
  return std::all_of(w_.begin(), w_.end(), [](std::uint64_t v) { return v == 0; });
}

bool Element::is_one() const noexcept {
  if (w_.empty() || w_[0] != 1) return false;
  return std::all_of(w_.begin() + 1, w_.end(), [](std::uint64_t v) { return v == 0; });
}

Element Element::operator-() const {
  const auto& d = field_.data();
  Element r = *this;
  if (!d.binary) {
    for (auto& v : r.w_) v = (d.p - v) % d.p;
  }
  return r;
}

Element& Element::operator+=(const Element& rhs) {
  require_same_field(rhs);
  const auto& d = field_.data();
  if (d.binary) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= rhs.w_[i];
  } else {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const std::uint64_t s = w_[i] + rhs.w_[i];
      w_[i] = s >= d.p ? s - d.p : s;
    }
  }
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  require_same_field(rhs);
  const auto& d = field_.data();
  if (d.binary) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= rhs.w_[i];
  } else {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      w_[i] = w_[i] >= rhs.w_[i] ? w_[i] - rhs.w_[i] : w_[i] + d.p - rhs.w_[i];
    }
  }
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  a.require_same_field(b);
  const auto& d = a.field_.data();
  std::vector<std::uint64_t> r(d.nwords, 0);
  if (d.binary) {
    binary_mul(d, a.w_.data(), b.w_.data(), r.data());
  } else if (d.m == 1) {
    r[0] = a.w_[0] * b.w_[0] % d.p;
  } else {
    odd_mul(d, a.w_.data(), b.w_.data(), r.data());
  }
  return Element(a.field_, std::move(r));
}

Element& Element::operator*=(const Element& rhs) { return *this = *this * rhs; }

Element& Element::operator/=(const Element& rhs) {
  require_same_field(rhs);
  return *this = *this * rhs.inv();
}

Element Element::inv() const {
  const auto& d = field_.data();
  if (is_zero()) throw Error(Errc::DivisionByZero, "zero has no inverse");
  if (d.m == 1) {
    std::vector<std::uint64_t> w{d.binary ? std::uint64_t{1} : inv_mod(w_[0], d.p)};
    return Element(field_, std::move(w));
  }
  return Element(field_, pack(d, poly_inverse(unpack(d, w_), modulus_poly(d), d.p)));
}

Element Element::pow(std::int64_t e) const {
  Element base = *this;
  std::uint64_t k;
  if (e < 0) {
    base = inv();
    k = static_cast<std::uint64_t>(-(e + 1)) + 1;
  } else {
    k = static_cast<std::uint64_t>(e);
  }
  Element result = field_.one();
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Element Element::pow(const mpz_class& e) const {
  if (e < 0) return inv().pow(mpz_class(-e));
  Element result = field_.one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result *= result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= *this;
  }
  return result;
}

mpz_class Element::to_integer() const {
  const auto& d = field_.data();
  mpz_class z;
  if (d.binary) {
    mpz_import(z.get_mpz_t(), w_.size(), -1, sizeof(std::uint64_t), 0, 0, w_.data());
  } else {
    for (std::size_t i = w_.size(); i-- > 0;) z = z * d.p + w_[i];
  }
  return z;
}

std::uint64_t Element::to_u64() const {
  const mpz_class z = to_integer();
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 64) {
    throw Error(Errc::Format, "element encoding exceeds 64 bits");
  }
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
  return v;
}

std::vector<std::uint32_t> Element::coeffs() const {
  const auto& d = field_.data();
  Poly a = unpack(d, w_);
  std::vector<std::uint32_t> out(d.m, 0);
  std::copy(a.begin(), a.end(), out.begin());
  return out;
}

std::string Element::to_string() const { return to_integer().get_str(); }

bool operator==(const Element& a, const Element& b) {
  return a.field_ == b.field_ && a.w_ == b.w_;
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.to_string(); }

mpz_class multiplicative_order(const Element& e) {
  if (e.is_zero()) throw Error(Errc::DivisionByZero, "zero has no multiplicative order");
  mpz_class ord = e.field().order() - 1;
  for (const auto& r : e.field().order_minus_one_factors()) {
    while (mpz_divisible_p(ord.get_mpz_t(), r.get_mpz_t())) {
      const mpz_class smaller = ord / r;
      if (!e.pow(smaller).is_one()) break;
      ord = smaller;
    }
  }
  return ord;
}

}  // namespace convcode::gf
