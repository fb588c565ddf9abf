#include "gf.hpp"

#include <algorithm>
#include <sstream>

namespace spn {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

// dense polynomial arithmetic over GF(p), coefficients least degree first
using Poly = std::vector<int>;

int pdeg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

Poly pmul(const Poly& a, const Poly& b, int p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

// a mod m, m monic
Poly pmod(Poly a, const Poly& m, int p) {
  int dm = pdeg(m);
  for (int d = pdeg(a); d >= dm; d = pdeg(a)) {
    int c = a[d];
    for (int i = 0; i <= dm; ++i)
      a[d - dm + i] = ((a[d - dm + i] - c * m[i]) % p + p) % p;
  }
  a.resize(std::max(dm, 1), 0);
  return a;
}

bool divides(const Poly& d, const Poly& a, int p) {
  Poly r = a;
  int dd = pdeg(d);
  int lead_inv = 0;
  for (int x = 1; x < p; ++x)
    if (d[dd] * x % p == 1) lead_inv = x;
  for (int da = pdeg(r); da >= dd; da = pdeg(r)) {
    int c = r[da] * lead_inv % p;
    for (int i = 0; i <= dd; ++i)
      r[da - dd + i] = ((r[da - dd + i] - c * d[i]) % p + p) % p;
  }
  return pdeg(r) < 0;
}

bool irreducible(const Poly& m, int p) {
  int k = pdeg(m);
  if (k <= 0) return false;
  // trial division by all monic polynomials of degree 1..k/2
  for (int d = 1; 2 * d <= k; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long t = 0; t < count; ++t) {
      Poly div(d + 1, 0);
      long v = t;
      for (int i = 0; i < d; ++i) {
        div[i] = static_cast<int>(v % p);
        v /= p;
      }
      div[d] = 1;
      if (divides(div, m, p)) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(int p, int k, std::vector<int> modulus) : p_(p), k_(k) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, "p is not prime");
  if (p % 2 == 0) throw Error(Errc::EvenCharacteristic, "q must be odd");
  if (k < 1) throw Error(Errc::BadArgument, "extension degree must be >= 1");
  long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 128) throw Error(Errc::BadArgument, "field too large (q > 128)");
  }
  q_ = static_cast<int>(q);
  if (modulus.empty()) {
    if (k == 1) {
      mod_ = {0, 1};
    } else {
      long count = 1;
      for (int i = 0; i < k; ++i) count *= p;
      // lexicographically smallest (c0, ..., c_{k-1}) irreducible monic
      for (long t = 0; t < count; ++t) {
        Poly m(k + 1, 0);
        long v = t;
        for (int i = k - 1; i >= 0; --i) {
          m[i] = static_cast<int>(v % p);
          v /= p;
        }
        m[k] = 1;
        if (irreducible(m, p)) {
          mod_ = m;
          break;
        }
      }
    }
  } else {
    if (static_cast<int>(modulus.size()) != k + 1 || modulus[k] != 1)
      throw Error(Errc::BadArgument, "modulus must be monic of degree k");
    for (int c : modulus)
      if (c < 0 || c >= p) throw Error(Errc::BadArgument, "modulus coefficient out of range");
    if (!irreducible(modulus, p))
      throw Error(Errc::ReducibleModulus, "modulus is reducible");
    mod_ = std::move(modulus);
  }
  build_tables();
}

void Field::build_tables() {
  int q = q_;
  auto dec = [&](int v) {
    Poly c(k_, 0);
    for (int i = 0; i < k_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    return c;
  };
  auto enc = [&](const Poly& c) {
    int v = 0;
    for (int i = k_ - 1; i >= 0; --i) v = v * p_ + c[i];
    return v;
  };
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    Poly ca = dec(a);
    Poly na(k_);
    for (int i = 0; i < k_; ++i) na[i] = (p_ - ca[i]) % p_;
    neg_[a] = static_cast<Fe>(enc(na));
    for (int b = 0; b < q; ++b) {
      Poly cb = dec(b);
      Poly s(k_);
      for (int i = 0; i < k_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      add_[a * q + b] = static_cast<Fe>(enc(s));
      Poly m = pmod(pmul(ca, cb, p_), mod_, p_);
      m.resize(k_, 0);
      mul_[a * q + b] = static_cast<Fe>(enc(m));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<Fe>(b);
  // smallest primitive element in canonical encoding order
  omega_ = 0;
  for (int a = 2; a < q; ++a) {
    if (order(static_cast<Fe>(a)) == q - 1) {
      omega_ = static_cast<Fe>(a);
      break;
    }
  }
  dlog_.assign(q, -1);
  Fe r = one();
  for (int e = 0; e < q - 1; ++e) {
    dlog_[r] = e;
    r = mul(r, omega_);
  }
}

Fe Field::inv(Fe a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  return inv_[a];
}

Fe Field::pow(Fe a, long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Fe r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int Field::dlog(Fe a) const {
  if (a == 0) throw Error(Errc::DlogOfZero, "dlog of zero");
  return dlog_[a];
}

int Field::order(Fe a) const {
  if (a == 0) throw Error(Errc::DlogOfZero, "order of zero");
  Fe r = a;
  int o = 1;
  while (r != one()) {
    r = mul(r, a);
    ++o;
  }
  return o;
}

Field::TwoSquares Field::two_squares(Fe mu) const {
  if (mu == 0) return {0};
  for (int a = 0; a < q_ - 1; ++a)
    if (pow(omega_, 2L * a) == mu) return {1, a};
  for (int a = 0; a < q_ - 1; ++a)
    for (int b = a; b < q_ - 1; ++b)
      if (add(pow(omega_, 2L * a), pow(omega_, 2L * b)) == mu) return {2, a, b};
  throw Error(Errc::BadArgument, "two_squares: unreachable");
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " k=" << k_ << " mod=";
  for (size_t i = 0; i < mod_.size(); ++i) {
    if (i) os << ",";
    os << mod_[i];
  }
  return os.str();
}

std::vector<int> Field::coeffs(Fe a) const {
  std::vector<int> c(k_);
  int v = a;
  for (int i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Fe Field::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) > k_)
    throw Error(Errc::BadArgument, "coefficient vector too long");
  int v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] < 0 || c[i] >= p_) throw Error(Errc::BadArgument, "coefficient out of range");
    v = v * p_ + c[i];
  }
  return static_cast<Fe>(v);
}

}  // namespace spn
