#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spn {

enum class Errc {
  NotPrime,
  EvenCharacteristic,
  ReducibleModulus,
  DivisionByZero,
  DlogOfZero,
  DimensionMismatch,
  Singular,
  BadSlot,
  MixedArity,
  ParseError,
  StepFailed,
  NotInGroup,
  NotSymplectic,
  DetNotOne,
  BadArgument,
};

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Errc code;
};

/// Field element in canonical integer encoding sum coeffs[i]*p^i, value in [0, q).
using Fe = std::uint8_t;

/// Exact GF(p^k) arithmetic for odd p, desk scale (q <= 128).
/// All operations are table lookups; the fixed primitive element omega and
/// brute-force discrete logs are precomputed at construction.
class Field {
 public:
  /// modulus: monic degree-k polynomial coefficients c0..ck over GF(p);
  /// empty -> lexicographically smallest irreducible monic polynomial.
  Field(int p, int k, std::vector<int> modulus = {});

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return mod_; }

  Fe zero() const { return 0; }
  Fe one() const { return 1; }
  Fe omega() const { return omega_; }

  Fe add(Fe a, Fe b) const { return add_[a * q_ + b]; }
  Fe sub(Fe a, Fe b) const { return add_[a * q_ + neg_[b]]; }
  Fe mul(Fe a, Fe b) const { return mul_[a * q_ + b]; }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe inv(Fe a) const;
  Fe pow(Fe a, long e) const;

  /// k with omega^k == a, by exhaustive scan at construction time.
  int dlog(Fe a) const;

  /// Multiplicative order of a nonzero element.
  int order(Fe a) const;

  /// omega^(2a) [+ omega^(2b)] decomposition; every element of a finite
  /// field of odd order is a sum of at most two squares.
  struct TwoSquares {
    int terms;  // 0, 1, or 2
    int a = 0, b = 0;
  };
  TwoSquares two_squares(Fe mu) const;

  /// `p=<p> k=<k> mod=<c0,...,ck>`
  std::string describe() const;

  /// Polynomial coefficients (least degree first) of an encoded element.
  std::vector<int> coeffs(Fe a) const;
  Fe from_coeffs(const std::vector<int>& c) const;

  bool operator==(const Field& o) const {
    return p_ == o.p_ && k_ == o.k_ && mod_ == o.mod_;
  }

 private:
  int p_, k_, q_;
  std::vector<int> mod_;
  Fe omega_;
  std::vector<Fe> add_, mul_, neg_;
  std::vector<Fe> inv_;
  std::vector<int> dlog_;

  void build_tables();
};

bool is_prime(int p);

}  // namespace spn
