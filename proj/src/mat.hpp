#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "gf.hpp"

namespace spn {

/// Dense square matrix over a Field, row-vector right-action convention:
/// row i of a group element is the image of the i-th basis vector.
/// Basis order e_1..e_n, f_n..f_1, so e_i sits at 0-based column i-1 and
/// f_i at column 2n-i.
class Matrix {
 public:
  Matrix() : F_(nullptr), d_(0) {}
  Matrix(const Field& F, int d);
  static Matrix identity(const Field& F, int d);

  const Field& field() const { return *F_; }
  int dim() const { return d_; }

  Fe at(int i, int j) const { return e_[i * d_ + j]; }
  Fe& at(int i, int j) { return e_[i * d_ + j]; }

  Matrix operator*(const Matrix& o) const;
  bool operator==(const Matrix& o) const { return e_ == o.e_; }
  bool operator!=(const Matrix& o) const { return e_ != o.e_; }

  Matrix transpose() const;
  /// Gauss-Jordan inverse; throws Errc::Singular.
  Matrix inverse() const;
  bool is_identity() const;

 private:
  const Field* F_;
  int d_;
  std::vector<Fe> e_;
};

inline Matrix conj(const Matrix& a, const Matrix& b) { return b.inverse() * a * b; }

/// 0-based column indices of the basis vectors (1-based i).
inline int col_e(int /*n*/, int i) { return i - 1; }
inline int col_f(int n, int i) { return 2 * n - i; }

/// Antidiagonal Gram matrix J of the symplectic form: <e_i, f_i> = 1.
Matrix form_matrix(const Field& F, int n);

bool is_symplectic(const Matrix& M, const Field& F, int n);

/// Standard generators s, t, delta, u, v, x of Sp(2n,q) in fixed order.
/// For n = 1 the slots u, v, x hold the identity.
std::vector<Matrix> standard_generators(const Field& F, int n);

/// Transvection-group element t(alpha_2..alpha_n, beta_n..beta_1):
///   e_1 -> e_1 + sum alpha_i e_i + sum beta_i f_i,
///   e_i -> e_i + beta_i f_1,   f_i -> f_i - alpha_i f_1   (i >= 2),
///   f_1 -> f_1.
/// coords are (is_beta, i, value) triples; omitted coordinates are zero.
struct QCoord {
  bool beta;
  int i;
  Fe value;
};
Matrix q_element(const Field& F, int n, const std::vector<QCoord>& coords);

/// x_i(alpha): the q_element whose single parameter sits at tuple position
/// i-1, i.e. alpha_i for i <= n and beta_{2n-i+1} for i > n.
Matrix xi_element(const Field& F, int n, int i, Fe alpha);

/// ell(mu) = T_{f_1,mu}: e_1 -> e_1 + mu f_1.
Matrix ell_element(const Field& F, int n, Fe mu);

/// Seeded random generator word: `length` picks of (slot, inverted).
std::vector<std::pair<int, bool>> random_word(int ngens, std::uint64_t seed,
                                              int length);

/// Uniformly seeded random element of Sp(2n,q) as the product of the
/// random_word picks over the standard generators.
Matrix random_symplectic(const Field& F, int n, std::uint64_t seed, int length = 40);

/// Text format:
///   SPN n=<n> p=<p> k=<k> mod=<c0,...,ck>
///   <2n lines of 2n canonical field-element integers>
std::string serialize_matrix(const Matrix& M, int n);
/// Parses and validates the header against (or constructs) the field.
/// Throws Errc::ParseError with a line-numbered message.
struct ParsedMatrix {
  int n;
  int p;
  int k;
  std::vector<int> modulus;
  std::vector<int> entries;  // row-major canonical encodings
};
ParsedMatrix parse_matrix_text(const std::string& text);
Matrix build_matrix(const Field& F, const ParsedMatrix& pm);

}  // namespace spn
