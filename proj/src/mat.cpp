#include "mat.hpp"

#include <random>
#include <sstream>

namespace spn {

Matrix::Matrix(const Field& F, int d) : F_(&F), d_(d), e_(d * d, F.zero()) {}

Matrix Matrix::identity(const Field& F, int d) {
  Matrix m(F, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = F.one();
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  const Field& F = *F_;
  if (d_ != o.d_) throw Error(Errc::DimensionMismatch, "matrix dimensions differ");
  Matrix r(F, d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) {
      Fe a = at(i, k);
      if (a == F.zero()) continue;
      for (int j = 0; j < d_; ++j) {
        Fe b = o.at(k, j);
        if (b != F.zero()) r.at(i, j) = F.add(r.at(i, j), F.mul(a, b));
      }
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(*F_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::inverse() const {
  const Field& F = *F_;
  Matrix a = *this;
  Matrix b = identity(F, d_);
  for (int c = 0; c < d_; ++c) {
    int piv = -1;
    for (int r = c; r < d_; ++r)
      if (a.at(r, c) != F.zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(Errc::Singular, "matrix is singular");
    for (int j = 0; j < d_; ++j) {
      std::swap(a.at(c, j), a.at(piv, j));
      std::swap(b.at(c, j), b.at(piv, j));
    }
    Fe ic = F.inv(a.at(c, c));
    for (int j = 0; j < d_; ++j) {
      a.at(c, j) = F.mul(a.at(c, j), ic);
      b.at(c, j) = F.mul(b.at(c, j), ic);
    }
    for (int r = 0; r < d_; ++r) {
      if (r == c) continue;
      Fe f = a.at(r, c);
      if (f == F.zero()) continue;
      for (int j = 0; j < d_; ++j) {
        a.at(r, j) = F.sub(a.at(r, j), F.mul(f, a.at(c, j)));
        b.at(r, j) = F.sub(b.at(r, j), F.mul(f, b.at(c, j)));
      }
    }
  }
  return b;
}

bool Matrix::is_identity() const {
  const Field& F = *F_;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      if (at(i, j) != (i == j ? F.one() : F.zero())) return false;
  return true;
}

Matrix form_matrix(const Field& F, int n) {
  Matrix J(F, 2 * n);
  for (int i = 1; i <= n; ++i) {
    J.at(col_e(n, i), col_f(n, i)) = F.one();
    J.at(col_f(n, i), col_e(n, i)) = F.neg(F.one());
  }
  return J;
}

bool is_symplectic(const Matrix& M, const Field& F, int n) {
  if (M.dim() != 2 * n) return false;
  return M * form_matrix(F, n) * M.transpose() == form_matrix(F, n);
}

std::vector<Matrix> standard_generators(const Field& F, int n) {
  int d = 2 * n;
  Fe one = F.one(), mone = F.neg(F.one());
  Matrix I = Matrix::identity(F, d);

  Matrix s = I;
  for (int j = 0; j < d; ++j) {
    s.at(col_e(n, 1), j) = F.zero();
    s.at(col_f(n, 1), j) = F.zero();
  }
  s.at(col_e(n, 1), col_f(n, 1)) = one;
  s.at(col_f(n, 1), col_e(n, 1)) = mone;

  Matrix t = I;
  t.at(col_e(n, 1), col_f(n, 1)) = one;

  Matrix delta = I;
  delta.at(col_e(n, 1), col_e(n, 1)) = F.omega();
  delta.at(col_f(n, 1), col_f(n, 1)) = F.inv(F.omega());

  if (n == 1) return {s, t, delta, I, I, I};

  Matrix u = I;
  for (auto [a, b] : {std::pair{col_e(n, 1), col_e(n, 2)},
                      std::pair{col_f(n, 1), col_f(n, 2)}}) {
    for (int j = 0; j < d; ++j) {
      u.at(a, j) = F.zero();
      u.at(b, j) = F.zero();
    }
    u.at(a, b) = one;
    u.at(b, a) = one;
  }

  Matrix v(F, d);
  for (int i = 1; i <= n; ++i) {
    int j = i % n + 1;
    v.at(col_e(n, i), col_e(n, j)) = one;
    v.at(col_f(n, i), col_f(n, j)) = one;
  }

  // short-root element: f_1 -> f_1 + e_2, f_2 -> f_2 + e_1
  Matrix x = I;
  x.at(col_f(n, 1), col_e(n, 2)) = one;
  x.at(col_f(n, 2), col_e(n, 1)) = one;

  return {s, t, delta, u, v, x};
}

Matrix q_element(const Field& F, int n, const std::vector<QCoord>& coords) {
  Matrix m = Matrix::identity(F, 2 * n);
  for (const auto& c : coords) {
    if (c.beta) {
      m.at(col_e(n, 1), col_f(n, c.i)) = c.value;
      if (c.i >= 2) m.at(col_e(n, c.i), col_f(n, 1)) = c.value;
    } else {
      m.at(col_e(n, 1), col_e(n, c.i)) = c.value;
      m.at(col_f(n, c.i), col_f(n, 1)) = F.neg(c.value);
    }
  }
  return m;
}

Matrix xi_element(const Field& F, int n, int i, Fe alpha) {
  if (i < 2 || i > 2 * n - 1) throw Error(Errc::BadArgument, "xi_element index");
  if (i <= n) return q_element(F, n, {{false, i, alpha}});
  return q_element(F, n, {{true, 2 * n - i + 1, alpha}});
}

Matrix ell_element(const Field& F, int n, Fe mu) {
  return q_element(F, n, {{true, 1, mu}});
}

std::vector<std::pair<int, bool>> random_word(int ngens, std::uint64_t seed,
                                              int length) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, bool>> picks;
  picks.reserve(length);
  for (int i = 0; i < length; ++i) {
    int slot = static_cast<int>(rng() % ngens);
    bool inverted = rng() % 2 != 0;
    picks.emplace_back(slot, inverted);
  }
  return picks;
}

Matrix random_symplectic(const Field& F, int n, std::uint64_t seed, int length) {
  auto gens = standard_generators(F, n);
  Matrix m = Matrix::identity(F, 2 * n);
  for (auto [slot, inverted] : random_word(6, seed, length))
    m = m * (inverted ? gens[slot].inverse() : gens[slot]);
  return m;
}

std::string serialize_matrix(const Matrix& M, int n) {
  std::ostringstream os;
  os << "SPN n=" << n << " " << M.field().describe() << "\n";
  for (int i = 0; i < M.dim(); ++i) {
    for (int j = 0; j < M.dim(); ++j) {
      if (j) os << " ";
      os << static_cast<int>(M.at(i, j));
    }
    os << "\n";
  }
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

ParsedMatrix parse_matrix_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) parse_fail(1, "empty input");
  std::istringstream hs(header);
  std::string magic, kv;
  hs >> magic;
  if (magic != "SPN") parse_fail(1, "expected 'SPN' header");
  ParsedMatrix pm{0, 0, 0, {}, {}};
  bool have_n = false, have_p = false, have_k = false, have_mod = false;
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) parse_fail(1, "bad header token '" + kv + "'");
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    try {
      if (key == "n") {
        pm.n = std::stoi(val);
        have_n = true;
      } else if (key == "p") {
        pm.p = std::stoi(val);
        have_p = true;
      } else if (key == "k") {
        pm.k = std::stoi(val);
        have_k = true;
      } else if (key == "mod") {
        size_t pos = 0;
        while (pos < val.size()) {
          auto comma = val.find(',', pos);
          if (comma == std::string::npos) comma = val.size();
          pm.modulus.push_back(std::stoi(val.substr(pos, comma - pos)));
          pos = comma + 1;
        }
        have_mod = true;
      } else {
        parse_fail(1, "unknown header key '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      parse_fail(1, "bad integer in '" + kv + "'");
    }
  }
  if (!have_n || !have_p || !have_k || !have_mod)
    parse_fail(1, "header must set n, p, k, mod");
  if (pm.n < 1) parse_fail(1, "n must be >= 1");
  int d = 2 * pm.n;
  std::string line;
  for (int i = 0; i < d; ++i) {
    if (!std::getline(is, line)) parse_fail(2 + i, "missing matrix row");
    std::istringstream ls(line);
    int got = 0, v;
    while (ls >> v) {
      pm.entries.push_back(v);
      ++got;
    }
    if (!ls.eof()) parse_fail(2 + i, "bad matrix entry");
    if (got != d)
      parse_fail(2 + i, "expected " + std::to_string(d) + " entries, got " +
                            std::to_string(got));
  }
  return pm;
}

Matrix build_matrix(const Field& F, const ParsedMatrix& pm) {
  if (pm.p != F.p() || pm.k != F.k() || pm.modulus != F.modulus())
    throw Error(Errc::ParseError, "line 1: field mismatch (" + F.describe() + ")");
  int d = 2 * pm.n;
  Matrix M(F, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int v = pm.entries[i * d + j];
      if (v < 0 || v >= F.q())
        throw Error(Errc::ParseError,
                    "line " + std::to_string(2 + i) + ": entry out of range");
      M.at(i, j) = static_cast<Fe>(v);
    }
  return M;
}

}  // namespace spn
