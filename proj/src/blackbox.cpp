#include "blackbox.hpp"

#include <random>

namespace spn {

BlackBox::BlackBox(const Field& F, int n, std::uint64_t scramble_seed)
    : F_(&F), n_(n) {
  if (n < 1) throw Error(Errc::BadArgument, "n must be >= 1");
  int d = 2 * n;
  if (scramble_seed == 0) {
    c_ = Matrix::identity(F, d);
    ci_ = c_;
  } else {
    std::mt19937_64 rng(scramble_seed);
    for (;;) {
      Matrix c(F, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          c.at(i, j) = static_cast<Fe>(rng() % F.q());
      try {
        ci_ = c.inverse();
      } catch (const Error&) {
        continue;
      }
      c_ = c;
      break;
    }
  }
  for (const Matrix& g : standard_generators(F, n)) gens_.push_back(wrap(g));
}

BlackBox::Handle BlackBox::mul(const Handle& a, const Handle& b) const {
  ++stats_.nmul;
  return a * b;
}

BlackBox::Handle BlackBox::inv(const Handle& a) const {
  ++stats_.ninv;
  return a.inverse();
}

bool BlackBox::eq(const Handle& a, const Handle& b) const {
  ++stats_.neq;
  return a == b;
}

BlackBox::Handle BlackBox::identity() const {
  return Matrix::identity(*F_, 2 * n_);
}

BlackBox::Handle BlackBox::wrap(const Matrix& m) const { return ci_ * m * c_; }

Matrix BlackBox::shadow(const Handle& h) const { return c_ * h * ci_; }

}  // namespace spn
