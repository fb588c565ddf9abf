#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gf.hpp"

namespace spn {

/// Straight-line programs over a fixed list of generator slots.
///
/// Programs are built as shared expression DAGs (Word) and flattened into an
/// instruction list (Slp) for costing, serialization, and evaluation.  Pow is
/// a first-class instruction with cost 2*floor(log2 |e|) + 2 group operations
/// (square-and-multiply, including one inverse for negative exponents).

struct Expr;
using Word = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Gen, Mul, Inv, Pow };
  Kind kind;
  int slot = 0;       // Gen
  long exponent = 0;  // Pow
  Word a, b;
};

Word w_gen(int slot);
Word w_mul(Word a, Word b);
Word w_inv(Word a);
/// e == 1 collapses to a, e == -1 to inv(a), e == 0 to inv(a)*a.
Word w_pow(Word a, long e);
/// a^b = b^-1 a b
Word w_conj(Word a, Word b);
/// The identity as the word g_0^-1 g_0.
Word w_id();

/// Structural replacement of generator slots by other words.
Word w_substitute(const Word& w, const std::vector<Word>& subs);

bool w_equal(const Word& a, const Word& b);

/// Evaluate a word in any group presented by (gens, mul, inv, identity).
/// Shared subtrees are evaluated once.
template <class T, class MulF, class InvF>
T w_eval(const Word& w, const std::vector<T>& gens, MulF&& mul, InvF&& inv,
         const T& identity) {
  std::unordered_map<const Expr*, T> memo;
  struct Rec {
    const std::vector<T>& gens;
    MulF& mul;
    InvF& inv;
    const T& identity;
    std::unordered_map<const Expr*, T>& memo;
    const T& go(const Word& w) {
      auto it = memo.find(w.get());
      if (it != memo.end()) return it->second;
      T val = identity;
      switch (w->kind) {
        case Expr::Kind::Gen:
          if (w->slot < 0 || w->slot >= static_cast<int>(gens.size()))
            throw Error(Errc::BadSlot, "generator slot out of range");
          val = gens[w->slot];
          break;
        case Expr::Kind::Mul:
          val = mul(go(w->a), go(w->b));
          break;
        case Expr::Kind::Inv:
          val = inv(go(w->a));
          break;
        case Expr::Kind::Pow: {
          T base = go(w->a);
          long e = w->exponent;
          if (e < 0) {
            base = inv(base);
            e = -e;
          }
          T r = identity;
          while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
          }
          val = std::move(r);
          break;
        }
      }
      return memo.emplace(w.get(), std::move(val)).first->second;
    }
  } rec{gens, mul, inv, identity, memo};
  return rec.go(w);
}

/// Flattened program.  Instruction i may reference generator slots (`gen`)
/// or earlier instructions 0..i-1.
struct Instr {
  Expr::Kind op;
  int a = 0;  // slot for Gen, instruction index otherwise
  int b = 0;  // second operand for Mul
  long e = 0; // exponent for Pow

  bool operator==(const Instr&) const = default;
};

struct Slp {
  int ngens = 0;
  std::vector<Instr> instrs;
  int ret = -1;

  /// Total group operations to evaluate (Gen costs 0, Mul/Inv cost 1,
  /// Pow |e|>1 costs 2*floor(log2 |e|) + 2).
  long length() const;

  bool operator==(const Slp&) const = default;
};

/// Flatten a word; shared subtrees become shared instructions.
Slp compile(const Word& w, int ngens);

/// Evaluate a flat program.
template <class T, class MulF, class InvF>
T slp_eval(const Slp& s, const std::vector<T>& gens, MulF&& mul, InvF&& inv,
           const T& identity) {
  if (s.ngens > static_cast<int>(gens.size()))
    throw Error(Errc::MixedArity, "program needs more generators than supplied");
  std::vector<T> vals;
  vals.reserve(s.instrs.size());
  for (const auto& ins : s.instrs) {
    switch (ins.op) {
      case Expr::Kind::Gen:
        if (ins.a < 0 || ins.a >= s.ngens)
          throw Error(Errc::BadSlot, "generator slot out of range");
        vals.push_back(gens[ins.a]);
        break;
      case Expr::Kind::Mul:
        vals.push_back(mul(vals[ins.a], vals[ins.b]));
        break;
      case Expr::Kind::Inv:
        vals.push_back(inv(vals[ins.a]));
        break;
      case Expr::Kind::Pow: {
        T base = vals[ins.a];
        long e = ins.e;
        if (e < 0) {
          base = inv(base);
          e = -e;
        }
        T r = identity;
        while (e) {
          if (e & 1) r = mul(r, base);
          base = mul(base, base);
          e >>= 1;
        }
        vals.push_back(std::move(r));
        break;
      }
    }
  }
  if (s.ret < 0 || s.ret >= static_cast<int>(vals.size()))
    throw Error(Errc::ParseError, "return index out of range");
  return vals[s.ret];
}

/// SLPv1 text format:
///   SLPv1 ngens=<g>
///   <i>: gen <slot> | mul <a> <b> | inv <a> | pow <a> <e>
///   return <ref>
std::string serialize_slp(const Slp& s);
/// Throws Errc::ParseError with a line-numbered message.
Slp parse_slp(const std::string& text);

}  // namespace spn
