#include "slp.hpp"

#include <cmath>
#include <sstream>

namespace spn {

Word w_gen(int slot) {
  if (slot < 0) throw Error(Errc::BadSlot, "negative generator slot");
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Gen;
  e->slot = slot;
  return e;
}

Word w_mul(Word a, Word b) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Mul;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

Word w_inv(Word a) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Inv;
  e->a = std::move(a);
  return e;
}

Word w_pow(Word a, long ex) {
  if (ex == 1) return a;
  if (ex == -1) return w_inv(std::move(a));
  if (ex == 0) {
    Word i = w_inv(a);
    return w_mul(std::move(i), std::move(a));
  }
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Pow;
  e->a = std::move(a);
  e->exponent = ex;
  return e;
}

Word w_conj(Word a, Word b) {
  return w_mul(w_mul(w_inv(b), std::move(a)), b);
}

Word w_id() {
  Word g = w_gen(0);
  return w_mul(w_inv(g), g);
}

Word w_substitute(const Word& w, const std::vector<Word>& subs) {
  switch (w->kind) {
    case Expr::Kind::Gen:
      if (w->slot >= static_cast<int>(subs.size()))
        throw Error(Errc::BadSlot, "substitution slot out of range");
      return subs[w->slot];
    case Expr::Kind::Mul:
      return w_mul(w_substitute(w->a, subs), w_substitute(w->b, subs));
    case Expr::Kind::Inv:
      return w_inv(w_substitute(w->a, subs));
    case Expr::Kind::Pow:
      return w_pow(w_substitute(w->a, subs), w->exponent);
  }
  throw Error(Errc::BadArgument, "unreachable");
}

bool w_equal(const Word& a, const Word& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Gen:
      return a->slot == b->slot;
    case Expr::Kind::Mul:
      return w_equal(a->a, b->a) && w_equal(a->b, b->b);
    case Expr::Kind::Inv:
      return w_equal(a->a, b->a);
    case Expr::Kind::Pow:
      return a->exponent == b->exponent && w_equal(a->a, b->a);
  }
  return false;
}

long Slp::length() const {
  long total = 0;
  for (const auto& ins : instrs) {
    switch (ins.op) {
      case Expr::Kind::Gen:
        break;
      case Expr::Kind::Mul:
      case Expr::Kind::Inv:
        total += 1;
        break;
      case Expr::Kind::Pow: {
        long e = ins.e < 0 ? -ins.e : ins.e;
        long lg = 0;
        while (e >> (lg + 1)) ++lg;
        total += 2 * lg + 2;
        break;
      }
    }
  }
  return total;
}

Slp compile(const Word& w, int ngens) {
  Slp s;
  s.ngens = ngens;
  std::unordered_map<const Expr*, int> memo;
  struct Rec {
    Slp& s;
    std::unordered_map<const Expr*, int>& memo;
    int ngens;
    int go(const Word& w) {
      auto it = memo.find(w.get());
      if (it != memo.end()) return it->second;
      Instr ins{w->kind};
      switch (w->kind) {
        case Expr::Kind::Gen:
          if (w->slot >= ngens) throw Error(Errc::BadSlot, "slot exceeds ngens");
          ins.a = w->slot;
          break;
        case Expr::Kind::Mul:
          ins.a = go(w->a);
          ins.b = go(w->b);
          break;
        case Expr::Kind::Inv:
          ins.a = go(w->a);
          break;
        case Expr::Kind::Pow:
          ins.a = go(w->a);
          ins.e = w->exponent;
          break;
      }
      s.instrs.push_back(ins);
      int idx = static_cast<int>(s.instrs.size()) - 1;
      memo.emplace(w.get(), idx);
      return idx;
    }
  } rec{s, memo, ngens};
  s.ret = rec.go(w);
  return s;
}

std::string serialize_slp(const Slp& s) {
  std::ostringstream os;
  os << "SLPv1 ngens=" << s.ngens << "\n";
  for (size_t i = 0; i < s.instrs.size(); ++i) {
    const auto& ins = s.instrs[i];
    os << i << ": ";
    switch (ins.op) {
      case Expr::Kind::Gen:
        os << "gen " << ins.a;
        break;
      case Expr::Kind::Mul:
        os << "mul " << ins.a << " " << ins.b;
        break;
      case Expr::Kind::Inv:
        os << "inv " << ins.a;
        break;
      case Expr::Kind::Pow:
        os << "pow " << ins.a << " " << ins.e;
        break;
    }
    os << "\n";
  }
  os << "return " << s.ret << "\n";
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

long want_long(std::istringstream& is, int line, const char* what) {
  long v;
  if (!(is >> v)) parse_fail(line, std::string("expected ") + what);
  return v;
}

}  // namespace

Slp parse_slp(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) parse_fail(1, "empty input");
  ++lineno;
  {
    std::istringstream hs(line);
    std::string magic, kv;
    hs >> magic;
    if (magic != "SLPv1") parse_fail(1, "expected 'SLPv1' header");
    if (!(hs >> kv) || kv.rfind("ngens=", 0) != 0)
      parse_fail(1, "expected ngens=<g>");
    Slp s;
    try {
      s.ngens = std::stoi(kv.substr(6));
    } catch (const std::exception&) {
      parse_fail(1, "bad ngens value");
    }
    if (s.ngens < 1) parse_fail(1, "ngens must be >= 1");
    while (std::getline(is, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      if (head == "return") {
        long r = want_long(ls, lineno, "return index");
        if (r < 0 || r >= static_cast<long>(s.instrs.size()))
          parse_fail(lineno, "return index out of range");
        s.ret = static_cast<int>(r);
        std::string extra;
        if (ls >> extra) parse_fail(lineno, "trailing tokens after return");
        if (std::getline(is, line) && !line.empty())
          parse_fail(lineno + 1, "content after return");
        return s;
      }
      if (head.empty() || head.back() != ':')
        parse_fail(lineno, "expected '<i>:' prefix");
      long idx;
      try {
        idx = std::stol(head.substr(0, head.size() - 1));
      } catch (const std::exception&) {
        parse_fail(lineno, "bad instruction index");
      }
      if (idx != static_cast<long>(s.instrs.size()))
        parse_fail(lineno, "instruction index must be sequential");
      std::string op;
      if (!(ls >> op)) parse_fail(lineno, "missing opcode");
      Instr ins{};
      auto check_ref = [&](long r) {
        if (r < 0 || r >= idx) parse_fail(lineno, "operand must reference an earlier instruction");
        return static_cast<int>(r);
      };
      if (op == "gen") {
        ins.op = Expr::Kind::Gen;
        long slot = want_long(ls, lineno, "slot");
        if (slot < 0 || slot >= s.ngens) parse_fail(lineno, "slot out of range");
        ins.a = static_cast<int>(slot);
      } else if (op == "mul") {
        ins.op = Expr::Kind::Mul;
        ins.a = check_ref(want_long(ls, lineno, "operand"));
        ins.b = check_ref(want_long(ls, lineno, "operand"));
      } else if (op == "inv") {
        ins.op = Expr::Kind::Inv;
        ins.a = check_ref(want_long(ls, lineno, "operand"));
      } else if (op == "pow") {
        ins.op = Expr::Kind::Pow;
        ins.a = check_ref(want_long(ls, lineno, "operand"));
        ins.e = want_long(ls, lineno, "exponent");
      } else {
        parse_fail(lineno, "unknown opcode '" + op + "'");
      }
      std::string extra;
      if (ls >> extra) parse_fail(lineno, "trailing tokens");
      s.instrs.push_back(ins);
    }
    parse_fail(lineno + 1, "missing return line");
  }
}

}  // namespace spn
