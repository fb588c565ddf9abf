#include "spnmember.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "blackbox.hpp"
#include "gf.hpp"
#include "limits.hpp"
#include "mat.hpp"
#include "natrep.hpp"
#include "rewrite.hpp"
#include "slp.hpp"

struct spn_context {
  std::unique_ptr<spn::Field> field;
  int n = 0;
  std::string last_error;
};

namespace {

spn_status status_of(const spn::Error& e) {
  using spn::Errc;
  switch (e.code) {
    case Errc::ParseError:
      return SPN_E_PARSE;
    case Errc::NotSymplectic:
      return SPN_E_NOTSYMPLECTIC;
    case Errc::NotInGroup:
      return SPN_E_NOTINGROUP;
    case Errc::StepFailed:
      return SPN_E_STEPFAILED;
    case Errc::NotPrime:
    case Errc::EvenCharacteristic:
    case Errc::ReducibleModulus:
    case Errc::BadSlot:
    case Errc::BadArgument:
      return SPN_E_BADARG;
    default:
      return SPN_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
spn_status guarded(spn_context* ctx, F&& f) {
  if (!ctx) return SPN_E_BADARG;
  ctx->last_error.clear();
  try {
    return f();
  } catch (const spn::Error& e) {
    ctx->last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return SPN_E_INTERNAL;
  }
}

spn::Matrix parse_into_context(spn_context* ctx, const char* text) {
  auto pm = spn::parse_matrix_text(text);
  if (pm.n != ctx->n)
    throw spn::Error(spn::Errc::ParseError, "line 1: n mismatch with context");
  return spn::build_matrix(*ctx->field, pm);
}

}  // namespace

extern "C" {

const char* spn_status_message(spn_status st) {
  switch (st) {
    case SPN_OK:
      return "ok";
    case SPN_E_BADARG:
      return "invalid argument";
    case SPN_E_PARSE:
      return "parse error";
    case SPN_E_NOTSYMPLECTIC:
      return "matrix does not preserve the symplectic form";
    case SPN_E_NOTINGROUP:
      return "element not expressible in the generators";
    case SPN_E_STEPFAILED:
      return "internal pipeline step failed";
    default:
      return "internal error";
  }
}

const char* spn_last_error(const spn_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

spn_status spn_context_create(int n, int p, int k, const char* modulus,
                              spn_context** out) {
  if (!out || n < 1) return SPN_E_BADARG;
  auto ctx = std::make_unique<spn_context>();
  ctx->n = n;
  spn_status st = guarded(ctx.get(), [&] {
    std::vector<int> mod;
    if (modulus && *modulus) {
      std::istringstream is(modulus);
      std::string tok;
      while (std::getline(is, tok, ',')) mod.push_back(std::stoi(tok));
    }
    ctx->field = std::make_unique<spn::Field>(p, k, mod);
    return SPN_OK;
  });
  if (st == SPN_OK) *out = ctx.release();
  return st;
}

void spn_context_destroy(spn_context* ctx) { delete ctx; }

spn_status spn_generator(spn_context* ctx, int slot, char** out_text) {
  return guarded(ctx, [&] {
    if (!out_text || slot < 0 || slot > 5) {
      ctx->last_error = "slot must be in 0..5";
      return SPN_E_BADARG;
    }
    auto gens = spn::standard_generators(*ctx->field, ctx->n);
    *out_text = dup_string(spn::serialize_matrix(gens[slot], ctx->n));
    return SPN_OK;
  });
}

spn_status spn_matrix_check(spn_context* ctx, const char* matrix_text,
                            int* out_is_symplectic) {
  return guarded(ctx, [&] {
    if (!matrix_text || !out_is_symplectic) return SPN_E_BADARG;
    spn::Matrix M = parse_into_context(ctx, matrix_text);
    *out_is_symplectic = spn::is_symplectic(M, *ctx->field, ctx->n) ? 1 : 0;
    return SPN_OK;
  });
}

spn_status spn_random_element(spn_context* ctx, uint64_t seed, int word_length,
                              char** out_text, char** out_slp_text) {
  return guarded(ctx, [&] {
    if (!out_text || word_length < 1) return SPN_E_BADARG;
    spn::Matrix M = spn::random_symplectic(*ctx->field, ctx->n, seed, word_length);
    *out_text = dup_string(spn::serialize_matrix(M, ctx->n));
    if (out_slp_text) {
      spn::Word w;
      for (auto [slot, inverted] : spn::random_word(6, seed, word_length)) {
        spn::Word g = spn::w_gen(slot);
        if (inverted) g = spn::w_inv(g);
        w = w ? spn::w_mul(w, g) : g;
      }
      *out_slp_text = dup_string(spn::serialize_slp(spn::compile(w, 6)));
    }
    return SPN_OK;
  });
}

spn_status spn_slp_eval(spn_context* ctx, const char* slp_text,
                        char** out_text) {
  return guarded(ctx, [&] {
    if (!slp_text || !out_text) return SPN_E_BADARG;
    spn::Slp s = spn::parse_slp(slp_text);
    auto gens = spn::standard_generators(*ctx->field, ctx->n);
    spn::Matrix M = spn::slp_eval(
        s, gens, [](const spn::Matrix& a, const spn::Matrix& b) { return a * b; },
        [](const spn::Matrix& a) { return a.inverse(); },
        spn::Matrix::identity(*ctx->field, 2 * ctx->n));
    *out_text = dup_string(spn::serialize_matrix(M, ctx->n));
    return SPN_OK;
  });
}

spn_status spn_rewrite(spn_context* ctx, const char* matrix_text, int white,
                       uint64_t scramble_seed, int verify, char** out_slp_text,
                       spn_rewrite_stats* out_stats) {
  return guarded(ctx, [&] {
    if (!matrix_text || !out_slp_text) return SPN_E_BADARG;
    spn::Matrix M = parse_into_context(ctx, matrix_text);
    const spn::Field& F = *ctx->field;
    int n = ctx->n;
    if (!spn::is_symplectic(M, F, n))
      throw spn::Error(spn::Errc::NotSymplectic, "input matrix is not symplectic");
    spn_rewrite_stats st{};
    spn::Slp slp;
    if (white) {
      spn::Word w = spn::rewrite_natural(F, n, M);
      if (verify) {
        auto gens = spn::standard_generators(F, n);
        spn::Matrix got = spn::w_eval(
            w, gens,
            [](const spn::Matrix& a, const spn::Matrix& b) { return a * b; },
            [](const spn::Matrix& a) { return a.inverse(); },
            spn::Matrix::identity(F, 2 * n));
        if (got != M)
          throw spn::Error(spn::Errc::NotInGroup, "verification failed");
      }
      slp = spn::compile(w, 6);
    } else {
      spn::BlackBox bb(F, n, scramble_seed);
      spn::RewriteResult r =
          spn::rewrite_blackbox(bb, bb.wrap(M), verify != 0);
      slp = r.slp;
      st.mul_calls = r.stats.oracle.nmul;
      st.inv_calls = r.stats.oracle.ninv;
      st.eq_calls = r.stats.oracle.neq;
      st.kit_calls = r.stats.kit_calls;
      st.step1_calls = r.stats.step1_calls;
      st.step2_calls = r.stats.step2_calls;
      st.step3_calls = r.stats.step3_calls;
      st.step4_calls = r.stats.step4_calls;
      st.verify_calls = r.stats.verify_calls;
    }
    st.slp_length = slp.length();
    if (out_stats) *out_stats = st;
    *out_slp_text = dup_string(spn::serialize_slp(slp));
    return SPN_OK;
  });
}

spn_status spn_rewrite_ceilings(int n, int q, long* out_total_calls,
                                long* out_slp_length) {
  if (n < 1 || q < 3 || !out_total_calls || !out_slp_length) return SPN_E_BADARG;
  *out_total_calls = spn::limits::total_ceiling(n, q);
  *out_slp_length = spn::limits::slp_length_ceiling(n, q);
  return SPN_OK;
}

void spn_string_free(char* s) { std::free(s); }

}  // extern "C"
