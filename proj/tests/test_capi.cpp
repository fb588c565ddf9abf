#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "spnmember.h"

namespace {

struct Ctx {
  spn_context* c = nullptr;
  ~Ctx() { spn_context_destroy(c); }
};

struct Str {
  char* s = nullptr;
  ~Str() { spn_string_free(s); }
};

}  // namespace

TEST_CASE("context creation validates parameters") {
  Ctx g;
  CHECK(spn_context_create(2, 3, 1, nullptr, &g.c) == SPN_OK);
  spn_context* bad = nullptr;
  CHECK(spn_context_create(2, 2, 1, nullptr, &bad) == SPN_E_BADARG);
  CHECK(spn_context_create(2, 4, 1, nullptr, &bad) == SPN_E_BADARG);
  CHECK(spn_context_create(0, 3, 1, nullptr, &bad) == SPN_E_BADARG);
  CHECK(spn_context_create(2, 3, 2, "0,0,1", &bad) == SPN_E_BADARG);
  CHECK(spn_context_create(2, 3, 1, nullptr, nullptr) == SPN_E_BADARG);
}

TEST_CASE("generators serialize and pass the matrix check") {
  Ctx g;
  REQUIRE(spn_context_create(2, 3, 1, nullptr, &g.c) == SPN_OK);
  for (int slot = 0; slot < 6; ++slot) {
    Str text;
    REQUIRE(spn_generator(g.c, slot, &text.s) == SPN_OK);
    CHECK(std::string(text.s).rfind("SPN n=2 p=3 k=1 mod=0,1", 0) == 0);
    int ok = 0;
    CHECK(spn_matrix_check(g.c, text.s, &ok) == SPN_OK);
    CHECK(ok == 1);
  }
  Str bad;
  CHECK(spn_generator(g.c, 6, &bad.s) == SPN_E_BADARG);
}

TEST_CASE("matrix check flags malformed and non-symplectic input") {
  Ctx g;
  REQUIRE(spn_context_create(1, 3, 1, nullptr, &g.c) == SPN_OK);
  int ok = -1;
  CHECK(spn_matrix_check(g.c, "garbage", &ok) == SPN_E_PARSE);
  CHECK(std::string(spn_last_error(g.c)).find("line 1") != std::string::npos);
  CHECK(spn_matrix_check(g.c, "SPN n=1 p=3 k=1 mod=0,1\n2 0\n0 1\n", &ok) == SPN_OK);
  CHECK(ok == 0);  // determinant 2, not symplectic
  CHECK(spn_matrix_check(g.c, "SPN n=1 p=3 k=1 mod=0,1\n1 1\n1 2\n", &ok) == SPN_OK);
  CHECK(ok == 1);
}

TEST_CASE("random element round-trips through rewrite and eval") {
  Ctx g;
  REQUIRE(spn_context_create(2, 3, 1, nullptr, &g.c) == SPN_OK);
  Str m, slp, back;
  REQUIRE(spn_random_element(g.c, 7, 50, &m.s, nullptr) == SPN_OK);
  spn_rewrite_stats st{};
  REQUIRE(spn_rewrite(g.c, m.s, 0, 1, 1, &slp.s, &st) == SPN_OK);
  CHECK(std::string(slp.s).rfind("SLPv1 ngens=6", 0) == 0);
  CHECK(st.slp_length > 0);
  CHECK(st.eq_calls > 0);
  REQUIRE(spn_slp_eval(g.c, slp.s, &back.s) == SPN_OK);
  CHECK(std::string(back.s) == std::string(m.s));
}

TEST_CASE("white and black paths agree on the same input") {
  Ctx g;
  REQUIRE(spn_context_create(2, 5, 1, nullptr, &g.c) == SPN_OK);
  Str m;
  REQUIRE(spn_random_element(g.c, 3, 40, &m.s, nullptr) == SPN_OK);
  for (int white : {0, 1}) {
    Str slp, back;
    spn_rewrite_stats st{};
    REQUIRE(spn_rewrite(g.c, m.s, white, 9, 1, &slp.s, &st) == SPN_OK);
    if (white) CHECK(st.eq_calls == 0);
    REQUIRE(spn_slp_eval(g.c, slp.s, &back.s) == SPN_OK);
    CHECK(std::string(back.s) == std::string(m.s));
  }
}

TEST_CASE("rewrite rejects non-symplectic matrices") {
  Ctx g;
  REQUIRE(spn_context_create(1, 3, 1, nullptr, &g.c) == SPN_OK);
  Str slp;
  CHECK(spn_rewrite(g.c, "SPN n=1 p=3 k=1 mod=0,1\n2 0\n0 1\n", 0, 1, 1,
                    &slp.s, nullptr) == SPN_E_NOTSYMPLECTIC);
}

TEST_CASE("random element slp reconstructs the element") {
  Ctx g;
  REQUIRE(spn_context_create(2, 3, 1, nullptr, &g.c) == SPN_OK);
  Str m, slp, back;
  REQUIRE(spn_random_element(g.c, 11, 25, &m.s, &slp.s) == SPN_OK);
  REQUIRE(spn_slp_eval(g.c, slp.s, &back.s) == SPN_OK);
  CHECK(std::string(back.s) == std::string(m.s));
}

TEST_CASE("ceilings are positive and monotone") {
  long c1 = 0, l1 = 0, c2 = 0, l2 = 0;
  REQUIRE(spn_rewrite_ceilings(2, 3, &c1, &l1) == SPN_OK);
  REQUIRE(spn_rewrite_ceilings(3, 9, &c2, &l2) == SPN_OK);
  CHECK(c1 > 0);
  CHECK(l1 > 0);
  CHECK(c2 > c1);
  CHECK(l2 > l1);
  CHECK(spn_rewrite_ceilings(0, 3, &c1, &l1) == SPN_E_BADARG);
}

TEST_CASE("status messages are stable strings") {
  CHECK(std::strcmp(spn_status_message(SPN_OK), "ok") == 0);
  CHECK(std::strlen(spn_status_message(SPN_E_PARSE)) > 0);
  CHECK(std::strlen(spn_status_message(SPN_E_NOTINGROUP)) > 0);
}
