#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conjsets.hpp"
#include "lemmas.hpp"
#include "subgroups.hpp"

using namespace frobtrace;

namespace {

u128 brute_order_g1(const Subgroup& sg, u64 ell) {
  u128 n = 0;
  for (u64 code = 0; code < ell * ell * ell * ell; ++code) {
    Gl2Mat m = Gl2Mat::decode(ell, code);
    if (is_member(GTuple({m}), sg, ell, 1)) ++n;
  }
  return n;
}

std::string card_value(const LemmaReport& rep, const std::string& key) {
  for (const auto& [k, v] : rep.cardinalities)
    if (k == key) return v;
  return "<missing>";
}

}  // namespace

TEST_CASE("require_odd_prime rejects evens, composites and accepts primes") {
  CHECK(require_odd_prime(3) == 3);
  CHECK(require_odd_prime(10007) == 10007);
  CHECK_THROWS_AS(require_odd_prime(2), std::invalid_argument);
  CHECK_THROWS_AS(require_odd_prime(9), std::invalid_argument);
  CHECK_THROWS_AS(require_odd_prime(0), std::invalid_argument);
}

TEST_CASE("char_poly classifies split and non-split matrices") {
  // X^2 - 2 over F_3: 2 is a non-residue mod 3
  CharPoly2 ns = char_poly(Gl2Mat(3, 0, 2, 1, 0));
  CHECK(ns.kind == EigKind::NonSplit);
  CHECK(ns.tr == 0);
  CHECK(ns.det == 1);  // det(0,2;1,0) = -2 = 1 mod 3

  CharPoly2 rep = char_poly(Gl2Mat(5, 1, 1, 0, 1));
  CHECK(rep.kind == EigKind::SplitRepeated);
  CHECK(rep.lambda1 == 1);
  CHECK(rep.lambda2 == 1);

  CharPoly2 sd = char_poly(Gl2Mat::diag(7, 2, 5));
  CHECK(sd.kind == EigKind::SplitDistinct);
  std::set<u64> eig{sd.lambda1, sd.lambda2};
  CHECK(eig == std::set<u64>{2, 5});
}

TEST_CASE("matrix multiply, inverse and encode round-trip") {
  const u64 ell = 13;
  SplitMix64 rng(42);
  int tried = 0;
  while (tried < 200) {
    Gl2Mat m(ell, rng.below(ell), rng.below(ell), rng.below(ell), rng.below(ell));
    if (!m.invertible()) continue;
    ++tried;
    Gl2Mat inv = m.inverse();
    CHECK(m.mul(inv) == Gl2Mat::identity(ell));
    CHECK(inv.mul(m) == Gl2Mat::identity(ell));
    CHECK(Gl2Mat::decode(ell, m.encode()) == m);
  }
  CHECK_THROWS_AS(Gl2Mat(5, 1, 2, 2, 4).inverse(), std::domain_error);
}

TEST_CASE("GTuple conjugation and char_poly_product behave") {
  Gl2Mat a = Gl2Mat::diag(5, 2, 3);
  Gl2Mat b(5, 1, 1, 0, 1);
  GTuple t({a, b});
  GTuple s({Gl2Mat(5, 1, 2, 0, 1), Gl2Mat(5, 0, 1, 4, 0)});
  GTuple c = t.conj(s);
  // conjugation preserves component char polys
  CHECK(char_poly(c.mats[0]).tr == char_poly(a).tr);
  CHECK(char_poly(c.mats[0]).det == char_poly(a).det);
  CHECK(char_poly(c.mats[1]).tr == char_poly(b).tr);
  CHECK(t.trace_sum() == (2 + 3 + 1 + 1) % 5);

  // (X^2-5X+6)(X^2-2X+1) mod 5 = (X^2+1)(X^2+3X+1)
  auto cp = char_poly_product(t);
  REQUIRE(cp.size() == 5);
  // degree-4 product, leading coeff 1
  CHECK(cp[4] == 1);
  // constant term = product of dets = 6*1 = 1 mod 5
  CHECK(cp[0] == 1);
}

TEST_CASE("group_order matches a brute-force scan at g = 1") {
  for (u64 ell : {3ull, 5ull}) {
    for (SubgroupKind k :
         {SubgroupKind::Gl2, SubgroupKind::FullProduct, SubgroupKind::G,
          SubgroupKind::BorelProduct, SubgroupKind::B, SubgroupKind::U,
          SubgroupKind::Uprime, SubgroupKind::T, SubgroupKind::NonSplitCartan}) {
      Subgroup sg{k, {}};
      CHECK_MESSAGE(group_order(sg, ell, 1) == brute_order_g1(sg, ell),
                    subgroup_kind_name(k) << " ell=" << ell);
    }
  }
}

TEST_CASE("closed-form orders at hand-checked values") {
  CHECK(group_order({SubgroupKind::Gl2, {}}, 3, 1) == 48);
  CHECK(group_order({SubgroupKind::Gl2, {}}, 5, 1) == 480);
  CHECK(group_order({SubgroupKind::FullProduct, {}}, 3, 2) == 48 * 48);
  CHECK(group_order({SubgroupKind::G, {}}, 3, 2) == 2 * 24 * 24);
  CHECK(group_order({SubgroupKind::BorelProduct, {}}, 3, 2) == 12 * 12);
  CHECK(group_order({SubgroupKind::B, {}}, 3, 2) == 8 * 9);  // (l-1)^{g+1} l^g
  CHECK(group_order({SubgroupKind::U, {}}, 3, 2) == 9);
  CHECK(group_order({SubgroupKind::Uprime, {}}, 3, 2) == 18);
  CHECK(group_order({SubgroupKind::T, {}}, 3, 2) == 8);
  CHECK(group_order({SubgroupKind::NonSplitCartan, {}}, 3, 2) == 8 * 4);
}

TEST_CASE("enumerator yields exactly the members, without repeats") {
  for (u64 ell : {3ull, 5ull}) {
    for (u32 g : {1u, 2u}) {
      for (SubgroupKind k :
           {SubgroupKind::FullProduct, SubgroupKind::G, SubgroupKind::BorelProduct,
            SubgroupKind::B, SubgroupKind::U, SubgroupKind::Uprime, SubgroupKind::T,
            SubgroupKind::NonSplitCartan}) {
        Subgroup sg{k, {}};
        u128 order = group_order(sg, ell, g);
        if (order > 2'000'000) continue;  // keep the suite quick
        Enumerator en(sg, ell, g, 20'000'000);
        CHECK(en.size() == order);
        std::set<u128> seen;
        GTuple t;
        u128 n = 0;
        while (en.next(t)) {
          ++n;
          CHECK(is_member(t, sg, ell, g));
          seen.insert(t.encode());
        }
        CHECK(n == order);
        CHECK(static_cast<u128>(seen.size()) == order);
      }
    }
  }
}

TEST_CASE("enumerator reset replays the identical stream") {
  Subgroup sg{SubgroupKind::B, {}};
  Enumerator en(sg, 5, 1);
  std::vector<u128> first;
  GTuple t;
  while (en.next(t)) first.push_back(t.encode());
  en.reset();
  std::vector<u128> second;
  while (en.next(t)) second.push_back(t.encode());
  CHECK(first == second);
}

TEST_CASE("size guard trips on oversized enumerations") {
  // |GL2(7)|^3 = 2016^3 ~ 8.2e9 >> 2e7
  CHECK_THROWS_AS(Enumerator({SubgroupKind::FullProduct, {}}, 7, 3),
                  SizeGuardError);
  // explicit tiny cap
  CHECK_THROWS_AS(Enumerator({SubgroupKind::Gl2, {}}, 5, 1, 100), SizeGuardError);
  // raising the cap clears it
  CHECK_NOTHROW(Enumerator({SubgroupKind::Gl2, {}}, 5, 1, 1000));
}

TEST_CASE("subgroup kind names round-trip through the parser") {
  for (SubgroupKind k :
       {SubgroupKind::Gl2, SubgroupKind::FullProduct, SubgroupKind::G,
        SubgroupKind::BorelProduct, SubgroupKind::B, SubgroupKind::U,
        SubgroupKind::Uprime, SubgroupKind::T, SubgroupKind::NonSplitCartan}) {
    auto back = parse_subgroup_kind(subgroup_kind_name(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(!parse_subgroup_kind("nonsense").has_value());
}

TEST_CASE("conjugacy sets at ell = 3, g = 1 match hand enumeration") {
  ConjSet c = conj_set({ConjSetKind::C, 0, 1.0, {}}, 3, 1);
  CHECK(c.elems.size() == 12);  // conjugates of diag(1,2)
  for (const auto& e : c.elems) CHECK(in_conj_set_c(e, 0));

  ConjSet cb = conj_set({ConjSetKind::CBorel, 0, 1.0, {}}, 3, 1);
  CHECK(cb.elems.size() == 6);

  ConjSet ct = conj_set({ConjSetKind::CTorus, 0, 1.0, {}}, 3, 1);
  REQUIRE(ct.elems.size() == 2);
  std::set<u128> codes;
  for (const auto& e : ct.elems) codes.insert(e.encode());
  std::set<u128> want{GTuple({Gl2Mat::diag(3, 1, 2)}).encode(),
                      GTuple({Gl2Mat::diag(3, 2, 1)}).encode()};
  CHECK(codes == want);

  // t = 1: trace must be -1 = 2 mod 3; only diag(1,1) qualifies
  ConjSet ct1 = conj_set({ConjSetKind::CTorus, 1, 1.0, {}}, 3, 1);
  REQUIRE(ct1.elems.size() == 1);
  CHECK(ct1.elems[0] == GTuple({Gl2Mat::diag(3, 1, 1)}));

  ConjSet ch = conj_set({ConjSetKind::CHatBorel, 0, 1.0, {}}, 3, 1);
  CHECK(ch.cosets);
  CHECK(ch.coset_size == 3);
  CHECK(ch.elems.size() == 2);
}

TEST_CASE("conj_set C agrees with a direct GL2(5) filter for every t") {
  for (i64 t = 0; t < 5; ++t) {
    std::set<u128> brute;
    for (u64 code = 0; code < 625; ++code) {
      Gl2Mat m = Gl2Mat::decode(5, code);
      if (!m.invertible()) continue;
      GTuple tup({m});
      if (in_conj_set_c(tup, t)) brute.insert(tup.encode());
    }
    ConjSet built = conj_set({ConjSetKind::C, t, 1.0, {}}, 5, 1);
    std::set<u128> got;
    for (const auto& e : built.elems) got.insert(e.encode());
    CHECK_MESSAGE(got == brute, "t=" << t);
  }
}

TEST_CASE("range variants union the integer trace window") {
  // z = 1 at ell = 5: integer t in {-1, 0, 1}, all distinct residues
  ConjSet r = conj_set({ConjSetKind::CRange, 0, 1.0, {}}, 5, 1);
  u64 total = 0;
  for (i64 t : {-1, 0, 1})
    total += conj_set({ConjSetKind::C, t, 1.0, {}}, 5, 1).elems.size();
  CHECK(r.elems.size() == total);

  // z = ell: residues wrap, union must dedupe to the t-universe
  ConjSet rw = conj_set({ConjSetKind::CRange, 0, 5.0, {}}, 5, 1);
  u64 universe = 0;
  for (i64 t = 0; t < 5; ++t)
    universe += conj_set({ConjSetKind::C, t, 1.0, {}}, 5, 1).elems.size();
  CHECK(rw.elems.size() == universe);
}

TEST_CASE("CNs collects non-split Cartan tuples with the right trace") {
  ConjSet ns = conj_set({ConjSetKind::CNs, 0, 1.0, {}}, 3, 1);
  for (const auto& e : ns.elems) {
    CHECK(e.trace_sum() == 0);
    CHECK(is_member(e, {SubgroupKind::NonSplitCartan, {}}, 3, 1));
  }
  // trace 0 in the Cartan: a = 0, b != 0 and det = -xi b^2 ranges over
  // values; count directly
  u128 brute = 0;
  for (const auto& t : enumerate_all({SubgroupKind::NonSplitCartan, {}}, 3, 1))
    if (t.trace_sum() == 0) ++brute;
  CHECK(static_cast<u128>(ns.elems.size()) == brute);
}

TEST_CASE("borel_conjugator triangularizes every split matrix") {
  for (u64 ell : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    for (u64 code = 0; code < ell * ell * ell * ell; ++code) {
      Gl2Mat m = Gl2Mat::decode(ell, code);
      if (!m.invertible()) continue;
      CharPoly2 cp = char_poly(m);
      if (cp.kind == EigKind::NonSplit) {
        CHECK_THROWS_AS(borel_conjugator(m), std::domain_error);
        continue;
      }
      Gl2Mat n = borel_conjugator(m);
      CHECK(n.det() == 1);
      Gl2Mat conj = n.mul(m).mul(n.inverse());
      CHECK(conj.c == 0);
      CHECK(conj.trace() == m.trace());
      CHECK(conj.det() == m.det());
    }
  }
  CHECK_THROWS_AS(borel_conjugator(Gl2Mat(5, 0, 0, 0, 0)), std::domain_error);
}

TEST_CASE("tuple borel_conjugator lands in G and triangularizes componentwise") {
  const u64 ell = 7;
  SplitMix64 rng(7);
  int done = 0;
  while (done < 100) {
    Gl2Mat m1 = Gl2Mat::decode(ell, rng.below(ell * ell * ell * ell));
    Gl2Mat m2 = Gl2Mat::decode(ell, rng.below(ell * ell * ell * ell));
    if (!m1.invertible() || !m2.invertible()) continue;
    if (char_poly(m1).kind == EigKind::NonSplit) continue;
    if (char_poly(m2).kind == EigKind::NonSplit) continue;
    ++done;
    GTuple t({m1, m2});
    GTuple n = borel_conjugator(t);
    CHECK(is_member(n, {SubgroupKind::G, {}}, ell, 2));
    for (auto& c : n.mats) CHECK(c.det() == 1);
    GTuple moved = t.conj(n);
    for (auto& c : moved.mats) CHECK(c.c == 0);
  }
}

TEST_CASE("every lemma verifier passes on the small grid") {
  for (const auto& id : known_lemma_ids()) {
    for (u64 ell : {3ull, 5ull}) {
      for (u32 g : {1u, 2u}) {
        LemmaParams params;
        params.seed = 1;
        LemmaReport rep = verify_lemma(id, ell, g, params);
        CHECK_MESSAGE(rep.pass, id << " ell=" << ell << " g=" << g << " "
                                   << (rep.counterexample ? *rep.counterexample
                                                          : std::string()));
        CHECK(rep.lemma == id);
        CHECK(!rep.checks.empty());
        for (const auto& c : rep.checks)
          CHECK_MESSAGE(c.pass, id << "/" << c.name << ": " << c.detail);
      }
    }
  }
}

TEST_CASE("lemma verifiers enforce the ell vs 2g precondition") {
  LemmaParams params;
  CHECK_THROWS_WITH_AS(verify_lemma("L4.1", 3, 3, params),
                       doctest::Contains("ell must not divide 2g"),
                       std::invalid_argument);
  CHECK_THROWS_AS(verify_lemma("L5.1", 5, 5, params), std::invalid_argument);
  CHECK_THROWS_AS(verify_lemma("no-such-lemma", 5, 1, params),
                  std::invalid_argument);
}

TEST_CASE("L4.3 coset count fixture at ell = 3, g = 2") {
  LemmaParams params;
  LemmaReport rep = verify_lemma("L4.3", 3, 2, params);
  REQUIRE(rep.pass);
  // |B| = (l-1)^{g+1} l^g = 8*9 = 72, |U| = 9, so B/U has 8 cosets
  CHECK(card_value(rep, "cosets_B_mod_U") == "8");
  CHECK(card_value(rep, "|T|") == "8");
}

TEST_CASE("L5.4 torus cardinality fixture at ell = 3, t = 1") {
  LemmaParams params;
  params.t = 1;
  LemmaReport rep = verify_lemma("L5.4", 3, 1, params);
  REQUIRE(rep.pass);
  CHECK(card_value(rep, "|CTorus|") == "1");
  CHECK(card_value(rep, "|CBorel|") == "3");  // ell^g * |CTorus|
}

TEST_CASE("generator certification agrees with literal enumeration") {
  // L5.1's closure checks run generator-certified; re-verify the central
  // claim by brute force at ell=3, g=1: C is stable under all of G.
  ConjSet c = conj_set({ConjSetKind::C, 0, 1.0, {}}, 3, 1);
  std::set<u128> codes;
  for (const auto& e : c.elems) codes.insert(e.encode());
  for (const auto& s : enumerate_all({SubgroupKind::G, {}}, 3, 1))
    for (const auto& e : c.elems)
      CHECK(codes.count(e.conj(s).encode()) == 1);

  LemmaParams params;
  params.seed = 99;
  LemmaReport rep = verify_lemma("L5.1", 3, 1, params);
  CHECK(rep.pass);
  CHECK((rep.method == "generators" || rep.method == "mixed" ||
         rep.method == "exhaustive"));
}

TEST_CASE("orders verifier covers every kind and reports counts") {
  LemmaParams params;
  LemmaReport rep = verify_lemma("orders", 5, 2, params);
  REQUIRE(rep.pass);
  CHECK(card_value(rep, "|B|") == to_string_u128(group_order({SubgroupKind::B, {}}, 5, 2)));
  CHECK(card_value(rep, "|T|") == to_string_u128(group_order({SubgroupKind::T, {}}, 5, 2)));
}

TEST_CASE("C2.2-hyp verifier passes and reports quotient facts") {
  LemmaParams params;
  LemmaReport rep = verify_lemma("C2.2-hyp", 5, 1, params);
  REQUIRE(rep.pass);
  bool saw_normal = false;
  for (const auto& c : rep.checks)
    if (c.name.find("normal_in_B") != std::string::npos) saw_normal = true;
  CHECK(saw_normal);
}
