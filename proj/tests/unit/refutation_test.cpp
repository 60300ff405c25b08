#include <gtest/gtest.h>

#include "ggt/checker.hpp"
#include "ggt/pn.hpp"
#include "ggt/propagate.hpp"
#include "ggt/refutation.hpp"

namespace ggt {
namespace {

long choose3(int n) { return static_cast<long>(n) * (n - 1) * (n - 2) / 6; }

TEST(Pool, SmallInstancesCheck) {
  const std::vector<Profile> profiles{Profile::kValid, Profile::kRegular, Profile::kPool};
  for (int n = 4; n <= 7; ++n) {
    for (uint64_t seed = 0; seed < 3; ++seed) {
      Refutation r = build_pool_refutation(n, seed);
      Report rep = check_proof(r.proof, gen_ggt(n, seed), profiles);
      EXPECT_TRUE(rep.passed()) << "n=" << n << " seed=" << seed << "\n"
                                << rep.str().substr(0, 2000);
      EXPECT_TRUE(r.proof.conclusion().empty());
      EXPECT_EQ(r.stats.lines, r.proof.size());
    }
  }
}

TEST(Pool, StageAndCaseIvBounds) {
  for (int n = 4; n <= 10; ++n) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
      Refutation r = build_pool_refutation(n, seed);
      EXPECT_LE(r.stats.case_iv, 2 * choose3(n)) << n << "/" << seed;
      EXPECT_LE(r.stats.stages, 6 * choose3(n)) << n << "/" << seed;
    }
  }
}

TEST(Pool, Deterministic) {
  EXPECT_EQ(build_pool_refutation(6, 3).proof, build_pool_refutation(6, 3).proof);
  EXPECT_THROW(build_pool_refutation(3, 0), Error);
}

TEST(Regrti, InputLemmaProfile) {
  const std::vector<Profile> profiles{Profile::kValid, Profile::kRegular, Profile::kPool,
                                      Profile::kInputLemma};
  for (int n = 4; n <= 7; ++n) {
    Refutation r = build_regrti_refutation(n, 0);
    Report rep = check_proof(r.proof, gen_ggt(n, 0), profiles);
    EXPECT_TRUE(rep.passed()) << "n=" << n << "\n" << rep.str().substr(0, 2000);
    EXPECT_LE(static_cast<long>(r.proof.size()), r.stats.segment_bound);
  }
}

// Lemma targets that are transitivity clauses come from two guarded axioms.
TEST(Regrti, TransitivityLemmasHaveThreeNodeDerivations) {
  Derivation d = build_regrti_refutation(6, 1).proof;
  VarCodec codec(6);
  int seen = 0;
  for (const ProofNode& node : d.nodes) {
    if (node.rule != Rule::kLemmaRef) continue;
    const ProofNode& t = d.nodes[node.lemma];
    if (!match_transitivity(codec, t.clause)) continue;
    ++seen;
    ASSERT_FALSE(t.is_leaf());
    EXPECT_EQ(d.nodes[t.p1].rule, Rule::kAxiom);
    EXPECT_EQ(d.nodes[t.p2].rule, Rule::kAxiom);
  }
  EXPECT_GT(seen, 0);
}

TEST(Soundness, EveryClauseIsEntailed) {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    FormulaInstance f = gen_ggt(4, seed);
    for (LemmaMode mode : {LemmaMode::kPool, LemmaMode::kInput}) {
      Derivation d = build_refutation(4, seed, mode).proof;
      for (const ProofNode& node : d.nodes) {
        EXPECT_TRUE(semantic_entails(f.clauses, node.clause, 4)) << node.clause.str();
      }
    }
  }
}

Clause cl(std::initializer_list<int32_t> codes) {
  return Clause::from_codes(std::vector<int32_t>(codes));
}

// A GT_3 refutation in which the unit clause {~x02} is used twice. With
// `share` the second use points at the first derivation (a diamond);
// otherwise the derivation is repeated and the result is a tree. Nodes are
// added in postorder.
Derivation gt3_refutation(bool share) {
  Derivation d;
  d.family = Family::kGT;
  d.n = 3;
  auto derive_p = [&] {
    NodeId a5 = d.add_axiom(cl({1, -2, 3}));
    NodeId a2 = d.add_axiom(cl({1, -3}));
    NodeId s = d.add_inference(Rule::kResolve, Lit(3), a5, a2, cl({1, -2}));
    NodeId a1 = d.add_axiom(cl({-1, -2}));
    return d.add_inference(Rule::kResolve, Lit(1), s, a1, cl({-2}));
  };
  NodeId a3 = d.add_axiom(cl({2, 3}));
  NodeId p = derive_p();
  NodeId q = d.add_inference(Rule::kResolve, Lit(2), a3, p, cl({3}));
  NodeId a2 = d.add_axiom(cl({1, -3}));
  NodeId a4 = d.add_axiom(cl({-1, 2, -3}));
  NodeId m = d.add_inference(Rule::kResolve, Lit(1), a2, a4, cl({2, -3}));
  NodeId p2 = share ? p : derive_p();
  NodeId nn = d.add_inference(Rule::kResolve, Lit(2), m, p2, cl({-3}));
  d.add_inference(Rule::kResolve, Lit(3), q, nn, Clause());
  return d;
}

TEST(Unfold, TreeStaysTheSame) {
  Derivation tree = gt3_refutation(false);
  std::vector<Profile> valid{Profile::kValid};
  ASSERT_TRUE(check_proof(tree, gen_gt(3), valid).passed());
  EXPECT_EQ(unfold_to_input_lemmas(tree).nodes, tree.nodes);
  EXPECT_EQ(unfold(tree, LemmaMode::kPool).nodes, tree.nodes);
}

TEST(Unfold, DiamondSharesAnInputLemma) {
  Derivation d = gt3_refutation(true);
  std::vector<Profile> valid{Profile::kValid};
  ASSERT_TRUE(check_proof(d, gen_gt(3), valid).passed());
  Derivation t = unfold_to_input_lemmas(d);
  int refs = 0;
  for (const ProofNode& node : t.nodes) refs += node.rule == Rule::kLemmaRef;
  EXPECT_EQ(refs, 1);
  EXPECT_EQ(t.size(), d.size() + 1);
  std::vector<Profile> p{Profile::kValid, Profile::kInputLemma};
  Report rep = check_proof(t, gen_gt(3), p);
  EXPECT_TRUE(rep.passed()) << rep.str();
}

TEST(Unfold, PnBecomesInputLemmaTree) {
  Derivation pn = build_pn(6);
  Derivation t = unfold_to_input_lemmas(pn);
  std::vector<Profile> p{Profile::kValid, Profile::kRegular, Profile::kInputLemma};
  Report rep = check_proof(t, gen_gt(6), p);
  EXPECT_TRUE(rep.passed()) << rep.str().substr(0, 2000);
  EXPECT_LE(t.size(), pn.size() * pn.depth());
  EXPECT_EQ(t.shape, Shape::kTreeWithLemmas);
}

}  // namespace
}  // namespace ggt
