#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "pgst/certify/constructions.hpp"
#include "pgst/cli/fixtures.hpp"

namespace pgst::certify {
namespace {

using exact::parse_poly;
using graph::Graph;

SparsePoly P(const char* s) { return parse_poly(s); }

struct Named {
  Graph g;
  Vertex u, v;
};

Named fixture(const std::string& name) {
  const auto& f = cli::fixture(name);
  Graph g = f.graph();
  return {g, g.vertex(f.u), g.vertex(f.v)};
}

Graph with_pair(Graph g, Vertex u, Vertex v, const char* value) {
  g.add_to_potential(u, P(value));
  g.add_to_potential(v, P(value));
  return g;
}

Graph k2() {
  Graph g(2);
  g.add_edge(0, 1);
  return g;
}

Graph p3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

TEST(TrDeg, GBWithPotentialIsProven) {
  auto f = fixture("G_B");
  auto c = certify_tr_deg(with_pair(f.g, f.u, f.v, "Q"), f.u, f.v, "Q");
  EXPECT_EQ(c.verdict, Verdict::ProvenPGST);
  EXPECT_EQ(c.method, "tr_deg");
  EXPECT_EQ(c.evidence["p_minus"], "t^2 - Q*t - t + Q - 2");
  EXPECT_EQ(c.evidence["trace_plus"], "Q - 1");
  EXPECT_EQ(c.evidence["trace_minus"], "Q + 1");
  EXPECT_EQ(c.evidence["deg_plus"], 7);
  EXPECT_EQ(c.evidence["deg_minus"], 2);
  EXPECT_TRUE(reverify(c));
}

TEST(TrDeg, K2WithPotential) {
  auto c = certify_tr_deg(with_pair(k2(), 0, 1, "Q"), 0, 1, "Q");
  EXPECT_EQ(c.verdict, Verdict::ProvenPGST) << c.reason;
  EXPECT_EQ(c.evidence["trace_plus"], "Q + 1");
  EXPECT_EQ(c.evidence["trace_minus"], "Q - 1");
  EXPECT_EQ(c.evidence["deg_plus"], 1);
  EXPECT_EQ(c.evidence["deg_minus"], 1);
}

TEST(TrDeg, EqualRatiosAreInconclusive) {
  for (const char* name : {"G_D", "G_A"}) {
    auto f = fixture(name);
    auto c = certify_tr_deg(with_pair(f.g, f.u, f.v, "Q"), f.u, f.v, "Q");
    EXPECT_EQ(c.verdict, Verdict::Inconclusive) << name;
    EXPECT_NE(c.reason.find("Tr P+ / deg P+ = Tr P- / deg P-"), std::string::npos) << c.reason;
    EXPECT_TRUE(reverify(c));
  }
}

TEST(TrDeg, NotStronglyCospectralIsInconclusive) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  auto c = certify_tr_deg(with_pair(g, 0, 2, "Q"), 0, 2, "Q");
  EXPECT_EQ(c.verdict, Verdict::Inconclusive);
  EXPECT_FALSE(c.evidence["strongly_cospectral"].get<bool>());
  EXPECT_NE(c.reason.find("not strongly cospectral"), std::string::npos);
}

TEST(TrDeg, PreconditionErrors) {
  Graph k = k2();
  EXPECT_THROW(certify_tr_deg(k, 0, 1, "Q"), DomainError);
  Graph one = graph::add_potential(k, 0, P("Q"));
  EXPECT_THROW(certify_tr_deg(one, 0, 1, "Q"), DomainError);
  Graph leak = graph::add_potential(graph::attach_vertex(with_pair(k, 0, 1, "Q"), {0}), 2, P("Q"));
  EXPECT_THROW(certify_tr_deg(leak, 0, 1, "Q"), DomainError);
  EXPECT_THROW(certify_tr_deg(with_pair(p3(), 0, 1, "Q"), 0, 1, "Q"), NotCospectral);
  EXPECT_THROW(certify_tr_deg(with_pair(k, 0, 1, "Q"), 0, 0, "Q"), DomainError);
  EXPECT_THROW(certify_tr_deg(with_pair(k, 0, 1, "Q"), 0, 5, "Q"), StructuralError);
}

TEST(TrDeg, RandomVerdictsReverify) {
  std::mt19937 rng(11);
  int proven = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = gen::random_cospectral(rng, 7);
    auto c = certify_tr_deg(with_pair(inst.g, inst.u, inst.v, "Q"), inst.u, inst.v, "Q");
    EXPECT_TRUE(reverify(c)) << c.to_json().dump();
    if (c.verdict == Verdict::ProvenPGST) {
      ++proven;
      EXPECT_TRUE(c.evidence["strongly_cospectral"].get<bool>());
    }
  }
  EXPECT_GT(proven, 0);
}

TEST(StrongCospectrality, ObstructionForGBWithoutPotential) {
  auto f = fixture("G_B");
  auto c = strong_cospectrality_obstruction(graph::to_matrix(f.g), f.u, f.v);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->verdict, Verdict::ProvenNoPGST);
  EXPECT_EQ(c->evidence["gcd"], "t + 1");
  EXPECT_TRUE(reverify(*c));
  auto forged = *c;
  forged.evidence["p_minus"] = "t - 2";
  EXPECT_FALSE(reverify(forged));
  EXPECT_FALSE(strong_cospectrality_obstruction(graph::to_matrix(with_pair(f.g, f.u, f.v, "Q")), f.u, f.v));
  EXPECT_FALSE(strong_cospectrality_obstruction(graph::to_matrix(k2()), 0, 1));
}

TEST(StrongCospectrality, ObstructionForNonCospectralPair) {
  auto c = strong_cospectrality_obstruction(graph::to_matrix(p3()), 0, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->evidence["phi_minus_u"], "t^2 - 1");
  EXPECT_EQ(c->evidence["phi_minus_v"], "t^2");
  EXPECT_TRUE(reverify(*c));
}

TEST(Parity, EqualOddDegreesAndTraces) {
  auto f = fixture("G_D");
  auto d = spectral::decompose(graph::to_matrix(with_pair(f.g, f.u, f.v, "Q")), f.u, f.v);
  auto c = parity_obstruction(d);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->verdict, Verdict::ProvenNoPGST);
  EXPECT_EQ(c->method, "parity");
  EXPECT_EQ(c->evidence["relation_value"], "0");
  EXPECT_EQ(c->evidence["sum_l"], 5);
  EXPECT_EQ(c->evidence["sum_m"], -5);
  EXPECT_EQ(c->evidence["relation"]["l"].size(), 5u);
  EXPECT_TRUE(reverify(*c));

  auto tampered = *c;
  tampered.evidence["p_minus"] = "t^5 - 5*t^3 + 2*t^2 + 4*t - 3";
  tampered.evidence["relation"]["m"] = std::vector<long>(5, -1);
  tampered.evidence["p_plus"] = "t^5 - t^4 - 5*t^3 + 1";
  EXPECT_FALSE(reverify(tampered));
}

TEST(Parity, NoObstructionWhenDegreesOrTracesDiffer) {
  auto k = spectral::decompose(graph::to_matrix(with_pair(k2(), 0, 1, "Q")), 0, 1);
  EXPECT_FALSE(parity_obstruction(k));
  auto p = spectral::decompose(graph::to_matrix(p3()), 0, 2);
  EXPECT_FALSE(parity_obstruction(p));
  auto gb = fixture("G_B");
  EXPECT_FALSE(parity_obstruction(spectral::decompose(graph::to_matrix(gb.g), gb.u, gb.v)));
}

TEST(Heuristic, RationalPotentialOnGDHasRelation) {
  auto f = fixture("G_D");
  auto d = spectral::decompose(graph::to_matrix(with_pair(f.g, f.u, f.v, "1/3")), f.u, f.v);
  auto c = heuristic_obstruction(d, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->verdict, Verdict::HeuristicObstruction);
  EXPECT_EQ(c->method, "integer_relation");
  EXPECT_TRUE(reverify(*c));
  auto rt = Certificate::from_json(Json::parse(c->to_json().dump()));
  EXPECT_TRUE(reverify(rt));
  rt.evidence["relation"]["m"][0] = 0;
  EXPECT_FALSE(reverify(rt));
}

TEST(Heuristic, NoneForK2OrSymbolic) {
  auto plain = spectral::decompose(graph::to_matrix(k2()), 0, 1);
  EXPECT_FALSE(heuristic_obstruction(plain, 3));
  auto symbolic = spectral::decompose(graph::to_matrix(with_pair(k2(), 0, 1, "Q")), 0, 1);
  EXPECT_FALSE(heuristic_obstruction(symbolic));
}

TEST(CertificateJson, RoundTrip) {
  auto f = fixture("G_B");
  auto c = certify_tr_deg(with_pair(f.g, f.u, f.v, "Q"), f.u, f.v, "Q");
  auto back = Certificate::from_json(Json::parse(c.to_json().dump()));
  EXPECT_EQ(back.verdict, c.verdict);
  EXPECT_EQ(back.method, c.method);
  EXPECT_EQ(back.reason, c.reason);
  EXPECT_EQ(back.evidence, c.evidence);
  EXPECT_THROW(verdict_from_string("Maybe"), ParseError);
  for (auto v : {Verdict::ProvenPGST, Verdict::ProvenNoPGST, Verdict::HeuristicObstruction,
                 Verdict::Inconclusive})
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  Certificate none;
  EXPECT_TRUE(reverify(none));
}

TEST(PathCharpoly, MatchesDeterminantOracle) {
  for (std::size_t m = 1; m <= 9; ++m) {
    for (long c : {0L, 2L}) {
      Graph path = m >= 2 ? graph::path_graph(m) : Graph(1);
      for (Vertex x = 0; x < m; ++x) path.add_to_potential(x, SparsePoly(c));
      auto a = oracle::specialize(graph::to_matrix(path), {});
      auto p = path_charpoly(m, SparsePoly(c));
      for (int x = -3; x <= 3; ++x)
        EXPECT_EQ(p.evaluate_exact(exact::Rational(x)), oracle::charpoly_value(a, exact::Rational(x)))
            << m << " " << c << " " << x;
    }
  }
  EXPECT_EQ(path_charpoly(0), SparsePoly(1));
}

TEST(GlueLength, SmallestSeparatingPrime) {
  EXPECT_EQ(choose_glue_length(k2(), 0, 1), 4);
  auto gd = fixture("G_D");
  EXPECT_EQ(choose_glue_length(gd.g, gd.u, gd.v), 4);
  EXPECT_THROW(choose_glue_length(p3(), 0, 2), ZeroEigenvalueObstruction);
  auto gb = fixture("G_B");
  EXPECT_THROW(choose_glue_length(gb.g, gb.u, gb.v), ZeroEigenvalueObstruction);
  EXPECT_THROW(choose_glue_length(p3(), 0, 1), NotCospectral);
}

TEST(GlueLength, ChosenLengthIsDisjointAndMinimal) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = gen::random_cospectral(rng, 6);
    auto m = graph::to_matrix(inst.g);
    auto h = spectral::phi_deleted(m, {inst.u, inst.v});
    if (h.coeff_t(0).is_zero()) {
      EXPECT_THROW(choose_glue_length(inst.g, inst.u, inst.v), ZeroEigenvalueObstruction);
      continue;
    }
    long q = choose_glue_length(inst.g, inst.u, inst.v);
    long p = q / 2;
    ASSERT_TRUE(is_prime(p));
    // Deleting u, v from the glued graph leaves G \ {u, v} beside the path interior.
    auto glued = graph::to_matrix(graph::glue_path(inst.g, inst.u, inst.v, q));
    auto deleted = spectral::phi_deleted(glued, {inst.u, inst.v});
    EXPECT_EQ(deleted, h * path_charpoly(static_cast<std::size_t>(q - 1)));
    EXPECT_EQ(exact::poly_gcd_t(h, path_charpoly(static_cast<std::size_t>(q - 1))).degree_t(), 0u);
    for (long smaller = 2; smaller < p; ++smaller)
      if (is_prime(smaller)) {
        EXPECT_GT(exact::poly_gcd_t(h, path_charpoly(static_cast<std::size_t>(2 * smaller - 1))).degree_t(), 0u);
      }
  }
}

TEST(GluePot, P3NeedsShiftOne) {
  auto r = build_glue_pot(p3(), 0, 2, 3);
  EXPECT_EQ(r.shift, 1);
  EXPECT_EQ(r.graph.size(), 4u);
  EXPECT_TRUE(spectral::is_cospectral(graph::to_matrix(r.graph), 0, 2));
  EXPECT_EQ(r.graph.potential(3), SparsePoly(1));
  EXPECT_EQ(r.graph.potential(0), SparsePoly(1));
  EXPECT_EQ(r.graph.potential(2), SparsePoly(1));
  EXPECT_EQ(r.graph.potential(1), SparsePoly());
  EXPECT_THROW(build_glue_pot(p3(), 0, 2, 4), DomainError);
  EXPECT_THROW(build_glue_pot(p3(), 0, 2, 1), DomainError);
}

TEST(GluePot, FixtureShiftsAndVerdicts) {
  struct Case {
    const char* name;
    long k, shift;
  };
  for (auto [name, k, shift] : {Case{"G_B", 3, 2}, Case{"G_B", 5, 2}, Case{"G_B", 7, 3},
                                Case{"G_A", 3, 1}, Case{"G_A", 5, 1}, Case{"G_A", 7, 2}}) {
    auto f = fixture(name);
    auto r = build_glue_pot(f.g, f.u, f.v, k);
    EXPECT_EQ(r.shift, shift) << name << " k=" << k;
    EXPECT_EQ(r.graph.size(), f.g.size() + static_cast<std::size_t>(k - 2));
    auto c = certify_tr_deg(with_pair(r.graph, f.u, f.v, "Q"), f.u, f.v, "Q");
    EXPECT_EQ(c.verdict, Verdict::ProvenPGST) << name << " k=" << k << ": " << c.reason;
  }
}

TEST(ChangeTrace, GAWithFiveVertexPath) {
  auto f = fixture("G_A");
  auto r = build_change_trace(f.g, f.u, f.v, 5, "Qp");
  EXPECT_EQ(r.center, 10u);
  EXPECT_EQ(r.graph.size(), 12u);
  EXPECT_EQ(r.graph.potential(r.center), P("Qp"));
  auto c = certify_tr_deg(with_pair(r.graph, f.u, f.v, "Q"), f.u, f.v, "Q");
  EXPECT_EQ(c.verdict, Verdict::ProvenPGST) << c.reason;
  EXPECT_EQ(c.evidence["trace_plus"], "Q + Qp");
  EXPECT_EQ(c.evidence["trace_minus"], "Q");
  EXPECT_EQ(c.evidence["deg_plus"], 6);
  EXPECT_EQ(c.evidence["deg_minus"], 4);
  EXPECT_EQ(c.evidence["p_zero"], "t^2");
  EXPECT_TRUE(reverify(c));
  EXPECT_THROW(build_change_trace(f.g, f.u, f.v, 4, "Qp"), DomainError);
  EXPECT_THROW(build_change_trace(with_pair(f.g, f.u, f.v, "Qp"), f.u, f.v, 5, "Qp"), DomainError);
}

TEST(Equitable, GCPipelineAttachesW) {
  auto f = fixture("G_C");
  auto r = equitable_pipeline(f.g, f.u, f.v, "Q1", "Q2");
  EXPECT_TRUE(r.attached);
  EXPECT_EQ(r.graph.size(), 11u);
  EXPECT_EQ(r.w, 10u);
  const auto& c = r.certificate;
  EXPECT_EQ(c.verdict, Verdict::ProvenPGST) << c.reason;
  EXPECT_EQ(c.method, "equitable");
  EXPECT_EQ(c.evidence["trace_plus"], "Q1 + Q2 + 2");
  EXPECT_EQ(c.evidence["trace_minus"], "Q1");
  EXPECT_EQ(c.evidence["deg_plus"], 3);
  EXPECT_EQ(c.evidence["deg_minus"], 4);
  EXPECT_EQ(c.evidence["deg_zero"], 4);
  EXPECT_TRUE(c.evidence["trace_split"].get<bool>());
  EXPECT_TRUE(reverify(c));
  EXPECT_TRUE(graph::verify_equitable(
      r.graph, Partition(11, {{8, 9}, {10}, {0, 1, 2, 3, 4, 5, 6, 7}})));
}

TEST(Equitable, BookTriangle) {
  auto book = graph::attach_vertex(k2(), {0, 1});
  auto c = certify_equitable(book, 0, 1, 2, "Q1", "Q2");
  EXPECT_EQ(c.verdict, Verdict::ProvenPGST) << c.reason;
  EXPECT_TRUE(reverify(c));
  auto r = equitable_pipeline(book, 0, 1, "Q1", "Q2");
  EXPECT_FALSE(r.attached);
  EXPECT_EQ(r.w, 2u);
}

TEST(Equitable, Preconditions) {
  auto f = fixture("G_C");
  EXPECT_THROW(certify_equitable(f.g, f.u, f.v, f.g.vertex("o0"), "Q1", "Q2"), DomainError);
  EXPECT_THROW(certify_equitable(f.g, f.u, f.v, f.u, "Q1", "Q2"), DomainError);
  auto book = graph::attach_vertex(k2(), {0, 1});
  EXPECT_THROW(certify_equitable(book, 0, 1, 2, "Q", "Q"), DomainError);
  EXPECT_THROW(equitable_pipeline(p3(), 0, 1, "Q1", "Q2"), DomainError);
}

TEST(Equitable, TamperedCertificateFailsReverify) {
  auto book = graph::attach_vertex(k2(), {0, 1});
  auto c = certify_equitable(book, 0, 1, 2, "Q1", "Q2");
  c.evidence["trace_split"] = false;
  EXPECT_FALSE(reverify(c));
}

}  // namespace
}  // namespace pgst::certify
