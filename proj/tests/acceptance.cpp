// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parikh/parikh.hpp"
#include "support.hpp"

using namespace parikh;
using namespace parikh::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail << what;
    }
  }
};

PointSet basis_points(const SemilinearBasis& b, const Box& box) {
  return oracle_semilinear_points(b, box);
}

void frobenius(Outcome& out) {
  auto t0 = Clock::now();
  GeneratorSet v(1, {IntVector{2}, IntVector{3}});
  ConeNormalForm f = normalize_cone(v, NormalizeMode::exact());
  Box box(1, 100);
  PointSet expected = points_where(box, [](const IntVector& p) { return p[0] != 1; });
  BoxComparison cmp = compare_on_box(basis_points(f.basis, box), expected, box);
  out.require(cmp.equal, "point set differs from N \\ {1}: " + cmp.to_string());
  for (const auto& lb : f.basis)
    out.require(lb.generators.size() == 1, "basis " + lb.to_string() + " has != 1 generator");
  out.require(f.verified, "exact mode result flagged unverified");
  double s = seconds_since(t0);
  out.require(s < 5.0, "took " + std::to_string(s) + " s");
  out.detail << f.basis.size() << " linear sets, " << s << " s";
}

void partitions(Outcome& out) {
  auto t0 = Clock::now();
  for (long long n = 1; n <= 5; ++n) {
    for (long long k = 1; k <= 3; ++k) {
      Nfa a = gen_partition_dfa(n, k);
      ParikhImage img = parikh_image(a);
      const long long want = binomial(n + k - 1, k - 1);
      const std::string at = "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ") ";
      out.require(static_cast<long long>(img.basis.size()) == want,
                  at + "has " + std::to_string(img.basis.size()) + " bases, want " +
                      std::to_string(want));
      for (const auto& lb : img.basis)
        out.require(lb.generators.empty(), at + "basis with generators " + lb.to_string());
      Box box(static_cast<std::size_t>(k), n);
      PointSet pts = basis_points(img.basis, box);
      out.require(static_cast<long long>(pts.size()) == want, at + "point count differs");
      BoxComparison cmp = compare_on_box(pts, oracle_parikh_points(a, box), box);
      out.require(cmp.equal, at + cmp.to_string());
    }
  }
  double s = seconds_since(t0);
  out.require(s < 30.0, "took " + std::to_string(s) + " s");
  out.detail << "15 automata, " << s << " s";
}

void doubling(Outcome& out) {
  auto t0 = Clock::now();
  for (long long n = 1; n <= 10; ++n) {
    const long long top = 1LL << n;
    std::set<long long> want;
    for (long long i = 0; i < top; ++i) want.insert(i);
    out.require(unary_cfg_lengths(gen_doubling_cfg(n), top) == want,
                "length set wrong at n=" + std::to_string(n));
  }
  double s = seconds_since(t0);
  out.require(s < 5.0, "took " + std::to_string(s) + " s");
  out.detail << "n=1..10, " << s << " s";
}

void quadratic(Outcome& out) {
  for (long long n = 2; n <= 3; ++n) {
    auto t0 = Clock::now();
    Nfa a = gen_quadratic_dfa(n);
    ParikhImage img = parikh_image(a);
    Box box(a.alphabet_size(), 8);
    BoxComparison cmp = compare_on_box(basis_points(img.basis, box), oracle_parikh_points(a, box), box);
    out.require(cmp.equal, "n=" + std::to_string(n) + ": " + cmp.to_string());
    Integer best = 0;
    for (const auto& lb : img.basis)
      if (lb.offset[QuadraticLetters::a - 1] > best) best = lb.offset[QuadraticLetters::a - 1];
    const long long need = n * (n + 1) / 2;
    out.require(best >= need, "n=" + std::to_string(n) + ": largest a-offset " + best.str() +
                                  " < " + std::to_string(need));
    double s = seconds_since(t0);
    if (n == 3) out.require(s < 300.0, "n=3 took " + std::to_string(s) + " s");
    out.detail << "n=" << n << ": " << img.basis.size() << " bases, max a-offset " << best
               << ", " << s << " s; ";
  }
}

void random_equivalence(Outcome& out) {
  auto t0 = Clock::now();
  Rng rng(20240501);
  std::size_t bases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Nfa a = random_nfa(rng, 5, 3);
    ParikhImage img = parikh_image(a);
    bases += img.basis.size();
    Box box(a.alphabet_size(), 10);
    BoxComparison cmp = compare_on_box(basis_points(img.basis, box), oracle_parikh_points(a, box), box);
    out.require(cmp.equal, "trial " + std::to_string(trial) + " (" +
                               std::to_string(a.states()) + " states, " +
                               std::to_string(a.alphabet_size()) + " letters): " + cmp.to_string());
  }
  double s = seconds_since(t0);
  out.require(s < 600.0, "took " + std::to_string(s) + " s");
  out.detail << "100 automata, " << bases << " bases total, " << s << " s";
}

void normalization(Outcome& out) {
  auto t0 = Clock::now();
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratorSet v = random_generators(rng, 2, 4, 0, 4);
    ConeNormalForm f = normalize_cone(v, NormalizeMode::bounded(64));
    Box box(2, 20);
    BoxComparison cmp = compare_on_box(basis_points(f.basis, box), oracle_cone_points(v, box), box);
    const std::string at = "V=" + v.to_string() + ": ";
    out.require(cmp.equal, at + cmp.to_string());
    for (const auto& lb : f.basis) {
      out.require(lb.generators.size() <= 2, at + "too many generators in " + lb.to_string());
      out.require(lb.generators.is_subset_of(v), at + "generators not from V in " + lb.to_string());
      out.require(is_independent(lb.generators), at + "dependent generators in " + lb.to_string());
    }
  }
  out.detail << "50 generator sets, " << seconds_since(t0) << " s";
}

void binary_membership(Outcome& out) {
  Nfa parity(2, 1, 0, {1}, {{0, 1, 1}, {1, 1, 0}});
  DecisionSession session;
  session.image(parity);
  const Integer big = boost::multiprecision::pow(Integer(10), 18);
  auto t0 = Clock::now();
  MemberResult even = session.nfa_member(parity, IntVector{big});
  MemberResult odd = session.nfa_member(parity, IntVector{big + 1});
  double ms = seconds_since(t0) * 1000.0;
  out.require(!even.member && even.verified, "10^18 reported as a member");
  out.require(odd.member, "10^18 + 1 not reported as a member");
  out.require(ms < 100.0, "queries took " + std::to_string(ms) + " ms");
  out.detail << "two queries in " << ms << " ms";
}

void integer_programs(Outcome& out) {
  auto t0 = Clock::now();
  DecisionSession session;
  int infeasible_at = -1, infeasible_count = 0;
  for (long long b = 0; b <= 1000; ++b) {
    IpInstance inst = IpInstance::from_rows({{2, 3}}, IntVector{Integer(b)});
    Feasibility f = session.ip_feasible(inst, NormalizeMode::exact());
    const bool want = knapsack_reachable({2, 3}, b);
    out.require(f.feasible() == want && f.verified, "[[2,3]] disagrees at b=" + std::to_string(b));
    if (f.feasible()) out.require(inst.apply(*f.witness) == inst.b, "bad witness at b=" + std::to_string(b));
    if (!f.feasible()) {
      infeasible_at = static_cast<int>(b);
      ++infeasible_count;
    }
  }
  out.require(infeasible_count == 1 && infeasible_at == 1, "infeasible set is not exactly {1}");

  auto t1 = Clock::now();
  const Integer huge = boost::multiprecision::pow(Integer(10), 30);
  IpInstance big = IpInstance::from_rows({{2, 3}}, IntVector{huge});
  Feasibility fb = session.ip_feasible(big, NormalizeMode::exact());
  double s = seconds_since(t1);
  out.require(fb.feasible() && fb.witness && big.apply(*fb.witness) == big.b,
              "b=10^30 not answered feasible with a valid witness");
  out.require(s < 1.0, "b=10^30 took " + std::to_string(s) + " s");

  for (long long b = -50; b <= 50; ++b) {
    IpInstance inst = IpInstance::from_rows({{1, -1}}, IntVector{Integer(b)});
    Feasibility f = session.ip_feasible(inst, NormalizeMode::exact());
    out.require(f.feasible() && inst.apply(*f.witness) == inst.b,
                "[[1,-1]] not feasible at b=" + std::to_string(b));
  }
  out.detail << "10^30 in " << s * 1000.0 << " ms, total " << seconds_since(t0) << " s";
}

void hamiltonian(Outcome& out) {
  auto t0 = Clock::now();
  Rng rng(4242);
  int positives = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(rng, 5);
    DecisionSession session;
    MemberResult r = session.nfa_member(gen_hamiltonian_dfa(g), hamiltonian_query(g));
    const bool want = has_hamiltonian_path(g);
    positives += want;
    out.require(r.verified && r.member == want,
                "graph " + std::to_string(trial) + " (" + std::to_string(g.vertices) +
                    " vertices): got " + (r.member ? "true" : "false"));
  }
  out.detail << "50 graphs, " << positives << " with a path, " << seconds_since(t0) << " s";
}

void bound_formulas(Outcome& out) {
  struct Row {
    long long m, k, a;
    const char *t, *M, *N;
  };
  const Row rows[] = {{2, 1, 3, "3", "81", "246"},
                      {1, 1, 1, "1", "2", "3"},
                      {3, 2, 2, "4", "163840", "1310724"}};
  for (const auto& r : rows) {
    Bounds b = theoretical_bounds(r.m, r.k, Integer(r.a));
    out.require(b.t.str() == r.t && b.M.str() == r.M && b.N.str() == r.N,
                "(" + std::to_string(r.m) + "," + std::to_string(r.k) + "," + std::to_string(r.a) +
                    ") gave t=" + b.t.str() + " M=" + b.M.str() + " N=" + b.N.str());
  }
  out.detail << "3 evaluations";
}

void pivot_independence(Outcome& out) {
  auto t0 = Clock::now();
  Rng rng(9001);
  std::size_t entries = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Nfa a = random_nfa(rng, uniform(rng, 1, 4), 3,
                       std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    CycleTypeTable first = cycle_type_table(a, PivotRule::first_nonzero);
    CycleTypeTable last = cycle_type_table(a, PivotRule::last_nonzero);
    entries += first.size();
    out.require(first == last, "tables differ for trial " + std::to_string(trial));
  }
  out.detail << "20 automata, " << entries << " matrices, " << seconds_since(t0) << " s";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1 Frobenius normal form", frobenius},
      {"AC2 partition counts", partitions},
      {"AC3 doubling grammar lengths", doubling},
      {"AC4 quadratic offset", quadratic},
      {"AC5 randomized oracle equivalence", random_equivalence},
      {"AC6 normalization preserves semantics", normalization},
      {"AC7 binary-scale membership", binary_membership},
      {"AC8 integer program feasibility", integer_programs},
      {"AC9 Hamiltonian reduction", hamiltonian},
      {"AC10 bound formulas", bound_formulas},
      {"AC11 pivot independence", pivot_independence},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(static_cast<std::size_t>(std::atoi(argv[i])));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " exception: " << e.what();
    }
    failures += !out.pass;
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << criteria[i].first << " -- "
              << out.detail.str() << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failures ? 1 : 0;
}
