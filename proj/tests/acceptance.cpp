// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tqa/builtins.hpp"
#include "tqa/comparison.hpp"
#include "tqa/example83.hpp"
#include "tqa/resolutions.hpp"
#include "tqa/ring.hpp"

using namespace tqa;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the first few failures of a criterion.
struct Outcome {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    pass = false;
    if (notes.size() < 4) notes.push_back(what());
  }
  void absorb(const Report& rep, const std::string& tag) {
    for (const auto& c : rep.checks)
      expect(c.pass, [&] { return tag + ": " + c.name + " (degree " + std::to_string(c.degree) + ") " + c.witness; });
  }
};

Matrix dense(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (int v : row) r.back().emplace_back(v);
  }
  return Matrix::from_dense(r);
}

Quiver branching() { return Quiver({"u", "c", "w1", "w2"}, {{"p", 0, 1}, {"q", 1, 2}, {"r", 1, 3}}); }

std::string str(std::size_t v) { return std::to_string(v); }

// 1. Dimensions of the three-vertex example.
Outcome dimension_table() {
  Outcome o;
  for (int N : {3, 4, 5}) {
    const auto t0 = Clock::now();
    Cohomology H(TruncatedAlgebra(builtin::example83(), N));
    for (int n = 0; n <= 8; ++n) {
      const std::size_t want = n == 0 ? 2 : n == 1 ? 2 * N - 3 : 2 * N - 2;
      const std::size_t got = H.space(n).total();
      o.expect(got == want, [&] { return "N=" + std::to_string(N) + " H^" + std::to_string(n) + " = " + str(got); });
    }
    const double s = seconds_since(t0);
    o.expect(s < 10.0, [&] { return "N=" + std::to_string(N) + " took " + std::to_string(s) + " s"; });
  }
  return o;
}

// 2. Displayed coboundary blocks.
Outcome printed_matrices() {
  Outcome o;
  const Matrix d00 = dense({{-1, 1, 0}, {0, 0, 0}, {0, -1, 1}});
  const Matrix col = dense({{1}, {0}, {-1}});
  const Matrix d12k = dense({{-1, 1, 0}, {0, 0, 0}, {0, -1, 1}, {-1, 0, 1}});
  const Matrix dj2k = dense({{-1, 1, 0, 0}, {0, 0, 0, 0}, {0, -1, 1, 0}, {-1, 0, 1, 0}});
  for (int N : {3, 4}) {
    CochainComplex cx(TruncatedAlgebra(builtin::example83(), N));
    const Matrix d01 = dense({{N - 1}, {N}, {N - 1}, {N - 2}});
    auto check = [&](const std::string& name, int n, int i, int t, const Matrix& want) {
      o.expect(ex83::display_block(cx, n, i, t) == want, [&] { return "N=" + std::to_string(N) + " " + name; });
    };
    check("[D_0^0]", 0, 0, 1, d00);
    for (int j = 2; j <= N - 2; ++j) check("[D_" + std::to_string(j) + "^0]", 0, j, j + 1, col);
    check("[D_0^1]", 1, 0, N - 1, d01);
    for (int k : {1, 2}) {
      const std::string K = std::to_string(k);
      check("[D_1^{2k}] k=" + K, 2 * k, 1, 2, d12k);
      for (int j = 2; j <= N - 2; ++j) check("[D_" + std::to_string(j) + "^{2k}] k=" + K, 2 * k, j, j + 1, dj2k);
      check("[D_0^{2k+1}] k=" + K, 2 * k + 1, 0, N - 1, d01);
    }
  }
  return o;
}

// 3. Listed classes are jointly independent modulo coboundaries; listed
// coboundaries lie in the image.
Outcome table_membership() {
  Outcome o;
  for (int N : {3, 4}) {
    TruncatedAlgebra A(builtin::example83(), N);
    Cohomology H(A);
    const Quiver& q = A.quiver();
    for (int n = 0; n <= 5; ++n) {
      const PairBasis& B = H.complex().basis(n);
      Echelon span(B.size());
      for (const auto& b : H.space(n).image) span.insert(B.to_vec(b));
      for (const auto& cell : ex83::table(n, N)) {
        auto where = [&](const DualCochain& f) {
          return "N=" + std::to_string(N) + " H^" + std::to_string(n) + " row " + std::to_string(cell.row) + " " +
                 format_cochain(q, f);
        };
        for (const auto& f : cell.cocycles) {
          o.expect(H.is_cocycle(f), [&] { return where(f) + " is not a cocycle"; });
          o.expect(span.insert(B.to_vec(f)), [&] { return where(f) + " depends on earlier entries mod image"; });
        }
        for (const auto& f : cell.coboundaries)
          o.expect(H.is_coboundary(f), [&] { return where(f) + " is not a coboundary"; });
      }
    }
  }
  return o;
}

// 4. Products of omega classes.
Outcome omega_products() {
  Outcome o;
  const int N = 4;
  Cohomology H(TruncatedAlgebra(builtin::example83(), N));
  for (int n1 = 1; n1 <= 4; ++n1)
    for (int n2 = 1; n2 <= 4; ++n2)
      for (int j1 = 1; j1 <= N - 1; ++j1)
        for (int j2 = 1; j2 <= N - 1; ++j2) {
          const DualCochain p = cup(H, ex83::omega(n1, j1, N), ex83::omega(n2, j2, N));
          const bool live = (n1 % 2 == 0 || n2 % 2 == 0) && j1 + j2 < N;
          const bool ok = live ? H.same_class(p, ex83::omega(n1 + n2, j1 + j2, N)) : H.is_zero_class(p);
          o.expect(ok, [&] {
            std::ostringstream s;
            s << "omega(" << n1 << "," << j1 << ") u omega(" << n2 << "," << j2 << ")";
            return s.str();
          });
        }
  return o;
}

bool valid_poly(int n, int i, int N) { return n % 2 == 0 ? (i >= 0 && i < N) : (i >= 1 && i < N); }

// 5. The one-loop algebra: dimensions, product rule, generators.
Outcome one_loop() {
  Outcome o;
  for (int N = 2; N <= 5; ++N) {
    TruncatedAlgebra A(builtin::loop(), N);
    Cohomology H(A);
    const std::string tag = "N=" + std::to_string(N);
    for (int n = 0; n <= 8; ++n) {
      const std::size_t want = n == 0 ? N : N - 1;
      o.expect(H.space(n).total() == want, [&] { return tag + " dim H^" + std::to_string(n); });
    }
    auto f = [&](int n, int i) { return bar_pushforward(A, poly_cochain(n, i, N)); };
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; m + n <= 8; ++n)
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            if (!valid_poly(m, i, N) || !valid_poly(n, j, N)) continue;
            const DualCochain p = cup(H, f(m, i), f(n, j));
            const bool live = (m % 2 == 0 || n % 2 == 0) && i + j < N;
            const bool ok = live ? H.same_class(p, f(m + n, i + j)) : H.is_zero_class(p);
            o.expect(ok, [&] {
              std::ostringstream s;
              s << tag << " f(" << m << "," << i << ") u f(" << n << "," << j << ")";
              return s.str();
            });
          }
    // Monomials in f_{0,1}, f_{1,1}, f_{2,0}, including the empty one.
    const DualCochain g01 = f(0, 1), g11 = f(1, 1), g20 = f(2, 0);
    std::vector<Echelon> spans;
    for (int n = 0; n <= 6; ++n) spans.emplace_back(H.space(n).total());
    DualCochain unit{0, {}};
    unit.terms.add(ParallelPair{Path::vertex(0), Path::vertex(0)}, 1);
    for (int c = 0; 2 * c <= 6; ++c)
      for (int b = 0; b + 2 * c <= 6; ++b) {
        DualCochain m = unit;
        for (int t = 0; t < c; ++t) m = cup(H, m, g20);
        for (int t = 0; t < b; ++t) m = cup(H, m, g11);
        for (int a = 0; a < N; ++a) {
          if (a > 0) m = cup(H, m, g01);
          if (!m.empty()) spans[m.degree].insert(H.coordinates(m));
        }
      }
    for (int n = 0; n <= 6; ++n)
      o.expect(spans[n].rank() == H.space(n).total(),
               [&] { return tag + " generators span " + str(spans[n].rank()) + " of H^" + std::to_string(n); });
  }
  return o;
}

// 6. Resolution identities.
Outcome resolution_identities() {
  Outcome o;
  const auto t0 = Clock::now();
  o.absorb(verify_resolutions(TruncatedAlgebra(builtin::loop(), 2), 6), "loop N=2");
  o.absorb(verify_resolutions(TruncatedAlgebra(builtin::loop(), 3), 6), "loop N=3");
  o.absorb(verify_resolutions(TruncatedAlgebra(builtin::example83(), 3), 4), "example83 N=3");
  const double s = seconds_since(t0);
  o.expect(s < 60.0, [&] { return "took " + std::to_string(s) + " s"; });
  return o;
}

// 7. Comparison morphisms.
Outcome comparison_identities() {
  Outcome o;
  o.absorb(verify_comparison(TruncatedAlgebra(builtin::loop(), 2), 6), "loop N=2");
  o.absorb(verify_comparison(TruncatedAlgebra(builtin::loop(), 3), 6), "loop N=3");
  o.absorb(verify_comparison(TruncatedAlgebra(builtin::example83(), 3), 4), "example83 N=3");
  return o;
}

// 8. Composition complex and the phi maps.
Outcome composition_machinery() {
  Outcome o;
  for (int N = 2; N <= 4; ++N) {
    const std::string tag = "N=" + std::to_string(N);
    o.absorb(verify_compositions(N, 3, 12), tag);
    TruncatedAlgebra A(builtin::loop(), N);
    for (int n = 1; n <= 4; ++n) {
      Report r;
      r.checks.push_back(verify_phi(A, n));
      o.absorb(r, tag + " loop");
    }
  }
  return o;
}

// 9. Bar complex against the minimal complex.
Outcome oracle_agreement() {
  Outcome o;
  struct Case {
    Quiver q;
    int N, top;
    std::string tag;
  };
  for (const auto& c : std::vector<Case>{{builtin::loop(), 2, 6, "loop N=2"},
                                         {builtin::loop(), 3, 6, "loop N=3"},
                                         {builtin::example83(), 3, 4, "example83 N=3"}}) {
    TruncatedAlgebra A(c.q, c.N);
    Cohomology H(A);
    for (int n = 0; n <= c.top; ++n) {
      const std::size_t bar = bar_cohomology_oracle(A, n), min = H.space(n).total();
      o.expect(bar == min, [&] { return c.tag + " H^" + std::to_string(n) + ": " + str(min) + " vs " + str(bar); });
    }
  }
  return o;
}

// 10. Kernels of the even blocks are spanned by medal sums.
Outcome medal_kernel() {
  Outcome o;
  for (const auto& [q, N, tag] : std::vector<std::tuple<Quiver, int, std::string>>{
           {builtin::cycle(4), 3, "cycle4 N=3"}, {builtin::example83(), 3, "example83 N=3"},
           {builtin::example83(), 4, "example83 N=4"}}) {
    CochainComplex cx(TruncatedAlgebra(q, N));
    for (int k : {1, 2})
      for (int j = 1; j <= N - 2; ++j) {
        const int n = 2 * k;
        const Matrix b = cx.block(n, j, j + 1);
        const std::size_t ker = kernel_basis(b).size();
        const PairBasis& B = cx.basis(n);
        Echelon span(b.cols());
        std::size_t medals = 0;
        bool in_kernel = true;
        for (const auto& mc : medal_classes(q, j, middle_length(n, N))) {
          if (!mc.is_medal) continue;
          ++medals;
          SparseVec v;
          for (const auto& p : mc.members) v.emplace(*B.index(p) - B.row_begin(j), Rational(1));
          in_kernel = in_kernel && b.apply(v).empty();
          span.insert(v);
        }
        o.expect(medals == ker && in_kernel && span.rank() == ker, [&] {
          return tag + " k=" + std::to_string(k) + " j=" + std::to_string(j) + ": kernel " + str(ker) + ", medals " +
                 str(medals);
        });
      }
  }
  return o;
}

// 11. Positive-degree products vanish.
Outcome trivial_products() {
  Outcome o;
  for (const auto& [q, N, tag] : std::vector<std::tuple<Quiver, int, std::string>>{
           {builtin::linear(3), 2, "a3 N=2"}, {builtin::linear(3), 3, "a3 N=3"}, {branching(), 2, "branching N=2"},
           {branching(), 3, "branching N=3"}, {builtin::tensor(2), 3, "tensor2 N=3"}}) {
    TruncatedAlgebra A(q, N);
    Cohomology H(A);
    for (int n1 = 1; n1 <= 5; ++n1)
      for (int n2 = 1; n1 + n2 <= 6; ++n2) {
        const auto& s1 = H.space(n1);
        const auto& s2 = H.space(n2);
        for (const auto& f : s1.reps)
          for (const auto& g : s2.reps)
            o.expect(cup(H, f, g).empty(), [&] {
              return tag + " " + format_cochain(q, f) + " u " + format_cochain(q, g);
            });
      }
  }
  return o;
}

// 12. The three product constructions agree; odd.odd and N-th powers vanish.
Outcome product_cross_validation() {
  Outcome o;
  for (const auto& [q, N, tag] : std::vector<std::tuple<Quiver, int, std::string>>{
           {builtin::example83(), 3, "example83 N=3"}, {builtin::example83(), 4, "example83 N=4"},
           {builtin::loop(), 2, "loop N=2"}, {builtin::loop(), 3, "loop N=3"}, {builtin::cycle(3), 2, "cycle3 N=2"},
           {builtin::cycle(4), 3, "cycle4 N=3"}, {builtin::two_cycles(), 3, "two_cycles N=3"},
           {builtin::tensor(2), 3, "tensor2 N=3"}, {builtin::linear(3), 3, "a3 N=3"}}) {
    TruncatedAlgebra A(q, N);
    Cohomology H(A);
    auto name = [&](const DualCochain& f) { return "[" + format_cochain(q, f) + "]"; };
    for (int n1 = 0; n1 <= 4; ++n1)
      for (int n2 = 0; n1 + n2 <= 4; ++n2) {
        const auto& s1 = H.space(n1);
        const auto& s2 = H.space(n2);
        for (std::size_t a = 0; a < s1.total(); ++a)
          for (std::size_t b = 0; b < s2.total(); ++b) {
            if (s1.rep_rows[a] == 0 || s2.rep_rows[b] == 0) continue;
            const auto& f = s1.reps[a];
            const auto& g = s2.reps[b];
            auto pair = [&] { return tag + " " + name(f) + " u " + name(g); };
            const DualCochain vee = cup_vee(A, f, g);
            o.expect(vee == cup_cochain_full(A, f, g), [&] { return pair() + ": vee vs full"; });
            o.expect(vee == cup_bar_route(A, f, g), [&] { return pair() + ": vee vs bar route"; });
            if (n1 % 2 == 1 && n2 % 2 == 1) o.expect(H.is_zero_class(vee), [&] { return pair() + ": odd.odd"; });
          }
      }
    for (int n = 1; n * N <= 8; ++n) {
      const auto& sp = H.space(n);
      std::vector<DualCochain> targets;
      DualCochain sum{n, {}};
      for (std::size_t r = 0; r < sp.total(); ++r)
        if (sp.rep_rows[r] > 0) {
          targets.push_back(sp.reps[r]);
          sum += sp.reps[r];
        }
      if (!sum.empty()) targets.push_back(sum);
      for (const auto& f : targets) {
        DualCochain p = f;
        for (int t = 1; t < N && !p.empty(); ++t) p = cup(H, p, f);
        o.expect(p.empty(), [&] { return tag + " " + name(f) + "^N"; });
      }
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"three-vertex dimension table", dimension_table},
      {"three-vertex coboundary blocks", printed_matrices},
      {"three-vertex table membership", table_membership},
      {"omega product law", omega_products},
      {"one-loop dimensions, products, generators", one_loop},
      {"resolution identities", resolution_identities},
      {"comparison identities", comparison_identities},
      {"composition complex and phi", composition_machinery},
      {"bar oracle agreement", oracle_agreement},
      {"medal-kernel law", medal_kernel},
      {"triviality of positive products", trivial_products},
      {"product cross-validation", product_cross_validation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << o.checked
              << " checks, " << timing << ")\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    failures += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
