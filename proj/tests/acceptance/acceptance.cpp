// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "generators.hpp"

#include "gluedforms/metric.hpp"
#include "gluedforms/parser.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

using namespace gluedforms;
using gftest::Gen;
using gftest::TestPoly;

namespace {

// Empty string means pass; anything else is the first failure.
using Check = std::function<std::string()>;

GluedPoint at(Side s, ExactPoint c) { return GluedPoint{PiecePoint{s, std::move(c)}, false}; }

std::string describe(const GluedPoint& x) {
  std::ostringstream os;
  os << to_string(x.rep.side) << ":(";
  for (std::size_t i = 0; i < x.rep.coords.size(); ++i) os << (i ? ", " : "") << x.rep.coords[i];
  os << ")";
  return os.str();
}

bool exactly(const EqualityResult& r) { return r.equal && r.mode == VerdictMode::Exact; }

// A y-axis form pair made compatible on the test side: h2's part free of x0
// is replaced by g2's.
std::pair<std::vector<TestPoly>, std::vector<TestPoly>> compatible_polys(Gen& gen, int degree) {
  auto g = gen.polys(2, 2, degree);
  auto h = gen.polys(2, 2, degree);
  h[1] = h[1] + (g[1].with_zero(0) + gftest::constant(2, -1) * h[1].with_zero(0));
  return {g, h};
}

std::string compatibility_criterion() {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  Gen gen(1001);
  int agreeing = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TestPoly> g, h;
    if (trial % 2 == 0) std::tie(g, h) = compatible_polys(gen, 3);
    else {
      g = gen.polys(2, 2, 3);
      h = gen.polys(2, 2, 3);
    }
    const bool oracle = g[1].with_zero(0) == h[1].with_zero(0);
    agreeing += oracle;
    const auto r = check_compatible(X, make_form(X.piece1, gftest::exprs(g)), make_form(X.piece2, gftest::exprs(h)));
    if (r.compatible != oracle || r.mode != VerdictMode::Exact)
      return "trial " + std::to_string(trial) + ": check_compatible says " + (r.compatible ? "true" : "false");
  }
  if (agreeing == 0 || agreeing == 50) return "oracle verdicts were all the same";
  return "";
}

struct DimCase {
  const char* fixture;
  GluedPoint x;
  std::size_t dim;
};

std::string fibre_dimension_criterion() {
  const std::vector<DimCase> cases{
      {"yaxis", at(Side::P1, {1, 5}), 2},
      {"yaxis", at(Side::P1, {Rational(-1, 3), 0}), 2},
      {"yaxis", at(Side::P2, {2, -1}), 2},
      {"yaxis", at(Side::P2, {Rational(7, 2), 4}), 2},
      {"yaxis", at(Side::P2, {0, 5}), 3},
      {"yaxis", at(Side::P1, {0, Rational(-2, 3)}), 3},
      {"wedge", at(Side::P1, {0, 0}), 4},
      {"wedge", at(Side::P2, {0, 0}), 4},
      {"wedge", at(Side::P1, {1, 0}), 2},
      {"wedge", at(Side::P2, {0, Rational(1, 2)}), 2},
      {"line_identity", at(Side::P1, {0}), 1},
      {"line_identity", at(Side::P2, {3}), 1},
      {"line_identity", at(Side::P1, {Rational(-5, 4)}), 1},
  };
  for (const auto& c : cases) {
    const auto scene = gftest::fixture(c.fixture);
    const auto d = fibre_at(scene.glued("GX"), c.x).dim;
    if (d != c.dim)
      return std::string(c.fixture) + " at " + describe(c.x) + ": dim " + std::to_string(d) + ", expected " +
             std::to_string(c.dim);
  }
  return "";
}

std::string oracle_criterion() {
  // two interior points and three locus points per fixture; the wedge locus is
  // a single point, so it appears through both lifts and the lift in piece 1
  // is repeated, and the full identification has no interior points at all
  const std::vector<std::pair<const char*, std::vector<GluedPoint>>> fixtures{
      {"yaxis",
       {at(Side::P1, {1, 5}), at(Side::P2, {-2, 1}), at(Side::P2, {0, 0}), at(Side::P2, {0, 5}),
        at(Side::P1, {0, Rational(-1, 2)})}},
      {"wedge",
       {at(Side::P1, {1, 0}), at(Side::P2, {0, 1}), at(Side::P1, {0, 0}), at(Side::P2, {0, 0}),
        at(Side::P1, {0, 0})}},
      {"line_identity",
       {at(Side::P1, {2}), at(Side::P2, {-3}), at(Side::P2, {0}), at(Side::P1, {Rational(1, 2)}),
        at(Side::P2, {7})}},
  };
  for (const auto& [name, points] : fixtures) {
    const auto scene = gftest::fixture(name);
    const auto& X = scene.glued("GX");
    for (const auto& x : points) {
      const auto expected = fibre_at(X, x).dim;
      for (unsigned degree = 1; degree <= 3; ++degree) {
        const auto got = fibre_oracle(X, x, degree);
        if (got != expected)
          return std::string(name) + " at " + describe(x) + " degree " + std::to_string(degree) + ": oracle " +
                 std::to_string(got) + ", fibre_at " + std::to_string(expected);
      }
    }
  }
  return "";
}

std::string round_trip_criterion() {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  Gen gen(1004);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [g, h] = compatible_polys(gen, 3);
    const OneForm w1 = make_form(X.piece1, gftest::exprs(g));
    const OneForm w2 = make_form(X.piece2, gftest::exprs(h));
    const FormPair fp = glue_forms(X, w1, w2);
    const auto [s1, s2] = split_glued_form(fp);
    if (!(s1 == w1 && s2 == w2)) return "split(glue(w1, w2)) differs in trial " + std::to_string(trial);
    if (!(glue_forms(X, s1, s2) == fp)) return "glue(split(fp)) differs in trial " + std::to_string(trial);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto [g, h] = compatible_polys(gen, 3);
    const FormPair fp = glue_forms(X, make_form(X.piece1, gftest::exprs(g)), make_form(X.piece2, gftest::exprs(h)));
    // a random plot into the glue locus, u -> (0, p(u))
    const TestPoly p = gen.poly(1, 3) + gftest::variable(1, 0);
    const SmoothMap lift(1, {Expr(0), p.expr()});
    const auto on1 = evaluate_on_plot(fp, make_plot(X, Side::P1, lift));
    const auto on2 = evaluate_on_plot(fp, make_plot(X, Side::P2, lift));
    if (!exactly(forms_equal(on1, on2)))
      return "lifts disagree on plot " + lift.str() + ": " + on1.str() + " vs " + on2.str();
  }
  return "";
}

std::string linearity_criterion() {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  Gen gen(1005);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [g, h] = compatible_polys(gen, 3);
    const auto [k, l] = compatible_polys(gen, 3);
    const Scalar c(gen.rational());
    const OneForm w1 = make_form(X.piece1, gftest::exprs(g)), w2 = make_form(X.piece2, gftest::exprs(h));
    const OneForm v1 = make_form(X.piece1, gftest::exprs(k)), v2 = make_form(X.piece2, gftest::exprs(l));
    const auto sum = check_compatible(X, add_forms(w1, v1), add_forms(w2, v2));
    const auto scaled = check_compatible(X, scale_form(c, w1), scale_form(c, w2));
    if (!sum.compatible || sum.mode != VerdictMode::Exact) return "sum not compatible in trial " + std::to_string(trial);
    if (!scaled.compatible || scaled.mode != VerdictMode::Exact)
      return "scalar multiple not compatible in trial " + std::to_string(trial);
  }
  return "";
}

std::string extension_criterion() {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  Gen gen(1006);
  for (int trial = 0; trial < 20; ++trial) {
    const PulledForm pf = make_pulled_form(1, {gen.poly(1, 3).expr()});
    const auto [e1, e2] = extend_form_from_Y(X, pf);
    if (!exactly(forms_equal(restrict_to_Y(X, e1), pf))) return "i^* extension differs from " + pf.str();
    if (!exactly(forms_equal(pull_through_f(X, e2), pf))) return "f^* j^* extension differs from " + pf.str();
  }
  return "";
}

std::string rho_criterion() {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  Gen gen(1007);
  for (int trial = 0; trial < 50; ++trial) {
    const int kind = trial % 3;
    const Rational a = gen.nonzero_rational(), b = gen.rational();
    const GluedPoint x = kind == 0 ? at(Side::P1, {a, b}) : kind == 1 ? at(Side::P2, {a, b}) : at(Side::P2, {0, b});
    const auto fibre = fibre_at(X, x);
    std::vector<Scalar> coords(fibre.basis.empty() ? 0 : coordinates(fibre.basis[0]).size(), Scalar(0));
    for (const auto& e : fibre.basis) {
      const Scalar c(gen.rational());
      const auto ec = coordinates(e);
      for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = coords[i] + c * ec[i];
    }
    const FibreElement e = make_fibre_element(X, x, coords);
    FibreElement back;
    if (kind == 0) back = rho1_inverse(X, rho1(X, e));
    else if (kind == 1) back = rho2_inverse(X, rho2(X, e));
    else back = rho_pair_inverse(X, rho1(X, e), rho2(X, e));
    if (!(back == e)) return "element over " + describe(x) + " not reconstructed";
  }
  return "";
}

std::string metric_rank_criterion() {
  {
    const auto scene = gftest::fixture("line_identity");
    const auto& X = scene.glued("GX");
    const auto gm = glue_metric(X, scene.metric("g1"), scene.metric("g2"), 32);
    if (!gm.compatibility.compatible) return "line_identity metrics reported incompatible";
    Gen gen(1008);
    for (int i = 0; i < 10; ++i) {
      const GluedPoint x = at(gen.coin() ? Side::P1 : Side::P2, {gen.rational()});
      const auto rank = gram_rank_at(gm, x).rank;
      if (rank != fibre_at(X, x).dim) return "line_identity at " + describe(x) + ": rank " + std::to_string(rank);
    }
  }
  const std::vector<std::pair<const char*, std::size_t>> half_sum{{"yaxis", 3}, {"wedge", 4}};
  for (const auto& [name, expected] : half_sum) {
    const auto scene = gftest::fixture(name);
    const auto& X = scene.glued("GX");
    const auto gm = glue_metric(X, scene.metric("g1"), scene.metric("g2"), 32);
    const auto rank = gram_rank_at(gm, at(Side::P2, {0, 0})).rank;
    if (rank != expected) return std::string(name) + ": gram rank " + std::to_string(rank);
    if (check_metrics_compatible(X, scene.metric("g1"), scene.metric("g2"), 32).compatible)
      return std::string(name) + ": identity metrics reported compatible";
  }
  return "";
}

ScalarMatrix oracle_jacobian(const std::vector<TestPoly>& comps, const std::vector<Rational>& x) {
  ScalarMatrix j(comps.size(), x.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t v = 0; v < x.size(); ++v) {
      TestPoly d{x.size(), {}};
      for (const auto& [e, c] : comps[i].terms)
        if (e[v] > 0) {
          auto f = e;
          --f[v];
          d.add(f, c * e[v]);
        }
      j(i, v) = Scalar(d.at(x));
    }
  return j;
}

std::string chain_rule_criterion() {
  Gen gen(1009);
  const EuclideanPiece r2{"R2", 2};
  for (int trial = 0; trial < 50; ++trial) {
    const auto wp = gen.polys(2, 2, 2);
    const auto ap = gen.polys(2, 2, 2);
    const auto bp = gen.polys(2, 2, 2);
    const OneForm w = make_form(r2, gftest::exprs(wp));
    const SmoothMap a(2, gftest::exprs(ap)), b(2, gftest::exprs(bp));
    if (!exactly(forms_equal(pullback(pullback(w, a), b), pullback(w, compose(a, b)))))
      return "pullback not functorial for " + w.str();
    const auto x = gen.point(2);
    const Point px(x.begin(), x.end());
    std::vector<Rational> bx;
    for (const auto& s : b(px)) bx.push_back(s.exact());
    if (!(jacobian(compose(a, b), px) == oracle_jacobian(ap, bx) * oracle_jacobian(bp, x)))
      return "chain rule fails for " + a.str() + " after " + b.str();
  }
  return "";
}

struct Captured {
  int status = -1;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int st = pclose(pipe);
  c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return in ? os.str() : std::string();
}

std::string golden_criterion() {
  const std::string dir = GLUEDFORMS_GOLDEN_DIR;
  std::ifstream manifest(dir + "/manifest.txt");
  if (!manifest) return "cannot read " + dir + "/manifest.txt";
  std::string line;
  std::vector<std::string> fixtures_seen;
  int entries = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name, fixture;
    ls >> name >> fixture;
    std::string args;
    std::getline(ls, args);
    const std::string cmd =
        std::string(GLUEDFORMS_CLI) + " " + gftest::data_path(fixture + ".scene") + args + " --seed 0 2>/dev/null";
    const auto first = capture(cmd);
    const auto second = capture(cmd);
    if (first.out != second.out || first.status != second.status) return name + ": two runs differ";
    const std::string golden = read_file(dir + "/" + name + ".json");
    if (golden.empty()) return name + ": missing golden file";
    if (first.out != golden) return name + ": output differs from golden file";
    fixtures_seen.push_back(fixture);
    ++entries;
  }
  for (const char* f : {"yaxis", "wedge", "line_identity"})
    if (std::find(fixtures_seen.begin(), fixtures_seen.end(), f) == fixtures_seen.end())
      return std::string("no golden entry for fixture ") + f;
  return entries > 0 ? "" : "empty manifest";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> criteria{
      {"compatibility criterion matches substitution oracle", compatibility_criterion},
      {"fibre dimensions", fibre_dimension_criterion},
      {"oracle equivalence for degrees 1-3", oracle_criterion},
      {"glue/split round trips and lift-independent evaluation", round_trip_criterion},
      {"compatible pairs form a linear subspace", linearity_criterion},
      {"restriction after extension is the identity", extension_criterion},
      {"rho maps are bijections", rho_criterion},
      {"metric Gram ranks and compatibility verdicts", metric_rank_criterion},
      {"pullback functoriality and chain rule", chain_rule_criterion},
      {"CLI output is deterministic and matches golden files", golden_criterion},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    std::string problem;
    try {
      problem = check();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    if (problem.empty()) std::cout << "PASS " << name << '\n';
    else {
      std::cout << "FAIL " << name << ": " << problem << '\n';
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
