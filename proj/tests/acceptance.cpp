// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "corpus.hpp"
#include "oracles.hpp"
#include "fbc/superirr.hpp"

using namespace fbc;

namespace {

// Pinned tolerances.
constexpr long double kRealTol = 1e-9L;          // criteria 1 and 9
constexpr long double kTraceGrowthTol = 0.05L;   // criterion 7
constexpr long double kCoverPfTol = 1e-9L;       // criterion 8
constexpr double kTrendFraction = 0.95;          // criterion 10
constexpr double kFibonacciSeconds = 1.0;
constexpr double kCorpusSeconds = 120.0;
constexpr double kCoverSeconds = 30.0;
constexpr double kGenericitySeconds = 300.0;

constexpr std::size_t kCorpusSize = 220;
constexpr std::uint64_t kCorpusSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

const long double kPhi = (1.0L + std::sqrt(5.0L)) / 2.0L;

QPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly::from_coeffs(v);
}

bool near(long double a, long double b, long double tol) { return std::fabs(a - b) <= tol; }

const std::vector<testkit::TwistedCase>& corpus() {
  static const auto c = testkit::twisted_corpus(kCorpusSize, kCorpusSeed);
  return c;
}

FreeEndo fibonacci() {
  NielsenWord w{2, {{NielsenSymbol::Kind::Swap, 1, 2}, {NielsenSymbol::Kind::RightMul, 2, 1}}};
  return endo_from_nielsen(w);
}

Outcome ac1() {
  Outcome o;
  auto fail = [&](const std::string& why) { o.pass = false; o.detail += why + "; "; };
  const auto t0 = std::chrono::steady_clock::now();
  FingerprintInput in;
  in.monodromy = fibonacci();
  const Fingerprint fp = compute_fingerprint(in);
  const FbcGroup g(in.monodromy);
  const Twist tw = untwisted(g);
  const QPoly d1 = delta1_fox(g, tw);
  const Torsion tau = reidemeister_torsion(g, tw);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (fp.fibre_rank != 2) fail("fibre_rank");
  if (fp.b1 != 1) fail("b1");
  const QPoly c1 = poly({-1, -1, 1}), c2 = poly({-1, 1, 1});
  if (!((fp.char_first == c1 && fp.char_second == c2) || (fp.char_first == c2 && fp.char_second == c1)))
    fail("char_pair");
  if (!near(fp.nu_pair.first, kPhi, kRealTol) || !near(fp.nu_pair.second, kPhi, kRealTol)) fail("nu_pair");
  if (!fp.lambda_pair || !near(fp.lambda_pair->first.lambda, kPhi, kRealTol) ||
      !near(fp.lambda_pair->second.lambda, kPhi, kRealTol))
    fail("lambda_pair");
  const QPoly expected = poly({1, -1, -1});
  // Hand-derived abelianized Fox matrix: rows a, b, t; columns the two relators.
  Matrix<QPoly> fox(3, 2);
  fox(0, 0) = QPoly::monomial(Rational(1), -1);
  fox(0, 1) = poly({-1});
  fox(1, 0) = poly({-1});
  fox(1, 1) = QPoly::monomial(Rational(1), -1) - poly({1});
  if (!doteq(d1, expected) || !doteq(oracle::maximal_minors_gcd(fox), expected)) fail("delta1");
  if (!doteq(tau.num, expected) || !doteq(tau.den, poly({1, -1}))) fail("torsion");
  if (secs >= kFibonacciSeconds) fail("slow");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f s", secs);
  o.detail += buf;
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t failures = 0;
  for (const auto& c : corpus()) {
    const FbcGroup g(c.phi);
    const Twist tw = make_twist(g, c.quotient, c.rep);
    if (!doteq(delta1_fox(g, tw), delta1_charpoly(g, tw))) ++failures;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = failures == 0 && corpus().size() >= 200 && secs < kCorpusSeconds;
  o.detail = std::to_string(corpus().size()) + " cases, " + std::to_string(failures) + " failures, " +
             std::to_string(secs) + " s";
  return o;
}

Outcome ac3() {
  Outcome o;
  std::size_t failures = 0;
  for (const auto& c : corpus()) {
    const FbcGroup g(c.phi);
    const QPoly d0 = delta0(g, make_twist(g, c.quotient, c.rep));
    if (d0.is_zero() || cyclotomic_split(d0).residual != QPoly(Rational(1))) ++failures;
  }
  o.pass = failures == 0;
  o.detail = std::to_string(corpus().size()) + " cases, " + std::to_string(failures) + " failures";
  return o;
}

Outcome ac4() {
  Outcome o;
  std::size_t failures = 0;
  for (const auto& c : corpus()) {
    const FbcGroup g(c.phi);
    const FbcGroup gi(inverse_from_nielsen(c.word));
    const Twist tw = make_twist(g, c.quotient, c.rep);
    const Twist twi = make_twist(gi, testkit::inverse_quotient(c.quotient), testkit::inverse_rep(c.rep));
    const QPoly d1 = delta1_fox(g, tw), d0 = delta0(g, tw);
    bool ok = doteq(delta1_fox(gi, twi), star(d1)) && doteq(delta0(gi, twi), star(d0));
    ok = ok && is_palindromic(doteq_normalize(d1 * star(d1))) && is_palindromic(doteq_normalize(d0 * star(d0)));
    if (!ok) ++failures;
  }
  o.pass = failures == 0;
  o.detail = std::to_string(corpus().size()) + " cases, " + std::to_string(failures) + " failures";
  return o;
}

Outcome ac5() {
  Outcome o;
  constexpr int D = 6;
  const auto words = testkit::expanding_train_tracks(24, 7);
  std::size_t checked = 0, failures = 0;
  std::mt19937_64 rng(5);
  for (const auto& w : words) {
    const FreeEndo phi = endo_from_nielsen(w);
    const FbcGroup g(phi);
    const GraphMap rose = rose_representative(phi);
    // Untwisted plus one twisted datum per map when a small quotient exists.
    std::vector<std::pair<FiniteQuotient, Representation>> data;
    FiniteQuotient triv{1, std::vector<Perm>(static_cast<std::size_t>(g.rank() + 1), Perm{0})};
    data.push_back({triv, Representation{1, std::vector<QMatrix>(static_cast<std::size_t>(g.rank() + 1), q_identity(1))}});
    for (const auto& grp : testkit::small_groups()) {
      if (grp.elements.size() > 6) continue;
      auto qs = testkit::find_quotients(g, grp, 1, rng());
      if (qs.empty()) continue;
      auto reps = testkit::reps_for_degree(grp.degree);
      data.push_back({qs[0], testkit::rep_on(qs[0], reps[1 + rng() % (reps.size() - 1)])});
      break;
    }
    for (const auto& [q, r] : data) {
      const Twist tw = make_twist(g, q, r);
      const std::vector<Rational> lhs = torsion_series(reidemeister_torsion(g, tw), D);
      const EnumeratedGroup eq = validate_quotient(mapping_torus_presentation(rose), q);
      const std::vector<Rational> chi = extend_representation(eq, r).character();
      std::vector<Rational> logc(D + 1, Rational(0));
      for (int m = 1; m <= D; ++m) logc[static_cast<std::size_t>(m)] = lefschetz_number(rose, m, eq, chi) / m;
      ++checked;
      if (lhs != oracle::exp_series(logc, D)) ++failures;
    }
  }
  o.pass = failures == 0 && words.size() >= 20;
  o.detail = std::to_string(words.size()) + " maps, " + std::to_string(checked) + " series, " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::vector<FreeEndo> maps;
  for (std::size_t i = 0; i < corpus().size(); i += 3) maps.push_back(corpus()[i].phi);
  for (const auto& w : testkit::expanding_train_tracks(20, 11)) maps.push_back(endo_from_nielsen(w));
  std::size_t checked = 0, degenerate = 0, failures = 0;
  for (const auto& phi : maps) {
    const GraphMap rose = rose_representative(phi);
    const QMatrix m = to_q(abelianization_matrix(phi));
    QMatrix p = q_identity(m.rows());
    for (int k = 1; k <= 6; ++k) {
      p = p * m;
      Rational tr = 0;
      for (std::size_t i = 0; i < p.rows(); ++i) tr += p(i, i);
      try {
        PeriodicOptions opt;
        opt.max_len = 2000000;
        opt.cd_words = false;
        const PeriodicData d = periodic_points(rose, k, opt);
        long sum = 0;
        for (const auto& pt : d.points) sum += pt.index;
        ++checked;
        if (Rational(sum) != 1 - tr) ++failures;
      } catch (const DegenerateInput&) {
        ++degenerate;
      } catch (const InputError&) {
        ++degenerate;  // path cap
      }
    }
  }
  o.pass = failures == 0 && checked > 0;
  o.detail = std::to_string(checked) + " (map, m) pairs, " + std::to_string(degenerate) + " degenerate skipped, " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome ac7() {
  Outcome o;
  const auto words = testkit::expanding_train_tracks(20, 13);
  std::size_t failures = 0;
  long double worst = 0;
  for (const auto& w : words) {
    const GraphMap rose = rose_representative(endo_from_nielsen(w));
    const ZMatrix a = incidence_matrix(rose);
    const ZMatrix a20 = mat_pow(a, 20, Integer(0), Integer(1));
    Integer tr = 0;
    for (std::size_t i = 0; i < a20.rows(); ++i) tr += a20(i, i);
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, tr.get_mpz_t());
    const long double growth = std::exp((std::log(static_cast<long double>(mant)) + exp2 * std::log(2.0L)) / 20);
    const long double err = std::fabs(growth - stretch_factor(rose));
    worst = std::max(worst, err);
    if (!(err < kTraceGrowthTol)) ++failures;
  }
  o.pass = failures == 0 && !words.empty();
  o.detail = std::to_string(words.size()) + " maps, worst error " + std::to_string(static_cast<double>(worst));
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(8);
  std::size_t done = 0, failures = 0, two = 0;
  while (done < 200) {
    const int n = 1 + static_cast<int>(rng() % 8);
    ZMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Integer(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng() % 3 == 0) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = static_cast<long>(1 + rng() % 3);
    const Digraph base = digraph_of_matrix(a);
    if (!is_irreducible(base)) continue;
    std::vector<bool> special(base.edges.size());
    if (done % 2 == 0) {
      for (std::size_t k = 0; k < special.size(); ++k) special[k] = rng() % 2;
    } else {
      const unsigned long colour = rng();
      for (std::size_t k = 0; k < special.size(); ++k)
        special[k] = ((colour >> base.edges[k].first) & 1) != ((colour >> base.edges[k].second) & 1);
    }
    const CoverClassification c = classify_cover(base, double_cover(base, special));
    const bool trivial = oracle::trivial_cover_by_coloring(base, special);
    bool ok;
    if (c.kind == CoverClassification::Kind::TwoCopies) {
      ++two;
      ok = trivial && c.isomorphisms.size() == 2;
    } else {
      ok = !trivial && std::fabs(c.pf_cover - c.pf_base) < kCoverPfTol;
    }
    if (!ok) ++failures;
    ++done;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = failures == 0 && secs < kCoverSeconds;
  o.detail = "200 covers (" + std::to_string(two) + " split), " + std::to_string(failures) + " failures, " +
             std::to_string(secs) + " s";
  return o;
}

std::vector<CoxeterGraphMap> coxeter_examples() {
  using testkit::leaf_permutation;
  using testkit::partial_conjugation;
  std::vector<CoxeterGraphMap> out;
  for (int n : {3, 4}) {
    const CoxeterGraph s = testkit::coxeter_star(n);
    const auto p12 = partial_conjugation(s, 1, 2), p21 = partial_conjugation(s, 2, 1);
    const auto p31 = partial_conjugation(s, 3, 1), p23 = partial_conjugation(s, 2, 3);
    std::vector<int> cyc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = 1 + (i + 1) % n;
    const auto rot = leaf_permutation(s, cyc);
    out.push_back(identity_map(s));
    out.push_back(rot);
    out.push_back(compose(p12, p21));
    out.push_back(compose(compose(p12, p23), p31));
    out.push_back(compose(rot, p12));
    out.push_back(compose(compose(p21, p12), compose(p31, p23)));
    if (n == 4) {
      const auto p41 = partial_conjugation(s, 4, 1), p34 = partial_conjugation(s, 3, 4);
      out.push_back(compose(compose(p41, p12), compose(p23, p34)));
    }
  }
  return out;
}

Outcome ac9() {
  Outcome o;
  std::size_t failures = 0, expanding = 0;
  const auto maps = coxeter_examples();
  for (const auto& f : maps) {
    try {
      const CoxeterStretch s = coxeter_stretch(f, kRealTol);
      const GraphMap d = free_double_representative(f);
      if (std::fabs(s.base - stretch_factor(d)) > kRealTol || d.graph.rank() != f.domain.rank() - 1) ++failures;
      if (s.base > 1 + 1e-6L) ++expanding;
    } catch (const ContractError&) {
      ++failures;
    }
  }
  o.pass = failures == 0 && maps.size() >= 10;
  o.detail = std::to_string(maps.size()) + " maps (" + std::to_string(expanding) + " expanding), " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome ac10() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int monotone = 0;
  double mean[3] = {0, 0, 0};
  constexpr int kReps = 20;
  for (int r = 0; r < kReps; ++r) {
    const auto rows = genericity_experiment(3, {5, 10, 20}, 500, 1000 + static_cast<std::uint64_t>(r), 12);
    for (int i = 0; i < 3; ++i) mean[i] += rows[static_cast<std::size_t>(i)].frac_both / kReps;
    if (rows[0].frac_both <= rows[1].frac_both && rows[1].frac_both <= rows[2].frac_both) ++monotone;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = monotone >= kTrendFraction * kReps && secs < kGenericitySeconds;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d monotone, mean frac_both %.3f %.3f %.3f, %.1f s", monotone, kReps, mean[0],
                mean[1], mean[2], secs);
  o.detail = buf;
  return o;
}

Outcome ac11() {
  Outcome o;
  auto fp = [](const FreeEndo& e) {
    FingerprintInput in;
    in.monodromy = e;
    return compute_fingerprint(in);
  };
  const FreeEndo fib = fibonacci();
  NielsenWord w{2, {{NielsenSymbol::Kind::Swap, 1, 2}, {NielsenSymbol::Kind::RightMul, 2, 1},
                    {NielsenSymbol::Kind::RightMul, 2, 1}}};
  const FreeEndo other = endo_from_nielsen(w);  // x1 -> x2, x2 -> x1 x2^2
  NielsenWord fw{2, {{NielsenSymbol::Kind::Swap, 1, 2}, {NielsenSymbol::Kind::RightMul, 2, 1}}};
  const FreeEndo inv = inverse_from_nielsen(fw);
  const Fingerprint a = fp(fib), b = fp(other), c = fp(inv);
  const Verdict self = compare(a, a), diff = compare(a, b), rev = compare(a, c);
  const bool witness = std::find(diff.witnesses.begin(), diff.witnesses.end(), "char_pair") != diff.witnesses.end();
  o.pass = !self.distinguished && diff.distinguished && witness && !rev.distinguished &&
           other.images[1].letters == Letters{1, 2, 2};
  o.detail = std::string("self ") + (self.distinguished ? "D" : "ND") + ", other " +
             (diff.distinguished ? "D" : "ND") + (witness ? " (char_pair)" : "") + ", inverse " +
             (rev.distinguished ? "D" : "ND");
  return o;
}

} // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 Fibonacci end-to-end", ac1},
      {"2 Delta_1 cross-algorithm agreement", ac2},
      {"3 Delta_0 cyclotomic structure", ac3},
      {"4 reciprocity and palindromicity", ac4},
      {"5 torsion series equals Lefschetz zeta", ac5},
      {"6 Lefschetz trace identity", ac6},
      {"7 trace growth", ac7},
      {"8 double covers of digraphs", ac8},
      {"9 Coxeter stretch transfer", ac9},
      {"10 genericity trend", ac10},
      {"11 fingerprint comparison", ac11},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && !only.count(std::atoi(name))) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s AC%s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
