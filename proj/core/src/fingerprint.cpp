#include "fbc/fingerprint.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

namespace fbc {

namespace {

QPoly monic(const QPoly& p) { return p.scaled(Rational(1 / p.lead())); }

bool class_less(const QPoly& a, const QPoly& b) {
  return canonical_less(doteq_normalize(a), doteq_normalize(b));
}

StretchEntry stretch_entry(const GraphMap& g) {
  validate(g);
  StretchEntry s;
  const Filtration f = maximal_filtration(g);
  for (const auto& st : f.strata)
    if (!st.zero) {
      s.strata.push_back(st.pf.lambda);
      s.lambda = std::max(s.lambda, st.pf.lambda);
    }
  s.irreducible = f.irreducible();
  s.train_track = is_train_track(g);
  return s;
}

void check_representative(const GraphMap& g, const QPoly& expected, const char* which) {
  validate(g);
  const QPoly cp = char_poly(abelianization_matrix(induced_automorphism(g)));
  require(cp == expected, std::string(which) + " representative does not induce the monodromy on homology");
}

} // namespace

Fingerprint compute_fingerprint(const FingerprintInput& in) {
  const FbcGroup g(in.monodromy);
  Fingerprint fp;
  fp.fibre_rank = fibre_rank(g);
  fp.b1 = b1_mapping_torus(g);
  const QMatrix m = to_q(abelianization_matrix(g.monodromy));
  fp.char_first = monic(char_poly(m));
  fp.char_second = monic(char_poly(inverse(m)));
  const QPoly plus_cp = fp.char_first, minus_cp = fp.char_second;
  if (class_less(fp.char_second, fp.char_first)) std::swap(fp.char_first, fp.char_second);
  fp.nu_pair = homological_stretch(g);

  std::optional<GraphMap> plus = in.plus, minus = in.minus;
  if (!plus) plus = rose_representative(g.monodromy);
  if (!minus && g.monodromy.nielsen) minus = rose_representative(inverse_endo(g.monodromy));
  if (plus && minus) {
    check_representative(*plus, plus_cp, "plus");
    check_representative(*minus, minus_cp, "minus");
    LambdaPair lp{stretch_entry(*plus), stretch_entry(*minus)};
    if (lp.second.lambda < lp.first.lambda) std::swap(lp.first, lp.second);
    fp.lambda_pair = lp;
  }

  std::set<std::string> labels;
  for (const auto& a : in.twisted) {
    require(labels.insert(a.label).second, "duplicate attachment label " + a.label);
    const Twist tw = make_twist(g, a.quotient, a.rep);
    TwistedEntry e;
    e.label = a.label;
    e.delta0 = delta0(g, tw);
    const QPoly d1 = delta1_fox(g, tw);
    expect(doteq(d1, delta1_charpoly(g, tw)), "the two Delta_1 algorithms disagree");
    e.delta1 = doteq_normalize(d1);
    e.delta = delta_pair(d1);
    e.tau = torsion_ratio(d1, e.delta0);
    e.tau_first = e.tau;
    e.tau_second = torsion_ratio(star(d1), star(e.delta0));
    auto key = [](const Torsion& t) { return t.num.to_string() + "/" + t.den.to_string(); };
    if (key(e.tau_second) < key(e.tau_first)) std::swap(e.tau_first, e.tau_second);
    fp.twisted.push_back(std::move(e));
  }
  std::sort(fp.twisted.begin(), fp.twisted.end(),
            [](const TwistedEntry& x, const TwistedEntry& y) { return x.label < y.label; });
  return fp;
}

namespace {

bool close(long double a, long double b, long double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0L, std::max(std::fabs(a), std::fabs(b)));
}

bool same_pair(const QPoly& a1, const QPoly& a2, const QPoly& b1, const QPoly& b2) {
  return (doteq(a1, b1) && doteq(a2, b2)) || (doteq(a1, b2) && doteq(a2, b1));
}

bool same_torsion(const Torsion& a, const Torsion& b) { return doteq(a.num, b.num) && doteq(a.den, b.den); }

} // namespace

Verdict compare(const Fingerprint& a, const Fingerprint& b, long double tol) {
  std::vector<std::string> la, lb;
  for (const auto& e : a.twisted) la.push_back(e.label);
  for (const auto& e : b.twisted) lb.push_back(e.label);
  require(la == lb, "fingerprints carry different attachment labels");

  Verdict v;
  auto check = [&](const std::string& name, bool equal) {
    v.checked.push_back(name);
    if (!equal) v.witnesses.push_back(name);
  };
  check("fibre_rank", a.fibre_rank == b.fibre_rank);
  check("b1", a.b1 == b.b1);
  check("char_pair", same_pair(a.char_first, a.char_second, b.char_first, b.char_second));
  check("nu_pair", close(a.nu_pair.first, b.nu_pair.first, tol) && close(a.nu_pair.second, b.nu_pair.second, tol));
  if (a.lambda_pair && b.lambda_pair)
    check("lambda_pair", close(a.lambda_pair->first.lambda, b.lambda_pair->first.lambda, tol) &&
                             close(a.lambda_pair->second.lambda, b.lambda_pair->second.lambda, tol));
  for (std::size_t i = 0; i < a.twisted.size(); ++i) {
    const auto& x = a.twisted[i];
    const auto& y = b.twisted[i];
    const std::string p = "twisted[" + x.label + "].";
    check(p + "delta0", doteq(x.delta0, y.delta0));
    check(p + "delta_pair", same_pair(x.delta.first, x.delta.second, y.delta.first, y.delta.second));
    check(p + "palindromic_product", doteq(x.delta.product, y.delta.product));
    check(p + "tau_pair", (same_torsion(x.tau_first, y.tau_first) && same_torsion(x.tau_second, y.tau_second)) ||
                              (same_torsion(x.tau_first, y.tau_second) && same_torsion(x.tau_second, y.tau_first)));
  }
  v.distinguished = !v.witnesses.empty();
  return v;
}

std::vector<NielsenSymbol> nielsen_generating_set(int n) {
  require(n >= 1, "rank must be positive");
  using K = NielsenSymbol::Kind;
  std::vector<NielsenSymbol> s;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s.push_back({K::Swap, i, j});
  for (int i = 1; i <= n; ++i) s.push_back({K::Invert, i, i});
  for (K k : {K::LeftMul, K::RightMul})
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j) s.push_back({k, i, j});
  return s;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

NielsenWord random_auto(int n, int length, std::uint64_t seed, std::uint64_t stream) {
  require(length >= 0, "word length must be nonnegative");
  const auto set = nielsen_generating_set(n);
  const std::uint64_t size = set.size();
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % size + 1) % size;
  const std::uint64_t key = splitmix64(seed ^ splitmix64(stream));
  NielsenWord w;
  w.rank = n;
  std::uint64_t counter = 0;
  for (int i = 0; i < length; ++i) {
    std::uint64_t x;
    do {
      x = splitmix64(key + counter++);
    } while (x > limit);
    w.factors.push_back(set[x % size]);
  }
  return w;
}

std::vector<ExperimentRow> genericity_experiment(int n, const std::vector<int>& lengths, int trials,
                                                 std::uint64_t seed, int power_bound, unsigned threads) {
  require(n >= 1, "rank must be positive");
  require(trials >= 1, "trials must be positive");
  require(!lengths.empty(), "at least one length is required");
  for (int l : lengths) require(l >= 0, "lengths must be nonnegative");
  require(power_bound >= 1, "power bound must be at least 1");

  const std::size_t total = lengths.size() * static_cast<std::size_t>(trials);
  std::vector<unsigned char> b1_one(total), super(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      const int l = lengths[k / static_cast<std::size_t>(trials)];
      const std::uint64_t trial = k % static_cast<std::size_t>(trials);
      const std::uint64_t stream = (static_cast<std::uint64_t>(l) << 32) | trial;
      const FreeEndo phi = endo_from_nielsen(random_auto(n, l, seed, stream));
      const ZMatrix m = abelianization_matrix(phi);
      const QMatrix q = to_q(m);
      b1_one[k] = rank(q - q_identity(q.rows())) == q.rows();
      super[k] = super_irreducible_check(m, power_bound).verdict == SuperVerdict::CertifiedYes;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ExperimentRow> rows;
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    int a = 0, s = 0, both = 0;
    for (int i = 0; i < trials; ++i) {
      const std::size_t k = li * static_cast<std::size_t>(trials) + static_cast<std::size_t>(i);
      a += b1_one[k];
      s += super[k];
      both += b1_one[k] && super[k];
    }
    const double tr = trials;
    rows.push_back({n, lengths[li], trials, a / tr, s / tr, both / tr, seed, power_bound});
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << kExperimentCsvHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    os << r.n << ',' << r.length << ',' << r.trials;
    for (double f : {r.frac_b1_one, r.frac_super, r.frac_both}) {
      std::snprintf(buf, sizeof buf, ",%.6f", f);
      os << buf;
    }
    os << ',' << r.seed << ',' << r.power_bound << '\n';
  }
  return os.str();
}

} // namespace fbc
