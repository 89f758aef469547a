#include "certify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace cmg {

namespace {

constexpr int kProbePoints = 8;

const int kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                            31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

// ---------------------------------------------------------------------------
// univariate arithmetic over F_p (p < 2^31), dense coefficient vectors

using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& f, std::uint64_t p) {
  fp_trim(a);
  while (a.size() >= f.size()) {
    std::uint64_t top = a.back();
    std::size_t shift = a.size() - f.size();
    // f is monic
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::uint64_t sub = (top * f[i]) % p;
      std::uint64_t& slot = a[shift + i];
      slot = (slot + p - sub) % p;
    }
    fp_trim(a);
  }
  return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  fp_trim(r);
  return r;
}

FpPoly fp_powmod_x(std::uint64_t e_base, const FpPoly& f, std::uint64_t p,
                   const FpPoly& base) {
  // base^e_base mod f
  FpPoly result{1};
  FpPoly b = fp_mod(base, f, p);
  std::uint64_t e = e_base;
  while (e) {
    if (e & 1u) result = fp_mod(fp_mul(result, b, p), f, p);
    b = fp_mod(fp_mul(b, b, p), f, p);
    e >>= 1;
  }
  return result;
}

FpPoly fp_derivative(const FpPoly& f, std::uint64_t p) {
  FpPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back((f[i] * (i % p)) % p);
  fp_trim(d);
  return d;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
  // extended Euclid
  long long t = 0, nt = 1, r = static_cast<long long>(p),
            nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    // make b monic, then reduce
    std::uint64_t inv = fp_inv(b.back(), p);
    for (auto& c : b) c = (c * inv) % p;
    a = fp_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin irreducibility test for monic f over F_p
bool fp_irreducible(const FpPoly& f, std::uint64_t p) {
  if (f.size() < 2) return false;
  std::size_t d = f.size() - 1;
  if (d == 1) return true;
  FpPoly fd = fp_derivative(f, p);
  if (fd.empty()) return false;
  FpPoly g = fp_gcd(f, fd, p);
  if (g.size() != 1) return false;  // not squarefree
  FpPoly x{0, 1};
  // h_k = x^{p^k} mod f by iterated p-th powering
  FpPoly h = fp_mod(x, f, p);
  std::vector<FpPoly> frob(d + 1);
  frob[0] = h;
  for (std::size_t k = 1; k <= d; ++k)
    frob[k] = fp_powmod_x(p, f, p, frob[k - 1]);
  // x^{p^d} == x mod f
  FpPoly diff = frob[d];
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] + p - 1) % p;
  fp_trim(diff);
  if (!diff.empty()) return false;
  // gcd(x^{p^{d/r}} - x, f) = 1 for every prime r | d
  std::size_t dd = d;
  std::set<std::size_t> prime_divs;
  for (std::size_t r = 2; r * r <= dd; ++r)
    while (dd % r == 0) {
      prime_divs.insert(r);
      dd /= r;
    }
  if (dd > 1) prime_divs.insert(dd);
  for (std::size_t r : prime_divs) {
    FpPoly u = frob[d / r];
    if (u.size() < 2) u.resize(2, 0);
    u[1] = (u[1] + p - 1) % p;
    fp_trim(u);
    FpPoly g2 = fp_gcd(f, u, p);
    if (g2.size() != 1) return false;
  }
  return true;
}

// reduce the integer coefficient vector of a monic polynomial mod p
std::optional<FpPoly> reduce_univariate(const std::vector<Int>& coeffs,
                                        std::uint64_t p) {
  if (coeffs.empty()) return std::nullopt;
  FpPoly f(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Int r = coeffs[i] % Int(p);
    if (r < 0) r += Int(p);
    f[i] = r.convert_to<std::uint64_t>();
  }
  if (f.back() == 0) return std::nullopt;  // degree dropped
  return f;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Irreducible:
      return "Irreducible";
    case Verdict::Reducible:
      return "Reducible";
    default:
      return "Unknown";
  }
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json j{{"verdict", verdict_name(verdict)}, {"evidence", evidence}};
  if (!factors.empty()) {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : factors) fs.push_back(f.render());
    j["factors"] = std::move(fs);
  }
  return j;
}

std::vector<Int> grid_point(int k, int m) {
  if (k < 1 || m < 0 || m > 20)
    throw std::invalid_argument("grid point out of range");
  std::vector<Int> pt(m);
  for (int i = 0; i < m; ++i)
    pt[i] = int_pow(Int(kSmallPrimes[i]), static_cast<unsigned>(k));
  return pt;
}

bool poly_square(const MPoly& p, std::optional<MPoly>* root, int* witness) {
  // evaluation witnesses prove non-squareness; squareness is confirmed
  // symbolically
  if (p.is_zero()) {
    if (root) *root = MPoly(p.nvars());
    return true;
  }
  if (p.integer_exponents()) {
    for (int k = 1; k <= kProbePoints; ++k) {
      Int v = p.eval(grid_point(2 * k, p.nvars()));
      if (v < 0 || !is_perfect_square(v)) {
        if (witness) *witness = 2 * k;
        if (root) root->reset();
        return false;
      }
    }
  }
  auto s = p.sqrt();
  if (root) *root = s;
  return s.has_value();
}

Certificate irreducible(const TPoly& p, int budget) {
  if (!p.monic()) throw std::invalid_argument("certificate expects a monic polynomial");
  if (p.degree() < 1) throw std::invalid_argument("degree must be >= 1");
  if (budget < 1) budget = 1;
  int m = p.nvars();

  Certificate cert;
  if (p.degree() == 1) {
    cert.verdict = Verdict::Irreducible;
    cert.evidence = {{"method", "degree-1"}};
    return cert;
  }

  if (p.degree() == 2) {
    // t^2 - b t - c reducible over Z[x] iff b^2 + 4c is a perfect square
    MPoly b = -p.coeff(1);
    MPoly c = -p.coeff(0);
    MPoly disc = b * b + c * Int(4);
    std::optional<MPoly> s;
    int witness = 0;
    bool sq = poly_square(disc, &s, &witness);
    if (!sq) {
      cert.verdict = Verdict::Irreducible;
      cert.evidence = {{"method", "discriminant"},
                       {"square", false},
                       {"witness",
                        witness > 0
                            ? nlohmann::json{{"kind", "grid-point"}, {"k", witness}}
                            : nlohmann::json{{"kind", "symbolic"}}}};
      return cert;
    }
    // roots (b +- s)/2; both land in the integer ring
    MPoly two = MPoly::constant(m, 2);
    MPoly r1 = (b + *s).divexact(two);
    MPoly r2 = (b - *s).divexact(two);
    TPoly f1 = TPoly::from_coeffs(m, {-r1, MPoly::constant(m, 1)});
    TPoly f2 = TPoly::from_coeffs(m, {-r2, MPoly::constant(m, 1)});
    if (f1 * f2 != p)
      throw std::logic_error("reducibility witness failed re-multiplication");
    cert.verdict = Verdict::Reducible;
    cert.factors = {f1, f2};
    cert.evidence = {{"method", "discriminant"},
                     {"square", true},
                     {"root", s->render()}};
    return cert;
  }

  // degree >= 3: specialization certificates.  A univariate image that is
  // irreducible mod some prime certifies irreducibility of the monic input.
  for (int k = 1; k <= budget; ++k) {
    std::vector<Int> pt = grid_point(k, m);
    std::vector<Int> image = p.eval_coeffs(pt);
    if (static_cast<int>(image.size()) - 1 != p.degree()) continue;
    for (std::uint64_t prime : kSmallPrimes) {
      auto f = reduce_univariate(image, prime);
      if (!f) continue;
      if (fp_irreducible(*f, prime)) {
        cert.verdict = Verdict::Irreducible;
        cert.evidence = {{"method", "specialization"},
                         {"grid_k", k},
                         {"prime", prime}};
        return cert;
      }
    }
  }
  cert.verdict = Verdict::Unknown;
  cert.evidence = {{"method", "specialization"},
                   {"budget_exhausted", budget},
                   {"note", "no specialization produced an irreducible image"}};
  return cert;
}

namespace {

// integer resultant of two univariate polynomials via the same subresultant
// code over the zero-variable ring
Int univariate_resultant(const std::vector<Int>& a, const std::vector<Int>& b) {
  auto lift = [](const std::vector<Int>& v) {
    std::vector<MPoly> c;
    c.reserve(v.size());
    for (const auto& x : v) c.push_back(MPoly::constant(0, x));
    return TPoly::from_coeffs(0, std::move(c));
  };
  MPoly r = tp_resultant(lift(a), lift(b));
  return r.is_zero() ? Int(0) : r.terms().begin()->second;
}

}  // namespace

bool resultant_nonzero(const TPoly& a, const TPoly& b, int* witness) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("resultant of zero polynomial");
  for (int k = 1; k <= kProbePoints; ++k) {
    std::vector<Int> pt = grid_point(k, a.nvars());
    std::vector<Int> ia = a.eval_coeffs(pt);
    std::vector<Int> ib = b.eval_coeffs(pt);
    // degree drop changes the minor structure; only full-degree images are
    // used as witnesses
    if (static_cast<int>(ia.size()) - 1 != a.degree() ||
        static_cast<int>(ib.size()) - 1 != b.degree())
      continue;
    if (univariate_resultant(ia, ib) != 0) {
      if (witness) *witness = k;
      return true;
    }
  }
  if (witness) *witness = 0;
  return !tp_resultant(a, b).is_zero();
}

bool discriminant_nonzero(const TPoly& p, int* witness) {
  if (p.is_zero()) throw std::invalid_argument("discriminant of zero polynomial");
  if (p.degree() == 0) {
    if (witness) *witness = 0;
    return true;
  }
  return resultant_nonzero(p, p.derivative(), witness);
}

nlohmann::json SeparationReport::to_json() const {
  return nlohmann::json{{"distinct", distinct},
                        {"res_same_nonzero", res_same_nonzero},
                        {"res_opposite_nonzero", res_opposite_nonzero},
                        {"disc_a_nonzero", disc_a_nonzero},
                        {"disc_b_nonzero", disc_b_nonzero},
                        {"separated", separated()}};
}

SeparationReport separated(const TPoly& chi_a, const TPoly& chi_b) {
  if (!chi_a.monic() || !chi_b.monic())
    throw std::invalid_argument("separation expects monic polynomials");
  SeparationReport rep;
  rep.distinct = !(chi_a == chi_b);
  rep.res_same_nonzero = rep.distinct && resultant_nonzero(chi_a, chi_b);
  rep.res_opposite_nonzero =
      resultant_nonzero(chi_a, chi_b.opposite_companion());
  rep.disc_a_nonzero = discriminant_nonzero(chi_a);
  rep.disc_b_nonzero = discriminant_nonzero(chi_b);
  return rep;
}

int SuiteReport::count(Verdict v) const {
  int n = 0;
  for (const auto& g : graphs)
    if (g.cert.verdict == v) ++n;
  return n;
}

bool SuiteReport::all_separated() const {
  for (const auto& p : pairs)
    if (!p.rep.separated()) return false;
  return true;
}

bool SuiteReport::all_discs_nonzero() const {
  for (const auto& g : graphs)
    if (!g.disc_nonzero) return false;
  return true;
}

bool SuiteReport::mathematical_failure() const {
  return count(Verdict::Reducible) > 0 || !all_separated();
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : graphs)
    gs.push_back(nlohmann::json{{"canonical", g.graph.to_json()},
                                {"chi", g.chi.render()},
                                {"chi_json", g.chi.to_json()},
                                {"verdict", verdict_name(g.cert.verdict)},
                                {"evidence", g.cert.to_json()["evidence"]},
                                {"disc_nonzero", g.disc_nonzero}});
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pairs) {
    nlohmann::json pj = p.rep.to_json();
    pj["i"] = p.i;
    pj["j"] = p.j;
    ps.push_back(std::move(pj));
  }
  return nlohmann::json{
      {"schema", "cmg.certify-report/1"},
      {"params",
       {{"q", q},
        {"m", m},
        {"max_dimension", max_dimension},
        {"budget", options.budget},
        {"pairs_checked", options.pairs}}},
      {"summary",
       {{"graphs", graphs.size()},
        {"irreducible", count(Verdict::Irreducible)},
        {"reducible", count(Verdict::Reducible)},
        {"unknown", count(Verdict::Unknown)},
        {"all_separated", all_separated()},
        {"all_discs_nonzero", all_discs_nonzero()}}},
      {"graphs", std::move(gs)},
      {"pairs", std::move(ps)},
      {"incomplete", incomplete}};
}

std::vector<MarkedGraph> enumerate_canonical_graphs(int q, int m, int max_dimension,
                                                    long cap, bool* truncated) {
  if (max_dimension < 0) throw std::invalid_argument("max_dimension must be >= 0");
  if (truncated) *truncated = false;
  std::vector<Edge> gens = m >= 2 ? enumerate_edges(q, m) : std::vector<Edge>{};

  std::map<std::vector<long>, MarkedGraph> canon;
  auto add_canonical = [&](const MarkedGraph& g) {
    MarkedGraph c = canonicalize(g);
    canon.emplace(c.key(), std::move(c));
  };

  // connected vertex sets containing the identity, grown one neighbor at a
  // time
  std::set<std::vector<GElem>> frontier{{g_identity(m)}};
  add_canonical(MarkedGraph(q, m, {g_identity(m)}));
  bool stop = false;
  for (int level = 1; level <= max_dimension && !stop; ++level) {
    std::set<std::vector<GElem>> next;
    for (const auto& verts : frontier) {
      for (const auto& v : verts) {
        for (const auto& w : cayley_neighbors(v, gens)) {
          if (std::find(verts.begin(), verts.end(), w) != verts.end()) continue;
          std::vector<GElem> grown = verts;
          grown.insert(std::lower_bound(grown.begin(), grown.end(), w), w);
          if (next.insert(grown).second) {
            add_canonical(MarkedGraph(q, m, grown));
            if (static_cast<long>(canon.size()) > cap ||
                static_cast<long>(next.size()) > 4 * cap) {
              if (truncated) *truncated = true;
              stop = true;
            }
          }
          if (stop) break;
        }
        if (stop) break;
      }
      if (stop) break;
    }
    frontier = std::move(next);
  }

  std::vector<MarkedGraph> out;
  out.reserve(canon.size());
  long kept = 0;
  for (auto& [k, g] : canon) {
    if (kept++ >= cap) {
      if (truncated) *truncated = true;
      break;
    }
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

void parallel_for(int jobs, long n, const std::function<void(long)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    while (true) {
      long i = next.fetch_add(1);
      if (i >= n) break;
      body(i);
    }
  };
  std::vector<std::thread> threads;
  int nt = std::min<long>(jobs, n);
  threads.reserve(nt);
  for (int t = 0; t < nt; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

}  // namespace

SuiteReport run_suite(int q, int m, int max_dimension, const SuiteOptions& options) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  SuiteReport rep;
  rep.q = q;
  rep.m = m;
  rep.max_dimension = max_dimension;
  rep.options = options;

  bool truncated = false;
  std::vector<MarkedGraph> graphs =
      enumerate_canonical_graphs(q, m, max_dimension, options.graph_cap, &truncated);
  rep.incomplete = truncated;

  rep.graphs.resize(graphs.size());
  parallel_for(options.jobs, static_cast<long>(graphs.size()), [&](long i) {
    SuiteGraphEntry e;
    e.graph = graphs[i];
    e.chi = charpoly(e.graph);
    e.cert = irreducible(e.chi, options.budget);
    e.disc_nonzero = discriminant_nonzero(e.chi);
    rep.graphs[static_cast<std::size_t>(i)] = std::move(e);
  });

  if (options.pairs && graphs.size() > 1) {
    std::vector<std::pair<int, int>> idx;
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = i + 1; j < graphs.size(); ++j)
        idx.emplace_back(static_cast<int>(i), static_cast<int>(j));
    rep.pairs.resize(idx.size());
    parallel_for(options.jobs, static_cast<long>(idx.size()), [&](long k) {
      auto [i, j] = idx[static_cast<std::size_t>(k)];
      SuitePairEntry e;
      e.i = i;
      e.j = j;
      e.rep = separated(rep.graphs[i].chi, rep.graphs[j].chi);
      rep.pairs[static_cast<std::size_t>(k)] = std::move(e);
    });
  }
  return rep;
}

}  // namespace cmg
