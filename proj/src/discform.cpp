#include "latforge/discform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

#include "latforge/numtheory.hpp"

namespace latforge {

mpq_class mod2(const mpq_class& x) {
  mpz_class two_den = 2 * x.get_den();
  mpz_class n = x.get_num() % two_den;
  if (n < 0) n += two_den;
  mpq_class r(n, x.get_den());
  r.canonicalize();
  return r;
}

mpq_class mod1(const mpq_class& x) {
  mpz_class n = x.get_num() % x.get_den();
  if (n < 0) n += x.get_den();
  mpq_class r(n, x.get_den());
  r.canonicalize();
  return r;
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<mpz_class> orders, std::vector<mpq_class> q,
                                         std::vector<std::vector<mpq_class>> b)
    : orders_(std::move(orders)), q_(std::move(q)), b_(std::move(b)) {
  std::size_t n = orders_.size();
  if (q_.size() != n || b_.size() != n) throw InputError("form: table sizes differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (orders_[i] < 2) throw InputError("form: generator orders must be > 1");
    if (b_[i].size() != n) throw InputError("form: b table is not square");
    q_[i] = mod2(q_[i]);
    for (std::size_t j = 0; j < n; ++j) b_[i][j] = mod1(b_[i][j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mod1(q_[i]) != b_[i][i]) throw InputError("form: b(g,g) != q(g) mod 1");
    if (mod2(orders_[i] * orders_[i] * q_[i]) != 0) throw InputError("form: q(order*g) != 0");
    for (std::size_t j = 0; j < n; ++j) {
      if (b_[i][j] != b_[j][i]) throw InputError("form: b table is not symmetric");
      if (mod1(orders_[i] * b_[i][j]) != 0) throw InputError("form: b(order*g, h) != 0");
    }
  }
}

mpz_class FiniteQuadraticForm::size() const {
  mpz_class s = 1;
  for (const auto& o : orders_) s *= o;
  return s;
}

mpq_class FiniteQuadraticForm::q_of(const IntVector& x) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < ngens(); ++i) {
    if (x[i] == 0) continue;
    s += x[i] * x[i] * q_[i];
    for (std::size_t j = i + 1; j < ngens(); ++j)
      if (x[j] != 0) s += 2 * x[i] * x[j] * b_[i][j];
  }
  return mod2(s);
}

mpq_class FiniteQuadraticForm::b_of(const IntVector& x, const IntVector& y) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < ngens(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < ngens(); ++j)
      if (y[j] != 0) s += x[i] * y[j] * b_[i][j];
  }
  return mod1(s);
}

std::vector<mpz_class> FiniteQuadraticForm::primes() const {
  std::vector<mpz_class> ps;
  for (const auto& o : orders_)
    for (const auto& p : prime_divisors(o))
      if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  return ps;
}

FiniteQuadraticForm discriminant_form(const Lattice& l) {
  if (!is_even(l)) throw MathError("discriminant form needs an even lattice");
  if (!is_nondegenerate(l)) throw MathError("discriminant form needs a nondegenerate lattice");
  DiscriminantGroup g = discriminant_group(l);
  std::size_t n = g.length();
  RatMatrix gr = to_rational(l.gram());
  RatMatrix prod = g.generators * gr * g.generators.transpose();
  std::vector<mpq_class> q(n);
  std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = prod(i, i);
    for (std::size_t j = 0; j < n; ++j) b[i][j] = prod(i, j);
  }
  FiniteQuadraticForm f(g.orders, q, b);
  f.set_coords(g.generators);
  return f;
}

FiniteQuadraticForm negate(const FiniteQuadraticForm& f) {
  std::size_t n = f.ngens();
  std::vector<mpq_class> q(n);
  std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = -f.q(i);
    for (std::size_t j = 0; j < n; ++j) b[i][j] = -f.b(i, j);
  }
  FiniteQuadraticForm r(f.orders(), q, b);
  if (f.coords()) r.set_coords(*f.coords());
  return r;
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& x, const FiniteQuadraticForm& y) {
  std::size_t n = x.ngens(), m = y.ngens();
  std::vector<mpz_class> o = x.orders();
  o.insert(o.end(), y.orders().begin(), y.orders().end());
  std::vector<mpq_class> q(n + m);
  std::vector<std::vector<mpq_class>> b(n + m, std::vector<mpq_class>(n + m));
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = x.q(i);
    for (std::size_t j = 0; j < n; ++j) b[i][j] = x.b(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    q[n + i] = y.q(i);
    for (std::size_t j = 0; j < m; ++j) b[n + i][n + j] = y.b(i, j);
  }
  return FiniteQuadraticForm(o, q, b);
}

PrimaryPart primary_part(const FiniteQuadraticForm& f, const mpz_class& p) {
  PrimaryPart pp;
  std::vector<mpz_class> orders;
  for (std::size_t i = 0; i < f.ngens(); ++i) {
    int a = valuation(f.orders()[i], p);
    if (a == 0) continue;
    mpz_class pa;
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), a);
    pp.source.push_back(i);
    pp.multiplier.push_back(f.orders()[i] / pa);
    orders.push_back(pa);
  }
  std::size_t n = orders.size();
  std::vector<mpq_class> q(n);
  std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class& mi = pp.multiplier[i];
    q[i] = mi * mi * f.q(pp.source[i]);
    for (std::size_t j = 0; j < n; ++j) b[i][j] = mi * pp.multiplier[j] * f.b(pp.source[i], pp.source[j]);
  }
  pp.form = FiniteQuadraticForm(orders, q, b);
  if (f.coords()) {
    RatMatrix c(0, f.coords()->cols());
    for (std::size_t i = 0; i < n; ++i) {
      RatVector r = f.coords()->row(pp.source[i]);
      for (auto& x : r) x *= pp.multiplier[i];
      c.append_row(r);
    }
    pp.form.set_coords(c);
  }
  return pp;
}

FiniteQuadraticForm p_primary_part(const FiniteQuadraticForm& q, const mpz_class& p) {
  return primary_part(q, p).form;
}

std::size_t p_length(const FiniteQuadraticForm& q, const mpz_class& p) {
  // generators are independent cyclic factors, so this counts the invariant factors
  std::size_t n = 0;
  for (const auto& o : q.orders())
    if (mpz_divisible_p(o.get_mpz_t(), p.get_mpz_t())) ++n;
  return n;
}

std::vector<IntVector> all_elements(const FiniteQuadraticForm& q) {
  std::vector<IntVector> out;
  if (q.size() > 5000000) throw MathError("group too large to enumerate");
  IntVector x(q.ngens(), 0);
  for (;;) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < x.size()) {
      x[i] += 1;
      if (x[i] < q.orders()[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == x.size()) break;
  }
  return out;
}

namespace {

using i128 = __int128;

// A p-group form with every element enumerated, all values scaled to integers.
struct PForm {
  long p = 0;
  long N = 1;  // group exponent
  std::vector<long> ord;
  std::vector<long> qn;               // q(g_i) * N mod 2N
  std::vector<std::vector<long>> bn;  // b(g_i,g_j) * N mod N
  long size = 1;
  std::vector<long> eq;    // per element: q * N mod 2N
  std::vector<long> eord;  // per element order

  explicit PForm(const FiniteQuadraticForm& f, long prime) : p(prime) {
    std::size_t n = f.ngens();
    if (f.size() > (1L << 22)) throw MathError("p-part too large for element enumeration");
    for (std::size_t i = 0; i < n; ++i) {
      long o = f.orders()[i].get_si();
      ord.push_back(o);
      N = std::max(N, o);
      size *= o;
    }
    qn.resize(n);
    bn.assign(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
      mpq_class t = f.q(i) * N;
      if (t.get_den() != 1) throw MathError("q value denominator exceeds the group exponent");
      qn[i] = t.get_num().get_si();
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class u = f.b(i, j) * N;
        if (u.get_den() != 1) throw MathError("b value denominator exceeds the group exponent");
        bn[i][j] = u.get_num().get_si();
      }
    }
    eq.resize(size);
    eord.resize(size);
    std::vector<long> x(n, 0);
    for (long idx = 0; idx < size; ++idx) {
      decode(idx, x);
      eq[idx] = qval(x);
      long o = 1;
      for (std::size_t i = 0; i < n; ++i)
        if (x[i]) o = std::max(o, ord[i] / std::gcd(x[i], ord[i]));
      eord[idx] = o;
    }
  }

  void decode(long idx, std::vector<long>& x) const {
    for (std::size_t i = 0; i < ord.size(); ++i) {
      x[i] = idx % ord[i];
      idx /= ord[i];
    }
  }

  long encode(const std::vector<long>& x) const {
    long idx = 0;
    for (std::size_t i = ord.size(); i-- > 0;) idx = idx * ord[i] + x[i];
    return idx;
  }

  long qval(const std::vector<long>& x) const {
    i128 s = 0;
    long twoN = 2 * N;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i]) continue;
      s += (i128)x[i] * x[i] % twoN * qn[i];
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if (x[j]) s += (i128)2 * x[i] * x[j] % twoN * bn[i][j];
      s %= twoN;
    }
    return (long)(s % twoN);
  }

  long bval(const std::vector<long>& x, const std::vector<long>& y) const {
    i128 s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j]) s = (s + (i128)x[i] * y[j] % N * bn[i][j]) % N;
    }
    return (long)s;
  }

  std::map<std::pair<long, long>, long> histogram() const {
    std::map<std::pair<long, long>, long> h;
    for (long i = 0; i < size; ++i) ++h[{eord[i], eq[i]}];
    return h;
  }

  std::map<long, long> order_histogram() const {
    std::map<long, long> h;
    for (long i = 0; i < size; ++i) ++h[eord[i]];
    return h;
  }

  // Gauss sum argument as a residue mod 8.
  int signature() const {
    std::map<long, long> h;
    for (long i = 0; i < size; ++i) ++h[eq[i]];
    std::complex<long double> s = 0;
    const long double pi = 3.14159265358979323846264338327950288L;
    for (auto [v, c] : h) s += (long double)c * std::polar(1.0L, pi * v / N);
    long double mag2 = std::norm(s);
    if (std::fabs(mag2 - (long double)size) > 1e-6L * size) throw MathError("milgram: degenerate form");
    long double arg = std::arg(s) / (pi / 4);
    long r = std::lround(arg);
    if (std::fabs(arg - r) > 1e-6L) throw MathError("milgram: Gauss sum argument not a multiple of pi/4");
    return (int)(((r % 8) + 8) % 8);
  }

  bool nondegenerate() const {
    std::vector<long> x(ord.size()), e(ord.size(), 0);
    for (long idx = 1; idx < size; ++idx) {
      decode(idx, x);
      bool radical = true;
      for (std::size_t i = 0; i < ord.size() && radical; ++i) {
        std::fill(e.begin(), e.end(), 0);
        e[i] = 1;
        if (bval(x, e) != 0) radical = false;
      }
      if (radical) return false;
    }
    return true;
  }

  // Size of the subgroup generated by the given elements.
  long span_size(const std::vector<long>& gens) const {
    std::vector<char> seen(size, 0);
    std::vector<long> stack = {0};
    seen[0] = 1;
    long count = 1;
    std::vector<long> x(ord.size()), y(ord.size()), z(ord.size());
    while (!stack.empty()) {
      long cur = stack.back();
      stack.pop_back();
      decode(cur, x);
      for (long g : gens) {
        decode(g, y);
        for (std::size_t i = 0; i < ord.size(); ++i) z[i] = (x[i] + y[i]) % ord[i];
        long nxt = encode(z);
        if (!seen[nxt]) {
          seen[nxt] = 1;
          ++count;
          stack.push_back(nxt);
        }
      }
    }
    return count;
  }
};

struct PIso {
  bool ok = false;
  std::string reason;
  std::vector<long> images;  // element index in target per source generator
};

PIso p_isomorphism(const PForm& A, const PForm& B) {
  PIso res;
  if (A.size != B.size) {
    res.reason = "group orders differ";
    return res;
  }
  if (A.N != B.N || A.order_histogram() != B.order_histogram()) {
    res.reason = "group structures differ";
    return res;
  }
  if (A.histogram() != B.histogram()) {
    res.reason = "q-value histograms differ";
    return res;
  }
  if (A.signature() != B.signature()) {
    res.reason = "Gauss sums differ";
    return res;
  }
  std::size_t n = A.ord.size();
  std::map<std::pair<long, long>, std::vector<long>> bucket;
  for (long i = 0; i < B.size; ++i) bucket[{B.eord[i], B.eq[i]}].push_back(i);
  std::vector<const std::vector<long>*> cand(n);
  static const std::vector<long> none;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = bucket.find({A.ord[i], A.qn[i]});
    cand[i] = it == bucket.end() ? &none : &it->second;
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return cand[a]->size() < cand[b]->size(); });
  std::vector<std::vector<long>> coords(n, std::vector<long>(n));
  std::vector<long> chosen(n, -1);
  std::vector<long> y(n);
  long nodes = 0;
  const long budget = 400000000;
  // depth-first search over generator images
  std::vector<std::size_t> pos(n + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == n) {
      std::vector<long> imgs(chosen.begin(), chosen.end());
      if (B.span_size(imgs) == B.size) {
        res.ok = true;
        res.images.assign(n, 0);
        for (std::size_t d = 0; d < n; ++d) res.images[perm[d]] = chosen[d];
        return res;
      }
      --depth;
      continue;
    }
    std::size_t gi = perm[depth];
    const auto& cs = *cand[gi];
    bool advanced = false;
    while (pos[depth] < cs.size()) {
      long c = cs[pos[depth]++];
      if (++nodes > budget) throw MathError("form isomorphism search exceeded its budget");
      B.decode(c, y);
      bool good = true;
      for (std::size_t d = 0; d < depth && good; ++d)
        if (B.bval(y, coords[d]) != A.bn[gi][perm[d]]) good = false;
      if (!good) continue;
      chosen[depth] = c;
      coords[depth] = y;
      ++depth;
      pos[depth] = 0;
      advanced = true;
      break;
    }
    if (advanced) continue;
    if (depth == 0) break;
    --depth;
  }
  res.reason = "no q-preserving isomorphism exists";
  return res;
}

}  // namespace

bool is_nondegenerate(const FiniteQuadraticForm& q) {
  for (const auto& p : q.primes()) {
    PForm f(p_primary_part(q, p), p.get_si());
    if (!f.nondegenerate()) return false;
  }
  return true;
}

int milgram_signature(const FiniteQuadraticForm& q) {
  int s = 0;
  for (const auto& p : q.primes()) {
    PForm f(p_primary_part(q, p), p.get_si());
    s += f.signature();
  }
  return s % 8;
}

IsoResult are_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, bool want_witness) {
  IsoResult res;
  if (a.size() != b.size()) {
    res.reason = "group orders differ";
    return res;
  }
  std::vector<mpz_class> ps = a.primes();
  if (ps != b.primes()) {
    res.reason = "group orders differ";
    return res;
  }
  res.witness = IntMatrix(a.ngens(), b.ngens());
  for (const auto& p : ps) {
    PrimaryPart pa = primary_part(a, p), pb = primary_part(b, p);
    PForm fa(pa.form, p.get_si()), fb(pb.form, p.get_si());
    PIso iso = p_isomorphism(fa, fb);
    if (!iso.ok) {
      res.reason = "p=" + p.get_str() + ": " + iso.reason;
      return res;
    }
    if (!want_witness) continue;
    std::vector<long> y(pb.form.ngens());
    for (std::size_t i = 0; i < pa.source.size(); ++i) {
      // source generator g = sum_p e_p (m_p g), with e_p = m_p^{-1} mod p^a
      std::size_t src = pa.source[i];
      mpz_class e;
      mpz_invert(e.get_mpz_t(), pa.multiplier[i].get_mpz_t(), pa.form.orders()[i].get_mpz_t());
      fb.decode(iso.images[i], y);
      for (std::size_t j = 0; j < pb.source.size(); ++j) {
        std::size_t tgt = pb.source[j];
        res.witness(src, tgt) += e * y[j] * pb.multiplier[j];
      }
    }
  }
  for (std::size_t i = 0; i < a.ngens(); ++i)
    for (std::size_t j = 0; j < b.ngens(); ++j) {
      mpz_class r = res.witness(i, j) % b.orders()[j];
      if (r < 0) r += b.orders()[j];
      res.witness(i, j) = r;
    }
  res.isomorphic = true;
  return res;
}

bool is_form_map(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const IntMatrix& m, int s,
                 std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (m.rows() != a.ngens() || m.cols() != b.ngens()) return fail("map has wrong shape");
  if (a.size() != b.size()) return fail("group orders differ");
  for (std::size_t i = 0; i < a.ngens(); ++i) {
    IntVector yi = m.row(i);
    for (std::size_t j = 0; j < b.ngens(); ++j)
      if (!mpz_divisible_p(mpz_class(a.orders()[i] * yi[j]).get_mpz_t(), b.orders()[j].get_mpz_t()))
        return fail("generator " + std::to_string(i) + ": image order does not divide source order");
    if (b.q_of(yi) != mod2(s * a.q(i))) return fail("generator " + std::to_string(i) + ": q value not matched");
    for (std::size_t k = 0; k < a.ngens(); ++k)
      if (b.b_of(yi, m.row(k)) != mod1(s * a.b(i, k)))
        return fail("generators " + std::to_string(i) + "," + std::to_string(k) + ": b value not matched");
  }
  // surjectivity: image rows together with the relations span Z^n
  IntMatrix span = m;
  for (std::size_t j = 0; j < b.ngens(); ++j) {
    IntVector r(b.ngens(), 0);
    r[j] = b.orders()[j];
    span.append_row(r);
  }
  IntMatrix basis = row_basis(span);
  if (basis.rows() != b.ngens() || determinant(basis) != 1) return fail("map is not surjective");
  return true;
}

}  // namespace latforge
