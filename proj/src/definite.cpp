#include "latforge/definite.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "latforge/discform.hpp"

namespace latforge {

namespace {

mpz_class round_q(const mpq_class& q) {
  // floor(q + 1/2)
  mpz_class num = 2 * q.get_num() + q.get_den(), den = 2 * q.get_den(), r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

// Positive definite version of a definite lattice: returns the sign used.
int orientation(const Lattice& l) {
  if (l.rank() == 0) return 1;
  if (is_positive_definite(l)) return 1;
  if (is_negative_definite(l)) return -1;
  throw MathError("lattice is not definite");
}

IntMatrix oriented_gram(const Lattice& l, int s) {
  IntMatrix g = l.gram();
  if (s < 0)
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
  return g;
}

}  // namespace

IntMatrix lll_reduce(const IntMatrix& gram) {
  std::size_t n = gram.rows();
  IntMatrix t = IntMatrix::identity(n);
  if (n < 2) return t;
  IntMatrix g = gram;
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
      mu[i][j] = s / b[j];
    }
    mpq_class s = g(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
    b[i] = s;
    if (b[i] <= 0) throw MathError("LLL: Gramian is not positive definite");
  }
  auto reduce = [&](std::size_t k, std::size_t j) {
    mpz_class r = round_q(mu[k][j]);
    if (r == 0) return;
    for (std::size_t c = 0; c < n; ++c) t(k, c) -= r * t(j, c);
    // g <- E g E^T with E = I - r e_k e_j^T
    for (std::size_t c = 0; c < n; ++c) g(k, c) -= r * g(j, c);
    for (std::size_t c = 0; c < n; ++c) g(c, k) -= r * g(c, j);
    for (std::size_t l = 0; l < j; ++l) mu[k][l] -= r * mu[j][l];
    mu[k][j] -= r;
  };
  const mpq_class delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    reduce(k, k - 1);
    if (b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
      mpq_class m = mu[k][k - 1];
      mpq_class bn = b[k] + m * m * b[k - 1];
      t.swap_rows(k, k - 1);
      g.swap_rows(k, k - 1);
      g.swap_cols(k, k - 1);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      mu[k][k - 1] = m * b[k - 1] / bn;
      b[k] = b[k - 1] * b[k] / bn;
      b[k - 1] = bn;
      for (std::size_t i = k + 1; i < n; ++i) {
        mpq_class x = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * x;
        mu[i][k - 1] = x + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t j = k - 1; j-- > 0;) reduce(k, j);
      ++k;
    }
  }
  return t;
}

std::size_t ShortVectorList::count_with_norm(const mpz_class& n) const {
  return static_cast<std::size_t>(std::count(norms.begin(), norms.end(), n));
}

namespace {

// All nonzero y with y^T a y <= bound for positive definite a (both signs).
void fincke_pohst(const IntMatrix& a, const mpz_class& bound, const std::function<void(const IntVector&, const mpz_class&)>& emit) {
  std::size_t n = a.rows();
  if (n == 0) return;
  std::vector<std::vector<mpq_class>> q(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = a(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  IntVector x(n);
  std::vector<mpq_class> rem(n + 1);
  rem[n] = bound;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    mpq_class c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += q[i][j] * x[j];
    mpq_class r = rem[i + 1] / q[i][i];
    mpz_class m = round_q(-c);
    auto visit = [&](const mpz_class& xi) {
      mpq_class d = xi + c;
      mpq_class used = q[i][i] * d * d;
      if (used > rem[i + 1]) return false;
      x[i] = xi;
      rem[i] = rem[i + 1] - used;
      if (i == 0) {
        bool zero = std::all_of(x.begin(), x.end(), [](const mpz_class& v) { return v == 0; });
        if (!zero) {
          mpq_class norm = mpq_class(bound) - rem[0];
          emit(x, norm.get_num());
        }
      } else {
        rec(i - 1);
      }
      return true;
    };
    (void)r;
    for (mpz_class xi = m;; --xi)
      if (!visit(xi)) break;
    for (mpz_class xi = m + 1;; ++xi)
      if (!visit(xi)) break;
    x[i] = 0;
  };
  rec(n - 1);
}

bool lex_positive(const IntVector& v) {
  for (const auto& e : v)
    if (e != 0) return e > 0;
  return false;
}

}  // namespace

ShortVectorList short_vectors(const Lattice& l, const mpz_class& bound) {
  int s = orientation(l);
  IntMatrix a = oriented_gram(l, s);
  IntMatrix t = lll_reduce(a);
  IntMatrix ar = t * a * t.transpose();
  IntMatrix tt = t.transpose();
  ShortVectorList out;
  out.bound = bound;
  std::vector<std::pair<IntVector, mpz_class>> found;
  fincke_pohst(ar, bound, [&](const IntVector& y, const mpz_class& norm) {
    IntVector x = tt * y;
    if (!lex_positive(x)) return;
    found.push_back({x, s > 0 ? norm : mpz_class(-norm)});
  });
  std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) {
    if (abs(p.second) != abs(q.second)) return abs(p.second) < abs(q.second);
    return p.first < q.first;
  });
  for (auto& [v, nm] : found) {
    out.vectors.push_back(v);
    out.norms.push_back(nm);
  }
  return out;
}

bool RootComponent::operator<(const RootComponent& o) const {
  if (type != o.type) return type < o.type;
  return rank > o.rank;
}

int RootType::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.rank;
  return r;
}

std::string to_string(const RootType& t) {
  if (t.empty()) return "0";
  std::string out;
  std::size_t i = 0;
  while (i < t.components.size()) {
    std::size_t j = i;
    while (j < t.components.size() && t.components[j] == t.components[i]) ++j;
    if (!out.empty()) out += "+";
    out += t.components[i].type + std::to_string(t.components[i].rank);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

RootType parse_root_type(const std::string& text) {
  // strip TeX decoration: braces, underscores, backslash commands, spaces
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
      std::string cmd = text.substr(i + 1, j - i - 1);
      if (cmd == "oplus") s += '+';
      i = j - 1;
      continue;
    }
    if (c == '{' || c == '}' || c == '_' || c == ' ' || c == '$') continue;
    s += c;
  }
  RootType t;
  if (s.empty() || s == "0") return t;
  std::size_t i = 0;
  auto number = [&](int& v) {
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) throw InputError("bad root type \"" + text + "\"");
    v = std::stoi(s.substr(st, i - st));
  };
  while (i < s.size()) {
    char ty = s[i++];
    if (ty != 'A' && ty != 'D' && ty != 'E') throw InputError("bad root type \"" + text + "\"");
    int r = 0, m = 1;
    number(r);
    if (i < s.size() && s[i] == '(') {
      // a scaling such as E8(-1) does not change the type
      while (i < s.size() && s[i] != ')') ++i;
      ++i;
    }
    if (i < s.size() && s[i] == '^') {
      ++i;
      if (i < s.size() && s[i] == '+') ++i;  // "^{\oplus n}" after stripping
      number(m);
    }
    bool ok = (ty == 'A' && r >= 1) || (ty == 'D' && r >= 4) || (ty == 'E' && r >= 6 && r <= 8);
    if (!ok || m < 1) throw InputError("bad root component in \"" + text + "\"");
    for (int k = 0; k < m; ++k) t.components.push_back({ty, r});
    if (i < s.size()) {
      if (s[i] != '+') throw InputError("bad root type \"" + text + "\"");
      ++i;
    }
  }
  std::sort(t.components.begin(), t.components.end());
  return t;
}

namespace {

mpz_class nth_prime(int k) {
  mpz_class p = 2;
  for (int i = 0; i < k; ++i) mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  return p;
}

RootComponent classify(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes) {
  int n = static_cast<int>(nodes.size());
  int edges = 0;
  std::vector<int> branch;
  for (int v : nodes) {
    edges += static_cast<int>(adj[v].size());
    if (adj[v].size() >= 3) branch.push_back(v);
  }
  edges /= 2;
  if (edges != n - 1) throw MathError("simple roots do not form a tree");
  if (branch.empty()) return {'A', n};
  if (branch.size() != 1 || adj[branch[0]].size() != 3) throw MathError("simple roots do not form an ADE diagram");
  std::vector<int> arms;
  for (int nb : adj[branch[0]]) {
    int len = 1, prev = branch[0], cur = nb;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', n};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return {'E', n};
  throw MathError("simple roots do not form an ADE diagram");
}

}  // namespace

RootSystem root_system(const Lattice& l, int functional_seed) {
  int s = orientation(l);
  RootSystem rs;
  auto sv = short_vectors(l, 2);
  std::vector<IntVector> roots;
  for (std::size_t i = 0; i < sv.vectors.size(); ++i)
    if (sv.norms[i] == 2 * s) {
      roots.push_back(sv.vectors[i]);
      IntVector m = sv.vectors[i];
      for (auto& e : m) e = -e;
      roots.push_back(m);
    }
  if (roots.empty()) return rs;
  std::size_t n = l.rank();
  std::vector<mpq_class> w(n);
  for (int attempt = 0;; ++attempt) {
    mpq_class delta(1, nth_prime(functional_seed + attempt));
    delta.canonicalize();
    for (std::size_t i = 0; i < n; ++i) w[i] = 1 + mpq_class(static_cast<long>(i)) * delta;
    bool ok = true;
    for (const auto& r : roots) {
      mpq_class f = 0;
      for (std::size_t i = 0; i < n; ++i) f += w[i] * r[i];
      if (f == 0) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    if (attempt > 200) throw MathError("no generic functional found");
  }
  for (const auto& r : roots) {
    mpq_class f = 0;
    for (std::size_t i = 0; i < n; ++i) f += w[i] * r[i];
    if (f > 0) rs.positive.push_back(r);
  }
  std::sort(rs.positive.begin(), rs.positive.end());
  std::set<IntVector> pos(rs.positive.begin(), rs.positive.end()), decomposable;
  for (std::size_t i = 0; i < rs.positive.size(); ++i)
    for (std::size_t j = i + 1; j < rs.positive.size(); ++j) {
      IntVector sum(n);
      for (std::size_t k = 0; k < n; ++k) sum[k] = rs.positive[i][k] + rs.positive[j][k];
      if (pos.count(sum)) decomposable.insert(sum);
    }
  for (const auto& r : rs.positive)
    if (!decomposable.count(r)) rs.simple.push_back(r);
  std::size_t m = rs.simple.size();
  std::vector<std::vector<int>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      mpz_class ip = l.inner(rs.simple[i], rs.simple[j]) * s;
      if (ip == 0) continue;
      if (ip != -1) throw MathError("simple roots with inner product " + ip.get_str());
      adj[i].push_back(static_cast<int>(j));
      adj[j].push_back(static_cast<int>(i));
    }
  std::vector<bool> seen(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (seen[i]) continue;
    std::vector<int> comp, stack{static_cast<int>(i)};
    seen[i] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u : adj[v])
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
    }
    rs.type.components.push_back(classify(adj, comp));
  }
  std::sort(rs.type.components.begin(), rs.type.components.end());
  return rs;
}

RootType root_sublattice_type(const Lattice& l) { return root_system(l).type; }

namespace {

struct MatrixHash {
  std::size_t operator()(const IntMatrix& m) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& x : m.data()) h = (h ^ static_cast<std::size_t>(x.get_si())) * 1099511628211ull;
    return h;
  }
};

using Vec = std::vector<long long>;

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) throw MathError("entry too large for the enumeration");
  return z.get_si();
}

// Backtracking over images of basis vectors: the image of e_i must be a vector x_i of b
// with x_i^T b x_j = a_ij. Basis vectors are visited in fail-first order.
class MapSearch {
 public:
  MapSearch(const IntMatrix& a, const IntMatrix& b) : n_(a.rows()), am_(n_, Vec(n_)), bm_(n_, Vec(n_)) {
    mpz_class maxnorm = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        am_[i][j] = to_ll(a(i, j));
        bm_[i][j] = to_ll(b(i, j));
      }
    for (std::size_t i = 0; i < n_; ++i) maxnorm = std::max(maxnorm, mpz_class(a(i, i)));
    std::map<long long, std::vector<Vec>> by_norm;
    fincke_pohst(b, maxnorm, [&](const IntVector& y, const mpz_class& norm) {
      if (!lex_positive(y)) return;
      Vec v(n_);
      for (std::size_t k = 0; k < n_; ++k) v[k] = to_ll(y[k]);
      by_norm[to_ll(norm)].push_back(v);
    });
    cand_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      auto it = by_norm.find(am_[i][i]);
      if (it != by_norm.end()) cand_[i] = it->second;
    }
    order_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) { return cand_[x].size() < cand_[y].size(); });
  }

  const std::vector<std::size_t>& order() const { return order_; }
  const std::vector<Vec>& candidates(std::size_t i) const { return cand_[i]; }

  // Images of order()[0..forced.size()) are fixed to forced; leaf returns false to stop.
  // Returns false if the search was stopped.
  bool run(const std::vector<Vec>& forced, const std::function<bool(const std::vector<Vec>&)>& leaf) {
    img_.assign(n_, Vec());
    bimg_.assign(n_, Vec());
    stop_ = false;
    rec(0, forced, leaf);
    return !stop_;
  }

  bool fits(std::size_t depth, const Vec& u) const {
    std::size_t i = order_[depth];
    for (std::size_t d = 0; d < depth; ++d) {
      std::size_t j = order_[d];
      long long ip = 0;
      for (std::size_t k = 0; k < n_; ++k) ip += bimg_[j][k] * u[k];
      if (ip != am_[j][i]) return false;
    }
    return true;
  }

 private:
  void place(std::size_t i, const Vec& u) {
    img_[i] = u;
    Vec w(n_, 0);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) w[r] += bm_[r][c] * u[c];
    bimg_[i] = w;
  }

  void rec(std::size_t depth, const std::vector<Vec>& forced, const std::function<bool(const std::vector<Vec>&)>& leaf) {
    if (stop_) return;
    if (depth == n_) {
      if (!leaf(img_)) stop_ = true;
      return;
    }
    std::size_t i = order_[depth];
    if (depth < forced.size()) {
      if (!fits(depth, forced[depth])) return;
      place(i, forced[depth]);
      rec(depth + 1, forced, leaf);
      return;
    }
    for (const Vec& v0 : cand_[i]) {
      for (int sgn : {1, -1}) {
        Vec u = v0;
        if (sgn < 0)
          for (auto& e : u) e = -e;
        if (!fits(depth, u)) continue;
        place(i, u);
        rec(depth + 1, forced, leaf);
        if (stop_) return;
      }
    }
  }

  std::size_t n_;
  std::vector<Vec> am_, bm_;
  std::vector<std::vector<Vec>> cand_;  // one of each +-v
  std::vector<std::size_t> order_;
  std::vector<Vec> img_, bimg_;
  bool stop_ = false;
};

IntMatrix columns_to_matrix(const std::vector<Vec>& cols) {
  std::size_t n = cols.size();
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = static_cast<long>(cols[j][i]);
  return m;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Vec mat_vec(const IntMatrix& m, const Vec& v) {
  Vec w(v.size(), 0);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) w[r] += m(r, c).get_si() * v[c];
  return w;
}

void check_rank(const Lattice& l, const DefiniteOptions& opt) {
  if (l.rank() > opt.max_rank) {
    std::ostringstream os;
    os << "rank " << l.rank() << " exceeds the enumeration cap " << opt.max_rank << "; raise it with --max-rank";
    throw InputError(os.str());
  }
}

struct ChainResult {
  std::vector<IntMatrix> generators;
  mpz_class order;
};

// Stabilizer chain along the search order: level k is the stabilizer of the first k basis vectors.
// Orbits are grown from the generators found so far; a new generator is searched only for
// candidates outside the current orbit.
ChainResult stabilizer_chain(const IntMatrix& a) {
  std::size_t n = a.rows();
  MapSearch search(a, a);
  const auto& ord = search.order();
  ChainResult res;
  res.order = 1;
  std::vector<IntMatrix> gens;
  for (std::size_t k = n; k-- > 0;) {
    std::size_t i = ord[k];
    std::vector<Vec> forced;
    for (std::size_t d = 0; d < k; ++d) forced.push_back(unit(n, ord[d]));
    std::set<Vec> orbit{unit(n, i)};
    auto grow = [&]() {
      std::vector<Vec> queue(orbit.begin(), orbit.end());
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& g : gens) {
          Vec w = mat_vec(g, queue[q]);
          if (orbit.insert(w).second) queue.push_back(w);
        }
    };
    grow();
    for (const Vec& v0 : search.candidates(i)) {
      for (int sgn : {1, -1}) {
        Vec u = v0;
        if (sgn < 0)
          for (auto& e : u) e = -e;
        if (orbit.count(u)) continue;
        std::vector<Vec> f = forced;
        f.push_back(u);
        IntMatrix found;
        search.run(f, [&](const std::vector<Vec>& cols) {
          found = columns_to_matrix(cols);
          return false;
        });
        if (found.rows() == 0) continue;
        gens.push_back(found);
        orbit.insert(u);
        grow();
      }
    }
    res.order *= static_cast<unsigned long>(orbit.size());
  }
  res.generators = gens;
  return res;
}

}  // namespace

namespace {

struct FlatHash {
  std::size_t operator()(const Vec& m) const {
    std::size_t h = 1469598103934665603ull;
    for (long long x : m) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::vector<IntMatrix> closure(const std::vector<IntMatrix>& gens, std::size_t cap) {
  if (gens.empty()) return {};
  std::size_t n = gens[0].rows();
  auto flat = [&](const IntMatrix& m) {
    Vec v(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = to_ll(m(i, j));
    return v;
  };
  std::vector<Vec> fg;
  for (const auto& g : gens) fg.push_back(flat(g));
  std::unordered_set<Vec, FlatHash> seen;
  std::vector<Vec> out{flat(IntMatrix::identity(n))};
  seen.insert(out[0]);
  Vec h(n * n);
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : fg) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          long long acc = 0;
          for (std::size_t l = 0; l < n; ++l) acc += out[k][i * n + l] * g[l * n + j];
          h[i * n + j] = acc;
        }
      if (seen.insert(h).second) {
        out.push_back(h);
        if (out.size() > cap) throw MathError("group closure exceeds the element cap");
      }
    }
  }
  std::vector<IntMatrix> res;
  res.reserve(out.size());
  for (const auto& v : out) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(v[i * n + j]);
    res.push_back(std::move(m));
  }
  return res;
}

namespace {

// Greedy generating set: keep each element not yet in the span of the earlier ones.
std::vector<IntMatrix> pick_generators(const std::vector<IntMatrix>& elements) {
  std::vector<IntMatrix> gens;
  if (elements.empty()) return gens;
  std::unordered_set<IntMatrix, MatrixHash> span;
  span.insert(IntMatrix::identity(elements[0].rows()));
  for (const auto& e : elements) {
    if (span.count(e)) continue;
    gens.push_back(e);
    auto c = closure(gens, elements.size());
    span = std::unordered_set<IntMatrix, MatrixHash>(c.begin(), c.end());
    if (span.size() == elements.size()) break;
  }
  return gens;
}

std::vector<IntMatrix> conjugate_all(const std::vector<IntMatrix>& ms, const IntMatrix& p, const IntMatrix& p_inv) {
  std::vector<IntMatrix> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(p * m * p_inv);
  return out;
}

}  // namespace

IsometryGroup isometry_group(const Lattice& l, const DefiniteOptions& opt) {
  check_rank(l, opt);
  IsometryGroup g;
  std::size_t n = l.rank();
  if (n == 0) {
    g.order = 1;
    g.certified = true;
    g.elements.push_back(IntMatrix(0, 0));
    return g;
  }
  int s = orientation(l);
  IntMatrix a = oriented_gram(l, s);
  IntMatrix t = lll_reduce(a);
  IntMatrix ar = t * a * t.transpose();
  // an isometry m of ar becomes t^T m t^-T in the original coordinates
  IntMatrix tt = t.transpose();
  IntMatrix tt_inv = to_integer(inverse_rational(tt));
  ChainResult chain = stabilizer_chain(ar);
  g.order = chain.order;
  g.generators = conjugate_all(chain.generators, tt, tt_inv);
  if (g.order > opt.max_elements) return g;
  if (g.generators.empty())
    g.elements = {IntMatrix::identity(n)};
  else
    g.elements = closure(g.generators, opt.max_elements);
  std::sort(g.elements.begin(), g.elements.end());
  g.certified = g.elements.size() == g.order;
  if (!g.certified) throw MathError("isometry group: element count disagrees with the stabilizer chain");
  return g;
}

IsometryGroup O0_subgroup(const Lattice& l, const DefiniteOptions& opt) {
  IsometryGroup full = isometry_group(l, opt);
  if (!full.certified) throw MathError("isometry group too large to filter");
  DiscriminantGroup dg = discriminant_group(l);
  IsometryGroup g;
  for (const auto& e : full.elements) {
    RatMatrix er = to_rational(e);
    bool trivial = true;
    for (std::size_t i = 0; i < dg.length() && trivial; ++i) {
      RatVector x = dg.generators.row(i);
      RatVector y = er * x;
      for (std::size_t k = 0; k < y.size(); ++k) {
        mpq_class d = y[k] - x[k];
        if (d.get_den() != 1) {
          trivial = false;
          break;
        }
      }
    }
    if (trivial) g.elements.push_back(e);
  }
  g.order = static_cast<unsigned long>(g.elements.size());
  g.certified = true;
  g.generators = pick_generators(g.elements);
  return g;
}

IsometryWitness are_isometric(const Lattice& a, const Lattice& b, const DefiniteOptions& opt) {
  IsometryWitness w;
  if (a.rank() != b.rank()) return w;
  if (abs(discriminant(a)) != abs(discriminant(b))) return w;
  if (!is_definite(a) || !is_definite(b)) return w;
  int sa = orientation(a), sb = orientation(b);
  if (sa != sb) return w;
  (void)opt;
  std::size_t n = a.rank();
  if (n == 0) {
    w.isometric = true;
    return w;
  }
  IntMatrix ga = oriented_gram(a, sa), gb = oriented_gram(b, sb);
  IntMatrix ta = lll_reduce(ga), tb = lll_reduce(gb);
  IntMatrix ar = ta * ga * ta.transpose(), br = tb * gb * tb.transpose();
  IntMatrix m;
  MapSearch search(ar, br);
  search.run({}, [&](const std::vector<Vec>& cols) {
    m = columns_to_matrix(cols);
    return false;
  });
  if (m.rows() == 0) return w;
  // m^T br m = ar, so M = tb^T m ta^{-T} satisfies M^T gb M = ga
  IntMatrix ta_inv_t = to_integer(inverse_rational(ta.transpose()));
  w.map = tb.transpose() * m * ta_inv_t;
  w.isometric = true;
  return w;
}

}  // namespace latforge
