#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "latforge/discform.hpp"
#include "latforge/numtheory.hpp"

namespace latforge {

bool Block::operator==(const Block& o) const {
  return kind == o.kind && p == o.p && k == o.k && sign == o.sign && eps == o.eps && mult == o.mult;
}

bool Block::operator<(const Block& o) const {
  auto key = [](const Block& b) {
    return std::make_tuple(b.p, b.k, static_cast<int>(b.kind), -b.sign, b.eps, b.mult);
  };
  return key(*this) < key(o);
}

namespace {

Block odd_block(long p, int k, int sign, int mult) {
  Block b;
  b.kind = BlockKind::OddP;
  b.p = p;
  b.k = k;
  b.sign = sign;
  b.mult = mult;
  return b;
}

Block two_block(BlockKind kind, int k, int mult, int eps = 1) {
  Block b;
  b.kind = kind;
  b.p = 2;
  b.k = k;
  b.eps = eps;
  b.mult = mult;
  return b;
}

int eps_sign(int e) { return (e == 1 || e == 7) ? 1 : -1; }

}  // namespace

// Symmetric elimination over the localization at p.
std::vector<Block> jordan_blocks(const Lattice& l, const mpz_class& p) {
  std::vector<Block> out;
  std::size_t n = l.rank();
  RatMatrix a = to_rational(l.gram());
  std::vector<bool> done(n, false);
  long pl = p.get_si();
  bool two = (p == 2);
  auto val = [&](const mpq_class& x) { return valuation(x, p); };
  auto eliminate = [&](const std::vector<std::size_t>& piv) {
    // Schur complement against a 1x1 or 2x2 pivot block
    std::size_t m = piv.size();
    RatMatrix P(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) P(i, j) = a(piv[i], piv[j]);
    RatMatrix Pi = inverse(P);
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || std::find(piv.begin(), piv.end(), r) != piv.end()) continue;
      // coefficients c = a(r, piv) * P^-1
      std::vector<mpq_class> c(m);
      bool any = false;
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) c[j] += a(r, piv[i]) * Pi(i, j);
        if (c[j] != 0) any = true;
      }
      if (!any) continue;
      for (std::size_t s = 0; s < n; ++s) {
        if (done[s] || std::find(piv.begin(), piv.end(), s) != piv.end()) continue;
        mpq_class t = 0;
        for (std::size_t j = 0; j < m; ++j) t += c[j] * a(piv[j], s);
        a(r, s) -= t;
      }
    }
    for (auto i : piv) {
      done[i] = true;
      for (std::size_t s = 0; s < n; ++s)
        if (!done[s]) a(i, s) = a(s, i) = 0;
    }
  };
  for (;;) {
    int best = 0;
    bool found = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        if (!done[i] && !done[j] && a(i, j) != 0) {
          int v = val(a(i, j));
          if (!found || v < best) {
            best = v;
            found = true;
          }
        }
    if (!found) {
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i]) throw MathError("local Jordan splitting: degenerate lattice");
      break;
    }
    std::size_t di = n;
    for (std::size_t i = 0; i < n && di == n; ++i)
      if (!done[i] && a(i, i) != 0 && val(a(i, i)) == best) di = i;
    if (di != n) {
      mpq_class unit = a(di, di);
      mpz_class pk;
      mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), best);
      unit /= pk;
      if (two)
        out.push_back(two_block(BlockKind::Odd2, best, 1, mod8_unit(unit)));
      else
        out.push_back(odd_block(pl, best, legendre_unit(unit, p), 1));
      eliminate({di});
      continue;
    }
    std::size_t pi = n, pj = n;
    for (std::size_t i = 0; i < n && pi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!done[i] && !done[j] && a(i, j) != 0 && val(a(i, j)) == best) {
          pi = i;
          pj = j;
          break;
        }
    if (!two) {
      // e_i <- e_i + e_j makes the diagonal entry have minimal valuation
      for (std::size_t s = 0; s < n; ++s) a(pi, s) += a(pj, s);
      for (std::size_t s = 0; s < n; ++s) a(s, pi) += a(s, pj);
      continue;
    }
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), best);
    mpq_class al = a(pi, pi) / pk, ga = a(pj, pj) / pk;
    mpq_class ac = al * ga / 4;
    bool is_v = ac != 0 && val(ac) == 0;
    out.push_back(two_block(is_v ? BlockKind::Even2V : BlockKind::Even2U, best, 1));
    eliminate({pi, pj});
  }
  return out;
}

BlockDecomposition block_decomposition(const Lattice& l) {
  if (!is_even(l)) throw MathError("block decomposition needs an even lattice");
  mpz_class d = discriminant(l);
  if (d == 0) throw MathError("block decomposition needs a nondegenerate lattice");
  BlockDecomposition bd;
  if (abs(d) == 1) return bd;
  for (const auto& p : prime_divisors(d))
    for (const auto& b : jordan_blocks(l, p))
      if (b.k >= 1) bd.blocks.push_back(b);
  std::sort(bd.blocks.begin(), bd.blocks.end());
  return bd;
}

namespace {

// Diagonal 2-adic units with given rank, sign and oddity; empty if impossible.
std::vector<int> diagonal_for(int r, int d, int t) {
  static const int E[4] = {1, 3, 5, 7};
  int free_n = std::min(r, 5);
  int fixed = r - free_n;
  std::vector<int> best;
  std::vector<int> cur(free_n);
  long total = 1;
  for (int i = 0; i < free_n; ++i) total *= 4;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < free_n; ++i) {
      cur[i] = E[c % 4];
      c /= 4;
    }
    if (!std::is_sorted(cur.begin(), cur.end())) continue;
    int sum = fixed, sg = 1;
    for (int e : cur) {
      sum += e;
      sg *= eps_sign(e);
    }
    if (((sum - t) % 8 + 8) % 8 != 0 || sg != d) continue;
    std::vector<int> full(fixed, 1);
    full.insert(full.end(), cur.begin(), cur.end());
    std::sort(full.begin(), full.end());
    if (best.empty() || full < best) best = full;
  }
  return best;
}

void emit_odd_scale(long p, int k, int r, int sign, std::vector<Block>& out) {
  if (r == 0) return;
  if (sign == 1) {
    out.push_back(odd_block(p, k, 1, r));
  } else {
    if (r > 1) out.push_back(odd_block(p, k, 1, r - 1));
    out.push_back(odd_block(p, k, -1, 1));
  }
}

void emit_two_scale(int k, int r, int sign, int oddity, std::vector<Block>& out) {
  if (r == 0) return;
  if (oddity < 0) {
    if (r % 2) throw InputError("even 2-adic scale with odd rank");
    int n = r / 2;
    if (sign == 1) {
      out.push_back(two_block(BlockKind::Even2U, k, n));
    } else {
      if (n > 1) out.push_back(two_block(BlockKind::Even2U, k, n - 1));
      out.push_back(two_block(BlockKind::Even2V, k, 1));
    }
    return;
  }
  std::vector<int> diag = diagonal_for(r, sign, oddity);
  if (diag.empty()) {
    std::ostringstream os;
    os << "no 2-adic form of rank " << r << ", sign " << (sign > 0 ? '+' : '-') << ", oddity " << oddity;
    throw InputError(os.str());
  }
  std::map<int, int> cnt;
  for (int e : diag) ++cnt[e];
  for (auto [e, c] : cnt) out.push_back(two_block(BlockKind::Odd2, k, c, e));
}

}  // namespace

std::vector<TwoAdicScale> two_adic_scales(const BlockDecomposition& d) {
  std::map<int, TwoAdicScale> m;
  for (const auto& b : d.blocks) {
    if (b.p != 2) continue;
    TwoAdicScale& s = m[b.k];
    s.k = b.k;
    switch (b.kind) {
      case BlockKind::Even2U:
        s.rank += 2 * b.mult;
        break;
      case BlockKind::Even2V:
        s.rank += 2 * b.mult;
        if (b.mult % 2) s.sign = -s.sign;
        break;
      case BlockKind::Odd2:
        s.rank += b.mult;
        if (s.oddity < 0) s.oddity = 0;
        s.oddity = (s.oddity + b.eps * b.mult) % 8;
        if (eps_sign(b.eps) < 0 && b.mult % 2) s.sign = -s.sign;
        break;
      default:
        break;
    }
  }
  std::vector<TwoAdicScale> v;
  for (auto& [k, s] : m) v.push_back(s);
  return v;
}

BlockDecomposition canonical(const BlockDecomposition& d) {
  BlockDecomposition c;
  std::map<std::pair<long, int>, std::pair<int, int>> odd;  // (p,k) -> (rank, sign)
  for (const auto& b : d.blocks) {
    if (b.kind != BlockKind::OddP) continue;
    auto& e = odd[{b.p, b.k}];
    if (e.second == 0) e.second = 1;
    e.first += b.mult;
    if (b.sign < 0 && b.mult % 2) e.second = -e.second;
  }
  for (const auto& s : two_adic_scales(d)) emit_two_scale(s.k, s.rank, s.sign, s.oddity, c.blocks);
  for (auto& [key, e] : odd) emit_odd_scale(key.first, key.second, e.first, e.second, c.blocks);
  std::sort(c.blocks.begin(), c.blocks.end());
  return c;
}

namespace {

std::string pow_str(long p, int k) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, k);
  return q.get_str();
}

}  // namespace

std::string render_genus_symbol(const BlockDecomposition& d) {
  std::vector<std::string> toks;
  for (const auto& s : two_adic_scales(d)) {
    if (s.rank == 0) continue;
    std::ostringstream os;
    os << pow_str(2, s.k) << '^' << (s.sign > 0 ? '+' : '-') << s.rank << '_';
    if (s.oddity < 0)
      os << "II";
    else
      os << s.oddity;
    toks.push_back(os.str());
  }
  std::map<std::pair<long, int>, std::pair<int, int>> odd;
  for (const auto& b : d.blocks) {
    if (b.kind != BlockKind::OddP) continue;
    auto& e = odd[{b.p, b.k}];
    if (e.second == 0) e.second = 1;
    e.first += b.mult;
    if (b.sign < 0 && b.mult % 2) e.second = -e.second;
  }
  for (auto& [key, e] : odd) {
    std::ostringstream os;
    os << pow_str(key.first, key.second) << '^' << (e.second > 0 ? '+' : '-') << e.first;
    toks.push_back(os.str());
  }
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) out += (i ? ", " : "") + toks[i];
  return out;
}

BlockDecomposition parse_genus_symbol(const std::string& text) {
  // normalize: drop braces and backslashes, map the unicode minus sign
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char ch = text[i];
    if (ch == 0xE2 && i + 2 < text.size() && (unsigned char)text[i + 1] == 0x88 &&
        (unsigned char)text[i + 2] == 0x92) {
      s += '-';
      i += 2;
      continue;
    }
    if (ch == '{' || ch == '}' || ch == '\\' || ch == '$') continue;
    s += static_cast<char>(ch);
  }
  BlockDecomposition bd;
  std::stringstream ss(s);
  std::string tok;
  std::map<std::pair<long, int>, bool> seen;
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char ch : tok)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) {
      if (s.find_first_not_of(" \t\n,") == std::string::npos) continue;
      throw InputError("empty token in genus symbol \"" + text + "\"");
    }
    std::size_t caret = t.find('^');
    if (caret == std::string::npos || caret == 0) throw InputError("malformed token \"" + t + "\"");
    std::string scale = t.substr(0, caret);
    if (!std::all_of(scale.begin(), scale.end(), ::isdigit)) throw InputError("malformed scale in \"" + t + "\"");
    std::size_t pos = caret + 1;
    if (pos >= t.size() || (t[pos] != '+' && t[pos] != '-')) throw InputError("missing sign in \"" + t + "\"");
    int sign = t[pos] == '+' ? 1 : -1;
    ++pos;
    std::size_t mstart = pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos == mstart) throw InputError("missing multiplicity in \"" + t + "\"");
    int mult = std::stoi(t.substr(mstart, pos - mstart));
    if (mult <= 0) throw InputError("multiplicity must be positive in \"" + t + "\"");
    std::string suffix;
    if (pos < t.size()) {
      if (t[pos] != '_') throw InputError("trailing characters in \"" + t + "\"");
      suffix = t.substr(pos + 1);
      if (suffix.empty()) throw InputError("empty suffix in \"" + t + "\"");
    }
    int k = 0;
    mpz_class p = prime_of_power(mpz_class(scale), &k);
    if (p == 0) throw InputError("scale is not a prime power in \"" + t + "\"");
    if (seen[{p.get_si(), k}]) throw InputError("repeated scale in \"" + text + "\"");
    seen[{p.get_si(), k}] = true;
    if (p != 2) {
      if (!suffix.empty()) throw InputError("oddity on an odd prime in \"" + t + "\"");
      emit_odd_scale(p.get_si(), k, mult, sign, bd.blocks);
      continue;
    }
    if (suffix.empty()) throw InputError("2-adic token needs _II or an oddity: \"" + t + "\"");
    if (suffix == "II") {
      if (mult % 2) throw InputError("_II token with odd multiplicity: \"" + t + "\"");
      emit_two_scale(k, mult, sign, -1, bd.blocks);
      continue;
    }
    if (suffix.size() != 1 || suffix[0] < '0' || suffix[0] > '7') throw InputError("bad oddity in \"" + t + "\"");
    int odd = suffix[0] - '0';
    if ((odd - mult) % 2) throw InputError("oddity parity does not match rank in \"" + t + "\"");
    emit_two_scale(k, mult, sign, odd, bd.blocks);
  }
  std::sort(bd.blocks.begin(), bd.blocks.end());
  return bd;
}

mpz_class order_of(const BlockDecomposition& d) {
  mpz_class n = 1;
  for (const auto& b : d.blocks) {
    mpz_class q;
    int r = b.kind == BlockKind::Even2U || b.kind == BlockKind::Even2V ? 2 : 1;
    mpz_ui_pow_ui(q.get_mpz_t(), b.p, static_cast<unsigned long>(b.k) * b.mult * r);
    n *= q;
  }
  return n;
}

FiniteQuadraticForm form_from_blocks(const BlockDecomposition& d) {
  std::vector<mpz_class> orders;
  std::vector<mpq_class> qs;
  std::vector<std::pair<std::size_t, mpq_class>> pairs;  // (first index of a 2x2 block, b value)
  for (const auto& b : d.blocks) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), b.p, b.k);
    for (int m = 0; m < b.mult; ++m) {
      switch (b.kind) {
        case BlockKind::OddP: {
          mpz_class u = b.sign > 0 ? mpz_class(1) : smallest_nonresidue(mpz_class(b.p));
          mpz_class a = mpz_even_p(u.get_mpz_t()) ? u : mpz_class(u + pk);
          orders.push_back(pk);
          qs.push_back(mpq_class(a, pk));
          break;
        }
        case BlockKind::Odd2:
          orders.push_back(pk);
          qs.push_back(mpq_class(b.eps, pk));
          break;
        case BlockKind::Even2U:
        case BlockKind::Even2V: {
          mpq_class qv = b.kind == BlockKind::Even2U ? mpq_class(0) : mpq_class(2, pk);
          pairs.push_back({orders.size(), mpq_class(1, pk)});
          orders.push_back(pk);
          orders.push_back(pk);
          qs.push_back(qv);
          qs.push_back(qv);
          break;
        }
      }
    }
  }
  for (auto& q : qs) q.canonicalize();
  std::size_t n = orders.size();
  std::vector<std::vector<mpq_class>> bt(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) bt[i][i] = qs[i];
  for (auto& [i, v] : pairs) bt[i][i + 1] = bt[i + 1][i] = v;
  return FiniteQuadraticForm(orders, qs, bt);
}

}  // namespace latforge
