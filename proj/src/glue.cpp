#include "latforge/glue.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "latforge/json_util.hpp"
#include "latforge/numtheory.hpp"

namespace latforge {

GlueMap make_glue_map(const Lattice& l1, const Lattice& l2, const IntMatrix& images) {
  GlueMap g{discriminant_form(l1), discriminant_form(l2), images};
  std::string why;
  if (!is_form_map(g.source, g.target, images, -1, &why)) throw InputError("invalid glue map: " + why);
  return g;
}

std::optional<GlueMap> find_glue_map(const Lattice& l1, const Lattice& l2) {
  FiniteQuadraticForm a = discriminant_form(l1), b = discriminant_form(l2);
  IsoResult r = are_isomorphic(negate(a), b);
  if (!r.isomorphic) return std::nullopt;
  return GlueMap{a, b, r.witness};
}

GlueMap load_glue_map(const std::string& path, const Lattice& l1, const Lattice& l2) {
  json j = read_json_file(path);
  if (!j.is_object() || !j.contains("images")) throw InputError("glue map file needs \"images\"");
  IntMatrix images = j["images"].empty() ? IntMatrix(0, 0) : int_matrix_from_json(j["images"]);
  GlueMap g{discriminant_form(l1), discriminant_form(l2), images};
  auto check_orders = [&](const char* key, const FiniteQuadraticForm& q) {
    if (!j.contains(key)) return;
    std::vector<mpz_class> o;
    for (const auto& x : j[key]) o.push_back(integer_from_json(x));
    if (o != q.orders()) throw InputError(std::string("glue map ") + key + " do not match the lattice");
  };
  check_orders("source_orders", g.source);
  check_orders("target_orders", g.target);
  if (images.rows() == 0) images = IntMatrix(0, g.target.ngens());
  g.images = images;
  std::string why;
  if (!is_form_map(g.source, g.target, g.images, -1, &why)) throw InputError("invalid glue map: " + why);
  return g;
}

std::string glue_map_to_json(const GlueMap& g) {
  json j;
  j["source_orders"] = json::array();
  for (const auto& o : g.source.orders()) j["source_orders"].push_back(to_json(o));
  j["target_orders"] = json::array();
  for (const auto& o : g.target.orders()) j["target_orders"].push_back(to_json(o));
  j["images"] = json::array();
  for (std::size_t i = 0; i < g.images.rows(); ++i) j["images"].push_back(to_json(g.images.row(i)));
  return j.dump();
}

GlueResult glue(const Lattice& l1, const Lattice& l2, const GlueMap& gamma) {
  if (!is_even(l1) || !is_even(l2)) throw InputError("glue: lattices must be even");
  if (!is_nondegenerate(l1) || !is_nondegenerate(l2)) throw InputError("glue: lattices must be nondegenerate");
  std::string why;
  if (!is_form_map(gamma.source, gamma.target, gamma.images, -1, &why)) throw InputError("invalid glue map: " + why);
  const auto& c1 = gamma.source.coords();
  const auto& c2 = gamma.target.coords();
  if (!c1 || !c2) throw InputError("glue: forms must come from the lattices");
  std::size_t n1 = l1.rank(), n2 = l2.rank(), n = n1 + n2;
  RatMatrix gens(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    gens.append_row(e);
  }
  for (std::size_t i = 0; i < gamma.source.ngens(); ++i) {
    RatVector v(n);
    for (std::size_t k = 0; k < n1; ++k) v[k] = (*c1)(i, k);
    for (std::size_t j = 0; j < gamma.target.ngens(); ++j)
      for (std::size_t k = 0; k < n2; ++k) v[n1 + k] += gamma.images(i, j) * (*c2)(j, k);
    gens.append_row(v);
  }
  GlueResult r;
  r.basis = rational_row_basis(gens);
  Lattice sum = direct_sum(l1, l2);
  r.lattice = sublattice(sum, r.basis);
  mpq_class vol = determinant(r.basis);
  mpq_class idx = abs(mpq_class(1 / vol));
  r.index = idx.get_num();
  if (r.index * r.index * abs(discriminant(r.lattice)) != abs(discriminant(l1) * discriminant(l2)))
    throw MathError("glue: index check failed");
  if (!is_even(r.lattice) || abs(discriminant(r.lattice)) != 1) throw MathError("glue: result is not even unimodular");
  return r;
}

bool length_inequality(const Lattice& s, int c) {
  return static_cast<long>(discriminant_group(s).length()) <= 22 - c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

EmbeddingReport embedding_exists(const Lattice& s, const Signature& target, const std::vector<Lattice>& candidates) {
  EmbeddingReport r;
  Signature ss = signature(s);
  r.complement_signature = {target.plus - ss.plus, target.minus - ss.minus};
  FiniteQuadraticForm q = discriminant_form(s);
  r.length = q.ngens();
  if (r.complement_signature.plus < 0 || r.complement_signature.minus < 0) {
    r.exists = Verdict::No;
    r.reason = "signature does not fit";
    return r;
  }
  std::size_t rc = r.complement_signature.plus + r.complement_signature.minus;
  if (r.length > rc) {
    r.exists = Verdict::No;
    r.reason = "l(A) exceeds the complement rank";
    return r;
  }
  // signature of the complement must match the Gauss sum of -q
  int sig = ((r.complement_signature.plus - r.complement_signature.minus) % 8 + 8) % 8;
  if (sig != milgram_signature(negate(q))) {
    r.exists = Verdict::No;
    r.reason = "complement signature violates the Gauss sum condition";
    return r;
  }
  if (q.is_trivial() && rc == 0) {
    r.exists = Verdict::Yes;
    r.reason = "s is unimodular of the target signature";
    return r;
  }
  for (const auto& c : candidates) {
    if (!(signature(c) == r.complement_signature) || !is_even(c)) continue;
    if (are_isomorphic(discriminant_form(c), negate(q), false).isomorphic) {
      r.exists = Verdict::Yes;
      r.reason = "candidate complement confirmed";
      r.complement = c;
      return r;
    }
  }
  if (r.length < rc) {
    r.exists = Verdict::Yes;
    r.reason = "rank of the complement exceeds l(A)";
    return r;
  }
  r.exists = Verdict::Unknown;
  r.reason = "l(A) equals the complement rank and no candidate complement was confirmed";
  return r;
}

namespace {

bool preconditions(const Lattice& l, NikulinReport& r) {
  Signature s = signature(l);
  std::vector<std::string> bad;
  if (!is_even(l)) bad.push_back("not even");
  if (!is_nondegenerate(l)) bad.push_back("degenerate");
  if (s.plus == 0 || s.minus == 0) bad.push_back("not indefinite");
  if (l.rank() < 3) bad.push_back("rank < 3");
  for (const auto& b : bad) r.precondition_note += (r.precondition_note.empty() ? "" : ", ") + b;
  r.preconditions = bad.empty();
  return r.preconditions;
}

std::vector<mpz_class> primes_to_check(const Lattice& l) {
  std::vector<mpz_class> ps = prime_divisors(discriminant(l));
  if (std::find(ps.begin(), ps.end(), mpz_class(2)) == ps.end()) ps.insert(ps.begin(), 2);
  return ps;
}

// Rank per scale of the p-adic Jordan components with k >= 1, and for p = 2 whether each is odd.
struct ScaleData {
  std::map<int, int> rank;
  std::map<int, bool> odd;
};

ScaleData scales(const BlockDecomposition& d, long p) {
  ScaleData s;
  for (const auto& b : d.blocks) {
    if (b.p != p) continue;
    int r = b.kind == BlockKind::Even2U || b.kind == BlockKind::Even2V ? 2 * b.mult : b.mult;
    s.rank[b.k] += r;
    if (b.kind == BlockKind::Odd2) s.odd[b.k] = true;
  }
  return s;
}

}  // namespace

bool has_order_two_plane(const FiniteQuadraticForm& q, char kind, std::size_t max_elements) {
  FiniteQuadraticForm q2 = p_primary_part(q, 2);
  // elements of order dividing 2
  std::vector<IntVector> elems{IntVector(q2.ngens())};
  for (std::size_t i = 0; i < q2.ngens(); ++i) {
    mpz_class half = q2.orders()[i] / 2;
    std::size_t m = elems.size();
    for (std::size_t e = 0; e < m; ++e) {
      IntVector v = elems[e];
      v[i] = half;
      elems.push_back(v);
    }
    if (elems.size() > max_elements) throw MathError("2-torsion too large for the summand search");
  }
  mpq_class want = kind == 'u' ? mpq_class(0) : mpq_class(1);
  std::vector<IntVector> cands;
  for (const auto& v : elems) {
    bool zero = std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
    if (!zero && q2.q_of(v) == want) cands.push_back(v);
  }
  const mpq_class half(1, 2);
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j)
      if (q2.b_of(cands[i], cands[j]) == half) return true;
  return false;
}

NikulinReport nikulin_uniqueness_check(const Lattice& l) {
  NikulinReport r;
  if (!preconditions(l, r)) return r;
  FiniteQuadraticForm q = discriminant_form(l);
  BlockDecomposition d = canonical(block_decomposition(l));
  long n = static_cast<long>(l.rank());
  r.verdict = true;
  for (const auto& p : primes_to_check(l)) {
    PrimeCheck c;
    c.p = p.get_si();
    long len = static_cast<long>(p_length(q, p));
    ScaleData s = scales(d, c.p);
    if (n >= len + 2) {
      c.pass = true;
      c.clause = "rank slack";
    } else if (c.p != 2) {
      for (auto [k, rk] : s.rank)
        if (rk >= 2) {
          c.pass = true;
          c.clause = "repeated block at scale " + p.get_str() + "^" + std::to_string(k);
          break;
        }
    } else {
      for (auto [k, rk] : s.rank) {
        if (!s.odd[k] && rk > 0) {
          c.pass = true;
          c.clause = "u/v block at scale 2^" + std::to_string(k);
          break;
        }
      }
      if (!c.pass)
        for (auto [k, rk] : s.rank) {
          if (rk >= 3) {
            c.pass = true;
            c.clause = "q+q+q' pattern at scale 2^" + std::to_string(k);
            break;
          }
          if (rk >= 2 && ((s.rank.count(k - 1) && s.rank[k - 1] > 0) || (s.rank.count(k + 1) && s.rank[k + 1] > 0))) {
            c.pass = true;
            c.clause = "q+q+q' pattern at scales 2^" + std::to_string(k) + ", 2^(" + std::to_string(k) + "+-1)";
            break;
          }
        }
    }
    if (!c.pass) c.clause = "none";
    r.verdict = r.verdict && c.pass;
    r.primes.push_back(c);
  }
  return r;
}

NikulinReport nikulin_surjectivity_check(const Lattice& l) {
  NikulinReport r;
  if (!preconditions(l, r)) return r;
  FiniteQuadraticForm q = discriminant_form(l);
  BlockDecomposition d = canonical(block_decomposition(l));
  long n = static_cast<long>(l.rank());
  r.verdict = true;
  for (const auto& p : primes_to_check(l)) {
    PrimeCheck c;
    c.p = p.get_si();
    long len = static_cast<long>(p_length(q, p));
    if (n >= len + 2) {
      c.pass = true;
      c.clause = "rank slack";
    } else if (c.p == 2) {
      for (const auto& b : d.blocks)
        if (b.p == 2 && b.k == 1 && (b.kind == BlockKind::Even2U || b.kind == BlockKind::Even2V)) {
          c.pass = true;
          c.clause = b.kind == BlockKind::Even2U ? "u(2) block" : "v(2) block";
          break;
        }
      if (!c.pass) {
        // the decomposition is not unique: search for the summand directly
        if (has_order_two_plane(q, 'u')) {
          c.pass = true;
          c.clause = "u(2) summand (search)";
        } else if (has_order_two_plane(q, 'v')) {
          c.pass = true;
          c.clause = "v(2) summand (search)";
        }
      }
    }
    if (!c.pass) c.clause = "none";
    r.verdict = r.verdict && c.pass;
    r.primes.push_back(c);
  }
  return r;
}

}  // namespace latforge
