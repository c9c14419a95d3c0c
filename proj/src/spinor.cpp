#include "latforge/spinor.hpp"

#include <algorithm>
#include <set>

#include "latforge/numtheory.hpp"

namespace latforge {

LocalSquareClass localize(const mpq_class& a, const mpz_class& p) {
  if (a == 0) throw MathError("square class of zero");
  int v = valuation(a, p);
  mpq_class u = a;
  mpz_class pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), std::abs(v));
  if (v > 0) u /= pv;
  if (v < 0) u *= pv;
  LocalSquareClass c;
  c.p = p;
  if (p == 2) {
    static const int rep[8] = {0, 1, 0, 3, 0, -3, 0, -1};
    c.rep = rep[mod8_unit(u)];
    if (v % 2) c.rep *= 2;
  } else {
    c.rep = legendre_unit(u, p) > 0 ? mpz_class(1) : smallest_nonresidue(p);
    if (v % 2) c.rep *= p;
  }
  return c;
}

LocalSquareClass operator*(const LocalSquareClass& a, const LocalSquareClass& b) {
  if (a.p != b.p) throw MathError("square classes at different primes");
  return localize(mpq_class(a.rep * b.rep), a.p);
}

std::vector<LocalSquareClass> local_square_classes(const mpz_class& p) {
  std::vector<LocalSquareClass> v;
  if (p == 2) {
    for (int r : {1, -1, 3, -3, 2, -2, 6, -6}) v.push_back({p, r});
  } else {
    mpz_class e = smallest_nonresidue(p);
    for (const mpz_class& r : {mpz_class(1), e, p, mpz_class(e * p)}) v.push_back({p, r});
  }
  return v;
}

LocalPair localize(const DetSpinorPair& f, const mpz_class& p) { return {f.det, localize(mpq_class(f.spinor), p)}; }

LocalPair operator*(const LocalPair& a, const LocalPair& b) { return {a.det * b.det, a.spinor * b.spinor}; }

std::string to_string(const LocalSquareClass& c) { return c.rep.get_str(); }

std::string to_string(const DetSpinorPair& f) {
  return "(" + std::to_string(f.det) + ", " + f.spinor.get_str() + ")";
}

std::string to_string(const LocalPair& f) {
  return "(" + std::to_string(f.det) + ", " + f.spinor.rep.get_str() + ")";
}

Isometry reflection(const Lattice& l, const RatVector& v) {
  std::size_t n = l.rank();
  if (v.size() != n) throw MathError("reflection: dimension mismatch");
  mpq_class q = l.inner(v, v);
  if (q == 0) throw MathError("reflection in an isotropic vector");
  RatVector gv = to_rational(l.gram()) * v;
  Isometry t = Isometry::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) -= 2 * v[i] * gv[j] / q;
  return t;
}

bool is_integral_isometry(const Lattice& l, const Isometry& m) {
  return is_integral(m) && preserves_form(l, m) && abs(determinant(m)) == 1;
}

namespace {

// Orthogonal basis of the rational space (rows), all vectors anisotropic.
std::vector<RatVector> orthogonal_basis(const Lattice& l) {
  std::size_t n = l.rank();
  std::vector<RatVector> basis;
  std::vector<RatVector> pending;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    pending.push_back(e);
  }
  while (!pending.empty()) {
    // project onto the complement of what we have
    for (auto& w : pending) {
      for (const auto& b : basis) {
        mpq_class c = l.inner(w, b) / l.inner(b, b);
        if (c == 0) continue;
        for (std::size_t k = 0; k < n; ++k) w[k] -= c * b[k];
      }
    }
    pending.erase(std::remove_if(pending.begin(), pending.end(),
                                 [](const RatVector& w) {
                                   return std::all_of(w.begin(), w.end(), [](const mpq_class& x) { return x == 0; });
                                 }),
                  pending.end());
    if (pending.empty()) break;
    std::size_t pick = pending.size();
    for (std::size_t i = 0; i < pending.size() && pick == pending.size(); ++i)
      if (l.inner(pending[i], pending[i]) != 0) pick = i;
    if (pick == pending.size()) {
      // every remaining vector is isotropic; some pair must pair nontrivially
      bool found = false;
      for (std::size_t i = 0; i < pending.size() && !found; ++i)
        for (std::size_t j = i + 1; j < pending.size() && !found; ++j)
          if (l.inner(pending[i], pending[j]) != 0) {
            for (std::size_t k = 0; k < n; ++k) pending[i][k] += pending[j][k];
            pick = i;
            found = true;
          }
      if (!found) throw MathError("degenerate quadratic space");
    }
    basis.push_back(pending[pick]);
    pending.erase(pending.begin() + pick);
  }
  return basis;
}

RatVector image(const Isometry& m, const RatVector& v) { return m * v; }

}  // namespace

std::vector<RatVector> reflection_factorization(const Lattice& l, const Isometry& phi) {
  if (!preserves_form(l, phi)) throw MathError("reflection_factorization: not an isometry");
  if (!is_nondegenerate(l)) throw MathError("reflection_factorization: degenerate lattice");
  std::size_t n = l.rank();
  std::vector<RatVector> out;
  Isometry psi = phi;
  for (const auto& x : orthogonal_basis(l)) {
    RatVector y = image(psi, x);
    if (y == x) continue;
    RatVector w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = y[k] - x[k];
    if (l.inner(w, w) != 0) {
      psi = reflection(l, w) * psi;
      out.push_back(w);
      continue;
    }
    RatVector u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = y[k] + x[k];
    psi = reflection(l, x) * (reflection(l, u) * psi);
    out.push_back(u);
    out.push_back(x);
  }
  if (!psi.is_identity()) throw MathError("reflection_factorization: internal error");
  return out;
}

mpz_class spinor_norm(const Lattice& l, const Isometry& phi) {
  mpq_class prod = 1;
  for (const auto& v : reflection_factorization(l, phi)) prod *= l.inner(v, v);
  return square_class(prod);
}

DetSpinorPair f_value(const Lattice& l, const Isometry& phi) {
  DetSpinorPair f;
  f.det = determinant(phi) > 0 ? 1 : -1;
  f.spinor = spinor_norm(l, phi);
  return f;
}

bool is_p_integral(const Isometry& m, const mpz_class& p) {
  auto ok = [&](const RatMatrix& a) {
    for (const auto& x : a.data())
      if (mpz_divisible_p(x.get_den().get_mpz_t(), p.get_mpz_t())) return false;
    return true;
  };
  return ok(m) && ok(inverse(m));
}

bool in_O0_local(const Lattice& l, const Isometry& phi, const mpz_class& p) {
  if (!preserves_form(l, phi)) throw MathError("in_O0_local: not an isometry");
  if (!is_p_integral(phi, p)) throw MathError("in_O0_local: isometry is not " + p.get_str() + "-integral");
  auto q = discriminant_form(l);
  auto part = primary_part(q, p);
  const RatMatrix& coords = *q.coords();
  for (std::size_t i = 0; i < part.source.size(); ++i) {
    RatVector x = coords.row(part.source[i]);
    for (auto& e : x) e *= part.multiplier[i];
    RatVector y = phi * x;
    for (std::size_t k = 0; k < y.size(); ++k) {
      mpq_class d = y[k] - x[k];
      d.canonicalize();
      if (mpz_divisible_p(d.get_den().get_mpz_t(), p.get_mpz_t())) return false;
    }
  }
  return true;
}

TwoAdicInvariants two_adic_unimodular_invariants(const Lattice& l) {
  mpz_class det = discriminant(l);
  if (det == 0 || mpz_even_p(det.get_mpz_t())) throw MathError("lattice is not unimodular at 2");
  TwoAdicInvariants inv;
  inv.r = static_cast<int>(l.rank());
  mpz_class r = det % 8;
  if (r < 0) r += 8;
  inv.d = (r == 1 || r == 7) ? 1 : -1;
  for (const auto& b : jordan_blocks(l, 2)) {
    if (b.kind != BlockKind::Odd2) continue;
    inv.type_II = false;
    inv.t = (inv.t + b.eps * b.mult) % 8;
  }
  return inv;
}

std::vector<LocalPair> generated_subgroup(const std::vector<LocalPair>& gens, const mpz_class& p) {
  std::set<LocalPair> s{{1, localize(mpq_class(1), p)}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<LocalPair> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& g : gens)
        if (s.insert(a * g).second) grew = true;
  }
  return {s.begin(), s.end()};
}

std::vector<LocalPair> subgroup_J(const mpz_class& p) {
  std::vector<LocalPair> gens;
  for (const auto& c : local_square_classes(p)) {
    bool unit = !mpz_divisible_p(c.rep.get_mpz_t(), p.get_mpz_t());
    if (!unit) continue;
    if (p == 2)
      gens.push_back({1, c});
    else
      for (int d : {1, -1}) gens.push_back({d, c});
  }
  if (p == 2) gens.push_back({-1, localize(mpq_class(2), p)});
  return generated_subgroup(gens, p);
}

}  // namespace latforge
