#include "latforge/lattice.hpp"

#include <sstream>

#include "latforge/json_util.hpp"

namespace latforge {

Lattice::Lattice(IntMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
  if (!gram_.is_square()) throw InputError("Gramian must be square");
  if (!gram_.is_symmetric()) throw InputError("Gramian must be symmetric");
}

mpq_class Lattice::inner(const RatVector& x, const RatVector& y) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    mpq_class t = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) t += gram_(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

mpz_class Lattice::inner(const IntVector& x, const IntVector& y) const {
  mpz_class s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    mpz_class t = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) t += gram_(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

mpz_class DiscriminantGroup::size() const {
  mpz_class s = 1;
  for (const auto& d : orders) s *= d;
  return s;
}

Signature signature(const Lattice& l) {
  RatMatrix a = to_rational(l.gram());
  std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  Signature s;
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && a(i, i) != 0) piv = i;
    if (piv == n) {
      // no nonzero diagonal: combine two indices with a nonzero off-diagonal entry
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      piv = pi;
    }
    mpq_class p = a(piv, piv);
    if (p > 0)
      ++s.plus;
    else
      ++s.minus;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, piv) == 0) continue;
      mpq_class f = a(i, piv) / p;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(piv, j);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) a(piv, i) = a(i, piv) = 0;
  }
  return s;
}

bool is_even(const Lattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (!mpz_even_p(l.gram()(i, i).get_mpz_t())) return false;
  return true;
}

mpz_class discriminant(const Lattice& l) { return determinant(l.gram()); }

bool is_nondegenerate(const Lattice& l) { return discriminant(l) != 0; }

bool is_positive_definite(const Lattice& l) {
  Signature s = signature(l);
  return s.plus == static_cast<int>(l.rank());
}

bool is_negative_definite(const Lattice& l) {
  Signature s = signature(l);
  return s.minus == static_cast<int>(l.rank());
}

bool is_definite(const Lattice& l) { return is_positive_definite(l) || is_negative_definite(l); }

DiscriminantGroup discriminant_group(const Lattice& l) {
  std::size_t n = l.rank();
  SmithForm s = smith_normal_form(l.gram());
  DiscriminantGroup g;
  g.generators = RatMatrix(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class& d = s.d(i, i);
    if (d == 0) throw MathError("discriminant group of a degenerate lattice");
    if (d == 1) continue;
    g.orders.push_back(d);
    RatVector v(n);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = mpq_class(s.v(k, i), d);
      v[k].canonicalize();
    }
    g.generators.append_row(v);
  }
  return g;
}

Lattice rescale(const Lattice& l, const mpz_class& lambda) {
  if (lambda == 0) throw MathError("rescale by zero");
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= lambda;
  std::string label;
  if (!l.label().empty()) label = l.label() + "(" + lambda.get_str() + ")";
  return Lattice(g, label);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) { return direct_sum(std::vector<Lattice>{a, b}); }

Lattice direct_sum(const std::vector<Lattice>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  IntMatrix g(n, n);
  std::size_t off = 0;
  std::string label;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
    off += p.rank();
    if (!p.label().empty()) label += (label.empty() ? "" : " + ") + p.label();
  }
  return Lattice(g, label);
}

Lattice sublattice(const Lattice& l, const IntMatrix& basis) {
  if (basis.rows() == 0) return Lattice(IntMatrix(0, 0));
  return Lattice(basis * l.gram() * basis.transpose());
}

Lattice sublattice(const Lattice& l, const RatMatrix& basis) {
  if (basis.rows() == 0) return Lattice(IntMatrix(0, 0));
  RatMatrix g = basis * to_rational(l.gram()) * basis.transpose();
  if (!is_integral(g)) throw MathError("sublattice Gramian is not integral");
  return Lattice(to_integer(g));
}

Complement orthogonal_complement(const Lattice& l, const IntMatrix& sub_basis) {
  std::size_t n = l.rank();
  Complement c;
  if (sub_basis.rows() == 0) {
    c.basis = IntMatrix::identity(n);
    c.lattice = l;
    c.degenerate = !is_nondegenerate(l);
    return c;
  }
  if (sub_basis.cols() != n) throw MathError("orthogonal_complement: dimension mismatch");
  if (rank(sub_basis) != sub_basis.rows()) throw MathError("orthogonal_complement: dependent sub-basis");
  if (!is_primitive(sub_basis)) throw MathError("orthogonal_complement: sub-basis is not primitive");
  c.basis = kernel_basis(sub_basis * l.gram());
  c.lattice = sublattice(l, c.basis);
  c.degenerate = c.basis.rows() > 0 && !is_nondegenerate(c.lattice);
  return c;
}

bool preserves_form(const Lattice& l, const RatMatrix& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
  RatMatrix g = to_rational(l.gram());
  return m.transpose() * g * m == g;
}

bool preserves_form(const Lattice& l, const IntMatrix& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
  return m.transpose() * l.gram() * m == l.gram();
}

namespace {

Lattice from_edges(int n, const std::vector<std::pair<int, int>>& edges, const std::string& label) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  for (auto [a, b] : edges) g(a - 1, b - 1) = g(b - 1, a - 1) = -1;
  return Lattice(g, label);
}

}  // namespace

Lattice lattice_U() { return Lattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

Lattice lattice_A(int n) {
  if (n < 1) throw InputError("A_n needs n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
  return from_edges(n, e, "A" + std::to_string(n));
}

Lattice lattice_D(int n) {
  if (n < 4) throw InputError("D_n needs n >= 4");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({n - 2, n});
  return from_edges(n, e, "D" + std::to_string(n));
}

Lattice lattice_E(int n) {
  if (n < 6 || n > 8) throw InputError("E_n needs 6 <= n <= 8");
  std::vector<std::pair<int, int>> e = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
  if (n >= 7) e.push_back({6, 7});
  if (n >= 8) e.push_back({7, 8});
  return from_edges(n, e, "E" + std::to_string(n));
}

Lattice lattice_diag(const std::vector<mpz_class>& entries) {
  std::size_t n = entries.size();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = entries[i];
  return Lattice(g);
}

Lattice lattice_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("lattice file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("gram")) throw InputError("lattice file needs a \"gram\" field");
  IntMatrix g = int_matrix_from_json(j["gram"]);
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  return Lattice(g, label);
}

Lattice load_lattice(const std::string& path) {
  json j = read_json_file(path);
  return lattice_from_json_text(j.dump());
}

std::string lattice_to_json(const Lattice& l) {
  json j;
  if (!l.label().empty()) j["label"] = l.label();
  j["gram"] = to_json(l.gram());
  return j.dump();
}

}  // namespace latforge
