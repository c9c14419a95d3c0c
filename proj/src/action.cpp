#include "latforge/action.hpp"

#include <unordered_set>

#include "latforge/json_util.hpp"

namespace latforge {

void validate(const GroupAction& a) {
  std::size_t n = a.lattice.rank();
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    const IntMatrix& g = a.generators[i];
    std::string tag = "generator " + std::to_string(i);
    if (g.rows() != n || g.cols() != n) throw InputError(tag + " has the wrong size");
    if (abs(determinant(g)) != 1) throw InputError(tag + " is not invertible over Z");
    if (!preserves_form(a.lattice, g)) throw InputError(tag + " does not preserve the Gramian");
  }
}

std::vector<IntMatrix> group_elements(const GroupAction& a, std::size_t cap) {
  if (a.generators.empty()) return {IntMatrix::identity(a.lattice.rank())};
  return closure(a.generators, cap);
}

int element_order(const IntMatrix& g, int max) {
  IntMatrix id = IntMatrix::identity(g.rows()), p = g;
  for (int k = 1; k <= max; ++k) {
    if (p == id) return k;
    p = p * g;
  }
  throw MathError("element order exceeds " + std::to_string(max));
}

SubLattice invariant_lattice(const GroupAction& a) {
  validate(a);
  std::size_t n = a.lattice.rank();
  IntMatrix stack(0, n);
  IntMatrix id = IntMatrix::identity(n);
  for (const auto& g : a.generators) {
    IntMatrix d = g - id;
    for (std::size_t i = 0; i < n; ++i) stack.append_row(d.row(i));
  }
  SubLattice s;
  s.basis = stack.rows() == 0 ? id : kernel_basis(stack);
  s.lattice = sublattice(a.lattice, s.basis);
  return s;
}

SubLattice coinvariant_lattice(const GroupAction& a) {
  SubLattice inv = invariant_lattice(a);
  Complement c = orthogonal_complement(a.lattice, inv.basis);
  return {c.basis, c.lattice};
}

std::optional<int> chi_of_order(int order) {
  static const int chi[] = {24, 8, 6, 4, 4, 2, 3, 2};
  if (order < 1 || order > 8) return std::nullopt;
  return chi[order - 1];
}

TraceReport trace_check(const GroupAction& a) {
  TraceReport r;
  auto els = group_elements(a);
  mpz_class sum = 0;
  bool defined = true;
  long shift = 24 - static_cast<long>(a.lattice.rank());
  for (std::size_t i = 0; i < els.size(); ++i) {
    TraceRow row;
    row.element = i;
    row.order = element_order(els[i]);
    for (std::size_t k = 0; k < els[i].rows(); ++k) row.trace += els[i](k, k);
    auto chi = chi_of_order(row.order);
    if (chi) {
      row.expected = *chi - shift;
      row.ok = row.trace == *row.expected;
      sum += *chi;
    } else {
      defined = false;
      row.ok = false;
      r.flag = "element order " + std::to_string(row.order) + " outside 1..8";
    }
    r.all_ok = r.all_ok && row.ok;
    r.rows.push_back(row);
  }
  if (defined) {
    mpz_class g = static_cast<unsigned long>(els.size());
    if (mpz_divisible_p(sum.get_mpz_t(), g.get_mpz_t()))
      r.c = 24 - sum / g;
    else
      r.flag = "average of chi is not an integer";
  }
  return r;
}

bool is_symplectic_action(const GroupAction& a) {
  const Lattice& l = a.lattice;
  if (!is_even(l) || abs(discriminant(l)) != 1 || !(signature(l) == Signature{3, 19}))
    throw InputError("symplectic test needs an even unimodular ambient of signature (3,19)");
  validate(a);
  IntMatrix id = IntMatrix::identity(l.rank());
  bool nontrivial = false;
  for (const auto& g : a.generators) nontrivial = nontrivial || !(g == id);
  if (!nontrivial) return false;
  SubLattice c = coinvariant_lattice(a);
  if (c.lattice.rank() == 0 || !is_negative_definite(c.lattice)) return false;
  return short_vectors(c.lattice, 2).count_with_norm(-2) == 0;
}

GroupAction permutation_action_on_niemeier(const NiemeierLattice& n, const std::vector<std::vector<int>>& cycles) {
  std::size_t rk = n.root_lattice.rank();
  std::vector<std::size_t> sigma(rk);
  for (std::size_t i = 0; i < rk; ++i) sigma[i] = i;
  std::vector<bool> moved(rk, false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      int from = c[k], to = c[(k + 1) % c.size()];
      if (from < 1 || to < 1 || static_cast<std::size_t>(from) > rk || static_cast<std::size_t>(to) > rk)
        throw InputError("permutation entry out of range");
      if (moved[from - 1]) throw InputError("cycles are not disjoint");
      moved[from - 1] = true;
      sigma[from - 1] = static_cast<std::size_t>(to - 1);
    }
  }
  IntMatrix p(rk, rk);
  for (std::size_t i = 0; i < rk; ++i) p(sigma[i], i) = 1;
  const IntMatrix& r = n.root_lattice.gram();
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < rk; ++j)
      if (r(sigma[i], sigma[j]) != r(i, j))
        throw InputError("permutation breaks the Dynkin diagram at roots " + std::to_string(i + 1) + ", " +
                         std::to_string(j + 1));
  // lattice coordinates y correspond to root coordinates B^T y
  RatMatrix bt = n.basis.transpose();
  RatMatrix m = inverse(bt) * to_rational(p) * bt;
  if (!is_integral(m)) throw InputError("permutation does not preserve the glue group");
  GroupAction a{n.lattice, {to_integer(m)}};
  validate(a);
  return a;
}

GroupAction restrict_action(const GroupAction& a, const IntMatrix& sub_basis) {
  Lattice sub = sublattice(a.lattice, sub_basis);
  RatMatrix c = to_rational(sub_basis);
  RatMatrix gram = to_rational(a.lattice.gram());
  RatMatrix inv = inverse(to_rational(sub.gram()));
  GroupAction r{sub, {}};
  for (const auto& g : a.generators) {
    RatMatrix m = inv * c * gram * to_rational(g) * c.transpose();
    // the sublattice must be stable: g C^T = C^T m
    if (!(to_rational(g) * c.transpose() == c.transpose() * m) || !is_integral(m))
      throw InputError("sublattice is not stable under the action");
    r.generators.push_back(to_integer(m));
  }
  return r;
}

bool induced_action_on_discriminant(const GroupAction& a, const IntMatrix& sub_basis) {
  GroupAction r = restrict_action(a, sub_basis);
  DiscriminantGroup dg = discriminant_group(r.lattice);
  for (const auto& g : r.generators) {
    RatMatrix gr = to_rational(g);
    for (std::size_t i = 0; i < dg.length(); ++i) {
      RatVector x = dg.generators.row(i);
      RatVector y = gr * x;
      for (std::size_t k = 0; k < y.size(); ++k)
        if (mpq_class(y[k] - x[k]).get_den() != 1) return false;
    }
  }
  return true;
}

GroupAction extend_to_glue(const GroupAction& a1, const Lattice& l2, const GlueResult& g) {
  std::size_t n1 = a1.lattice.rank(), n2 = l2.rank(), n = n1 + n2;
  RatMatrix bt = g.basis.transpose(), bt_inv = inverse(bt);
  GroupAction r{g.lattice, {}};
  for (const auto& h : a1.generators) {
    RatMatrix big(n, n);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) big(i, j) = h(i, j);
    for (std::size_t i = 0; i < n2; ++i) big(n1 + i, n1 + i) = 1;
    RatMatrix m = bt_inv * big * bt;
    if (!is_integral(m)) throw InputError("action does not extend to the glued lattice");
    r.generators.push_back(to_integer(m));
  }
  validate(r);
  return r;
}

ActionReport analyze(const GroupAction& a) {
  ActionReport r;
  r.invariant = invariant_lattice(a);
  r.coinvariant = coinvariant_lattice(a);
  r.traces = trace_check(a);
  r.order = r.traces.rows.size();
  const Lattice& l = a.lattice;
  if (is_even(l) && abs(discriminant(l)) == 1 && signature(l) == Signature{3, 19}) r.symplectic = is_symplectic_action(a);
  return r;
}

GroupAction action_from_json_text(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("action file: ") + e.what());
  }
  if (j.contains("niemeier")) {
    auto cat = catalog();
    NiemeierLattice n = construct(catalog_entry(cat, j["niemeier"].get<std::string>()));
    GroupAction a{n.lattice, {}};
    for (const auto& perm : j.at("root_permutations")) {
      std::vector<std::vector<int>> cycles = perm.get<std::vector<std::vector<int>>>();
      a.generators.push_back(permutation_action_on_niemeier(n, cycles).generators[0]);
    }
    return a;
  }
  if (!j.contains("lattice") || !j.contains("generators"))
    throw InputError("action file needs \"lattice\" and \"generators\" (or \"niemeier\")");
  Lattice l;
  if (j["lattice"].is_string()) {
    std::string p = j["lattice"].get<std::string>();
    if (!p.empty() && p[0] != '/') p = base_dir + "/" + p;
    l = load_lattice(p);
  } else {
    l = lattice_from_json_text(j["lattice"].dump());
  }
  GroupAction a{l, {}};
  for (const auto& g : j["generators"]) a.generators.push_back(int_matrix_from_json(g));
  validate(a);
  return a;
}

GroupAction load_action(const std::string& path) {
  json j = read_json_file(path);
  std::string dir = path.find('/') == std::string::npos ? "." : path.substr(0, path.rfind('/'));
  return action_from_json_text(j.dump(), dir);
}

}  // namespace latforge
