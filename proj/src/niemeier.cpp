#include "latforge/niemeier.hpp"

#include <algorithm>
#include <cctype>

#include "latforge/json_util.hpp"

namespace latforge {

namespace {

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::string resolve(const std::string& dir) { return dir.empty() ? data_dir() + "/niemeier" : dir; }

}  // namespace

mpz_class group_order(const std::string& name) {
  std::string s;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty group name");
  // split on top-level 'x' (direct) and ':' (semidirect); both multiply orders
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && (s[i] == 'x' || s[i] == ':'))
      return group_order(s.substr(0, i)) * group_order(s.substr(i + 1));
  }
  if (s == "1") return 1;
  if (s == "M11") return 7920;
  if (s == "M12") return 95040;
  if (s == "M22") return 443520;
  if (s == "M23") return 10200960;
  if (s == "M24") return 244823040;
  auto number = [&](const std::string& t) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InputError("bad group name \"" + name + "\"");
    return std::stoul(t);
  };
  if (s[0] == 'S') return factorial(number(s.substr(1)));
  if (s[0] == 'A') return factorial(number(s.substr(1))) / 2;
  if (s[0] == 'C') return number(s.substr(1));
  if (s[0] == 'D') return 2 * mpz_class(number(s.substr(1)));
  if (s.rfind("F", 0) == 0) {
    // F<q>^<k>: elementary abelian
    auto caret = s.find('^');
    unsigned long q = number(s.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    unsigned long k = caret == std::string::npos ? 1 : number(s.substr(caret + 1));
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, k);
    return r;
  }
  if (s.rfind("GL(", 0) == 0 && s.back() == ')') {
    auto comma = s.find(',');
    unsigned long n = number(s.substr(3, comma - 3));
    unsigned long q = number(s.substr(comma + 1, s.size() - comma - 2));
    mpz_class r = 1, qn;
    mpz_ui_pow_ui(qn.get_mpz_t(), q, n);
    mpz_class qi = 1;
    for (unsigned long i = 0; i < n; ++i) {
      r *= qn - qi;
      qi *= q;
    }
    return r;
  }
  throw InputError("bad group name \"" + name + "\"");
}

std::vector<RootComponent> components_in_order(const std::string& label) {
  std::vector<RootComponent> out;
  std::string s;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == '\\') {
      std::size_t j = i + 1;
      while (j < label.size() && std::isalpha(static_cast<unsigned char>(label[j]))) ++j;
      if (label.compare(i + 1, j - i - 1, "oplus") == 0) s += '+';
      i = j - 1;
      continue;
    }
    if (label[i] == '{' || label[i] == '}' || label[i] == '_' || label[i] == ' ') continue;
    s += label[i];
  }
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find('+', i);
    // a '+' right after '^' belongs to the exponent
    while (j != std::string::npos && j > 0 && s[j - 1] == '^') j = s.find('+', j + 1);
    std::string part = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
    RootType t = parse_root_type(part);
    for (const auto& c : t.components) out.push_back(c);
    if (j == std::string::npos) break;
    i = j + 1;
  }
  return out;
}

std::vector<NiemeierEntry> catalog(const std::string& dir) {
  json j = read_json_file(resolve(dir) + "/catalog.json");
  std::vector<NiemeierEntry> out;
  for (const auto& e : j.at("entries")) {
    NiemeierEntry n;
    n.index = e.at("index").get<int>();
    n.root_label = e.at("root_type").get<std::string>();
    n.root_type = parse_root_type(n.root_label);
    n.o1 = integer_from_json(e.at("o1"));
    n.o2 = e.at("o2").get<std::string>();
    n.total = integer_from_json(e.at("total"));
    n.ref = e.value("ref", "");
    n.provenance = e.value("provenance", "");
    if (n.ref.empty() || n.provenance.empty())
      throw InputError("catalog entry " + std::to_string(n.index) + " lacks a reference or provenance");
    if (e.contains("glue_file")) n.glue_file = e["glue_file"].get<std::string>();
    out.push_back(n);
  }
  return out;
}

const NiemeierEntry& catalog_entry(const std::vector<NiemeierEntry>& cat, const std::string& root_type) {
  RootType t = parse_root_type(root_type);
  for (const auto& e : cat)
    if (e.root_type == t) return e;
  throw InputError("no Niemeier lattice with root type " + root_type);
}

NiemeierLattice construct(const NiemeierEntry& entry, const std::string& dir) {
  if (!entry.glue_file) throw InputError("no glue data shipped for " + to_string(entry.root_type));
  json j = read_json_file(resolve(dir) + "/" + *entry.glue_file);
  NiemeierLattice n;
  n.entry = entry;
  n.components = components_in_order(j.at("root_type").get<std::string>());
  std::vector<Lattice> parts;
  for (const auto& c : n.components) {
    Lattice r = c.type == 'A' ? lattice_A(c.rank) : c.type == 'D' ? lattice_D(c.rank) : lattice_E(c.rank);
    parts.push_back(rescale(r, -1));
  }
  n.root_lattice = direct_sum(parts);
  n.root_lattice.set_label("");
  std::size_t rk = n.root_lattice.rank();
  RatMatrix gens(0, rk);
  for (std::size_t i = 0; i < rk; ++i) {
    RatVector e(rk);
    e[i] = 1;
    gens.append_row(e);
  }
  for (const auto& row : j.at("glue")) {
    RatVector v = rat_vector_from_json(row);
    if (v.size() != rk) throw InputError("glue vector of wrong length in " + *entry.glue_file);
    gens.append_row(v);
  }
  n.basis = rational_row_basis(gens);
  n.lattice = sublattice(n.root_lattice, n.basis);
  n.lattice.set_label("N(" + to_string(entry.root_type) + ")");
  mpq_class vol = abs(determinant(n.basis));
  n.glue_order = mpq_class(1 / vol).get_num();
  // self-verification
  auto fail = [&](const std::string& w) { throw MathError("Niemeier " + to_string(entry.root_type) + ": " + w); };
  if (rk != 24) fail("rank is not 24");
  if (!is_even(n.lattice)) fail("not even");
  if (abs(discriminant(n.lattice)) != 1) fail("not unimodular");
  if (!is_negative_definite(n.lattice)) fail("not negative definite");
  if (n.glue_order * n.glue_order != abs(discriminant(n.root_lattice))) fail("glue group order does not match");
  if (root_sublattice_type(n.lattice) != entry.root_type) fail("root type differs from the catalog");
  return n;
}

}  // namespace latforge
