#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "latforge/action.hpp"
#include "latforge/corpus.hpp"
#include "latforge/definite.hpp"
#include "latforge/glue.hpp"
#include "latforge/json_util.hpp"
#include "latforge/numtheory.hpp"
#include "latforge/spinor.hpp"
#include "latforge/verify.hpp"

using namespace latforge;

namespace {

std::string join(const std::vector<mpz_class>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].get_str();
  return s;
}

void print_matrix(const IntMatrix& m, std::ostream& os, const std::string& indent = "  ") {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]\n";
  }
}

// A lattice file, or a genus symbol when no such file exists.
FiniteQuadraticForm form_argument(const std::string& arg) {
  if (std::filesystem::exists(arg)) return discriminant_form(load_lattice(arg));
  return form_from_blocks(parse_genus_symbol(arg));
}

int cmd_discform(const std::string& file) {
  Lattice l = load_lattice(file);
  FiniteQuadraticForm q = discriminant_form(l);
  std::cout << "orders: (" << join(q.orders()) << ")\n";
  std::cout << "symbol: " << render_genus_symbol(canonical(block_decomposition(l))) << "\n";
  std::cout << "q-table (q on the diagonal mod 2, b off it mod 1):\n";
  for (std::size_t i = 0; i < q.ngens(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < q.ngens(); ++j) std::cout << (j ? ", " : "") << to_string(i == j ? q.q(i) : q.b(i, j));
    std::cout << "]\n";
  }
  return 0;
}

int cmd_isomform(const std::string& a, const std::string& b) {
  IsoResult r = are_isomorphic(form_argument(a), form_argument(b), true);
  std::cout << (r.isomorphic ? "isomorphic" : "not isomorphic") << "\n";
  if (!r.reason.empty()) std::cout << "reason: " << r.reason << "\n";
  if (r.isomorphic && r.witness.rows() > 0) {
    std::cout << "witness (row i: image of generator i):\n";
    print_matrix(r.witness, std::cout);
  }
  return 0;
}

int cmd_aut(const std::string& file, std::size_t max_rank) {
  DefiniteOptions opt;
  opt.max_rank = max_rank;
  IsometryGroup g = isometry_group(load_lattice(file), opt);
  std::cout << "order: " << g.order.get_str() << (g.certified ? " (enumerated)" : "") << "\n";
  std::cout << "generators: " << g.generators.size() << "\n";
  return 0;
}

int cmd_roots(const std::string& file) {
  Lattice l = load_lattice(file);
  RootSystem rs = root_system(l);
  std::string t = to_string(rs.type);
  std::cout << "type: " << (t.empty() ? "none" : t) << "\n";
  std::cout << "roots: " << 2 * rs.positive.size() << "\n";
  return 0;
}

int cmd_spinor(const std::string& lfile, const std::string& ifile, const std::vector<long>& primes) {
  Lattice l = load_lattice(lfile);
  Isometry m = rat_matrix_from_json(read_json_file(ifile));
  if (!preserves_form(l, m)) throw InputError("matrix does not preserve the form");
  DetSpinorPair f = f_value(l, m);
  std::cout << "f = " << to_string(f) << (is_integral_isometry(l, m) ? "" : " (not integral)") << "\n";
  for (long p : primes) {
    mpz_class pp = p;
    if (!is_prime(pp)) throw InputError("not a prime: " + std::to_string(p));
    bool integral = is_p_integral(m, pp);
    std::cout << "p = " << p << ": f_p = " << to_string(localize(f, pp));
    if (!integral)
      std::cout << ", not " << p << "-integral\n";
    else
      std::cout << ", " << (in_O0_local(l, m, pp) ? "in" : "not in") << " O0\n";
  }
  return 0;
}

int cmd_glue(const std::string& f1, const std::string& f2, const std::string& gmap, const std::string& out) {
  Lattice l1 = load_lattice(f1), l2 = load_lattice(f2);
  GlueMap g = load_glue_map(gmap, l1, l2);
  GlueResult r = glue(l1, l2, g);
  mpz_class d = discriminant(r.lattice);
  std::string text = lattice_to_json(r.lattice);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream os(out);
    if (!os) throw InputError("cannot write " + out);
    os << text << "\n";
  }
  std::cerr << "index: " << r.index.get_str() << "\n";
  std::cerr << "determinant: " << d.get_str() << (abs(d) == 1 ? " (unimodular)" : "") << "\n";
  std::cerr << (is_even(r.lattice) ? "even" : "odd") << "\n";
  return 0;
}

int cmd_action(const std::string& file) {
  ActionReport r = analyze(load_action(file));
  std::cout << "group order: " << r.order << "\n";
  std::cout << "invariant lattice (rank " << r.invariant.lattice.rank() << "):\n";
  print_matrix(r.invariant.lattice.gram(), std::cout);
  std::cout << "coinvariant lattice (rank " << r.coinvariant.lattice.rank() << "):\n";
  print_matrix(r.coinvariant.lattice.gram(), std::cout);
  std::cout << "c: " << (r.traces.c ? r.traces.c->get_str() : "undetermined") << "\n";
  std::cout << "traces:\n";
  for (const auto& t : r.traces.rows)
    std::cout << "  element " << t.element << " order " << t.order << " trace " << t.trace.get_str() << " expected "
              << (t.expected ? std::to_string(*t.expected) : "-") << (t.ok ? "" : " MISMATCH") << "\n";
  if (!r.traces.flag.empty()) std::cout << "flag: " << r.traces.flag << "\n";
  std::cout << "symplectic: " << (r.symplectic ? (*r.symplectic ? "yes" : "no") : "n/a") << "\n";
  return r.traces.all_ok ? 0 : 1;
}

int cmd_nikulin(const std::string& file, const std::string& mode) {
  Lattice l = load_lattice(file);
  NikulinReport r = mode == "uniqueness" ? nikulin_uniqueness_check(l) : nikulin_surjectivity_check(l);
  std::cout << "mode: " << mode << "\n";
  std::cout << "preconditions: " << (r.preconditions ? "hold" : "fail");
  if (!r.precondition_note.empty()) std::cout << " (" << r.precondition_note << ")";
  std::cout << "\n";
  for (const auto& p : r.primes)
    std::cout << "  p = " << p.p << ": " << (p.pass ? "pass" : "fail") << " (" << p.clause << ")\n";
  std::cout << "verdict: " << (r.verdict ? "pass" : "fail") << "\n";
  return 0;
}

int cmd_verify(const std::string& dir, const std::vector<std::string>& filters, const std::vector<std::string>& sections,
               bool no_timing, const std::string& report, bool quiet) {
  VerifyOptions opt;
  opt.data_dir = dir;
  opt.filters = filters;
  opt.sections = sections;
  VerificationReport rep = verify_tables(opt);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  std::ofstream os;
  if (!report.empty()) {
    os.open(report);
    if (!os) throw InputError("cannot write " + report);
  }
  for (const auto& r : rep.records) {
    if (os.is_open()) os << to_json_line(r, !no_timing) << "\n";
    if (quiet && (r.status == "pass" || r.status == "skip")) continue;
    std::cout << r.status << "  " << r.id << "\n    expected: " << r.expected << "\n    computed: " << r.computed
              << "\n";
    if (!r.note.empty()) std::cout << "    note: " << r.note << "\n";
  }
  std::cout << rep.count("pass") << " pass, " << rep.count("fail") << " fail, " << rep.count("conflict")
            << " conflict, " << rep.count("skip") << " skip\n";
  return rep.count("fail") ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice computations for finite symplectic actions on K3 lattices"};
  app.require_subcommand(1);

  std::string a, b, c, out, mode = "surjectivity", report;
  std::size_t max_rank = 8;
  std::vector<long> primes;
  std::vector<std::string> filters, sections;
  bool no_timing = false, quiet = false;

  auto* discform = app.add_subcommand("discform", "discriminant group, genus symbol and q-table of a lattice");
  discform->add_option("lattice", a, "lattice JSON file")->required();

  auto* isomform = app.add_subcommand("isomform", "compare two finite quadratic forms");
  isomform->add_option("first", a, "genus symbol or lattice file")->required();
  isomform->add_option("second", b, "genus symbol or lattice file")->required();

  auto* aut = app.add_subcommand("aut", "isometry group of a definite lattice");
  aut->add_option("lattice", a, "lattice JSON file")->required();
  aut->add_option("--max-rank", max_rank, "enumeration rank cap")->capture_default_str();

  auto* roots = app.add_subcommand("roots", "root system of a definite lattice");
  roots->add_option("lattice", a, "lattice JSON file")->required();

  auto* spinor = app.add_subcommand("spinor", "determinant and spinor norm of an isometry");
  spinor->add_option("lattice", a, "lattice JSON file")->required();
  spinor->add_option("isometry", b, "isometry matrix JSON file (columns are images)")->required();
  spinor->add_option("--primes", primes, "primes for local values")->delimiter(',');

  auto* gl = app.add_subcommand("glue", "glue two lattices along an anti-isometry");
  gl->add_option("l1", a, "first lattice")->required();
  gl->add_option("l2", b, "second lattice")->required();
  gl->add_option("gluemap", c, "glue map JSON file")->required();
  gl->add_option("-o,--output", out, "write the glued Gramian here");

  auto* action = app.add_subcommand("action", "invariant and coinvariant lattices of a group action");
  action->add_option("action", a, "action JSON file")->required();

  auto* nikulin = app.add_subcommand("nikulin", "Nikulin criteria for an even indefinite lattice");
  nikulin->add_option("lattice", a, "lattice JSON file")->required();
  nikulin->add_option("--mode", mode, "uniqueness or surjectivity")
      ->check(CLI::IsMember({"uniqueness", "surjectivity"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify-tables", "check the shipped tables");
  verify->add_option("data_dir", a, "data directory (default: $LATTICE_FORGE_DATA or the source tree)");
  verify->add_option("--filter", filters, "id prefix or row number; repeatable")->delimiter(',');
  verify->add_option("--section", sections, "restrict to sections")->delimiter(',');
  verify->add_flag("--no-timing", no_timing, "omit runtimes from the report");
  verify->add_option("--report", report, "JSON lines report file");
  verify->add_flag("-q,--quiet", quiet, "print only failures and conflicts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*discform) return cmd_discform(a);
    if (*isomform) return cmd_isomform(a, b);
    if (*aut) return cmd_aut(a, max_rank);
    if (*roots) return cmd_roots(a);
    if (*spinor) return cmd_spinor(a, b, primes);
    if (*gl) return cmd_glue(a, b, c, out);
    if (*action) return cmd_action(a);
    if (*nikulin) return cmd_nikulin(a, mode);
    if (*verify) {
      for (const auto& s : sections) {
        const auto& all = verify_sections();
        if (std::find(all.begin(), all.end(), s) == all.end()) throw InputError("unknown section " + s);
      }
      return cmd_verify(a, filters, sections, no_timing, report, quiet);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
