#include "latforge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

namespace latforge {

namespace fs = std::filesystem;

const std::vector<std::string>& corpus_kinds() {
  static const std::vector<std::string> k = {"gramian", "genus-symbol", "order",          "root-type",
                                             "action",  "nine-case-flag", "f-value",      "discriminant-form"};
  return k;
}

bool is_provenance(const std::string& p) { return p == "printed" || p == "trivial" || p == "derived"; }

std::vector<const CorpusEntry*> Corpus::of_kind(const std::string& kind) const {
  std::vector<const CorpusEntry*> out;
  for (const auto& e : entries)
    if (e.kind == kind) out.push_back(&e);
  return out;
}

const CorpusEntry* Corpus::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

std::string field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty())
    throw InputError(where + ": missing or empty \"" + key + "\"");
  return j[key].get<std::string>();
}

void add_entries(Corpus& c, const json& doc, const std::string& file, std::set<std::string>& ids) {
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw InputError(file + ": expected an object with an \"entries\" array");
  const auto& kinds = corpus_kinds();
  for (const auto& j : doc["entries"]) {
    CorpusEntry e;
    e.file = file;
    e.id = field(j, "id", file);
    std::string where = file + " [" + e.id + "]";
    e.kind = field(j, "kind", where);
    if (std::find(kinds.begin(), kinds.end(), e.kind) == kinds.end())
      throw InputError(where + ": unknown kind \"" + e.kind + "\"");
    e.ref = field(j, "ref", where);
    e.provenance = field(j, "provenance", where);
    if (!is_provenance(e.provenance)) throw InputError(where + ": bad provenance \"" + e.provenance + "\"");
    if (!j.contains("payload") || !j["payload"].is_object()) throw InputError(where + ": missing payload");
    e.payload = j["payload"];
    if (j.contains("conflict")) e.conflict = j["conflict"].get<std::string>();
    if (!ids.insert(e.id).second) throw InputError(where + ": duplicate id");
    c.entries.push_back(std::move(e));
  }
}

}  // namespace

Corpus corpus_from_json_text(const std::string& text, const std::string& file) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
  Corpus c;
  std::set<std::string> ids;
  add_entries(c, j, file, ids);
  return c;
}

Corpus load_corpus(const std::string& dir0) {
  std::string dir = dir0.empty() ? data_dir() + "/corpus" : dir0;
  Corpus c;
  std::vector<fs::path> files;
  if (fs::is_directory(dir))
    for (const auto& f : fs::directory_iterator(dir))
      if (f.is_regular_file() && f.path().extension() == ".json") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    c.warnings.push_back("no corpus files in " + dir);
    return c;
  }
  std::set<std::string> ids;
  for (const auto& f : files) add_entries(c, read_json_file(f.string()), f.filename().string(), ids);
  return c;
}

// ---- Gramian expressions

namespace {

class GramParser {
 public:
  explicit GramParser(std::string s) : s_(std::move(s)) {}

  IntMatrix parse() {
    IntMatrix m = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected text");
    return m;
  }

 private:
  std::string s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("Gramian expression: " + what + " at \"" + s_.substr(std::min(i_, s_.size())) + "\"");
  }

  void skip() {
    for (;;) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      // spacing commands
      if (s_.compare(i_, 2, "\\,") == 0 || s_.compare(i_, 2, "\\;") == 0 || s_.compare(i_, 2, "\\!") == 0) {
        i_ += 2;
        continue;
      }
      break;
    }
  }

  bool eat(const std::string& t) {
    skip();
    if (s_.compare(i_, t.size(), t) != 0) return false;
    // do not split a command name
    if (t[0] == '\\' && std::isalpha(static_cast<unsigned char>(t.back())) && i_ + t.size() < s_.size() &&
        std::isalpha(static_cast<unsigned char>(s_[i_ + t.size()])))
      return false;
    i_ += t.size();
    return true;
  }

  void expect(const std::string& t) {
    if (!eat(t)) fail("expected \"" + t + "\"");
  }

  mpz_class integer() {
    skip();
    bool neg = false;
    while (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      if (s_[i_] == '-') neg = !neg;
      ++i_;
      skip();
    }
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected an integer");
    mpz_class v(s_.substr(st, i_ - st));
    return neg ? mpz_class(-v) : v;
  }

  mpz_class braced_integer() {
    if (eat("{")) {
      mpz_class v = integer();
      expect("}");
      return v;
    }
    return integer();
  }

  // index of A_n etc.: "_4", "_{4}" or "4"
  long subscript() {
    eat("_");
    return braced_integer().get_si();
  }

  IntMatrix sum() {
    std::vector<IntMatrix> parts{term()};
    for (;;) {
      if (eat("\\oplus") || eat("+"))
        parts.push_back(term());
      else
        break;
    }
    return block_sum(parts);
  }

  static IntMatrix block_sum(const std::vector<IntMatrix>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rows();
    IntMatrix g(n, n);
    std::size_t off = 0;
    for (const auto& p : parts) {
      for (std::size_t a = 0; a < p.rows(); ++a)
        for (std::size_t b = 0; b < p.cols(); ++b) g(off + a, off + b) = p(a, b);
      off += p.rows();
    }
    return g;
  }

  IntMatrix term() {
    IntMatrix m = atom();
    for (;;) {
      skip();
      if (i_ < s_.size() && s_[i_] == '(') {
        ++i_;
        mpz_class k = integer();
        expect(")");
        for (std::size_t a = 0; a < m.rows(); ++a)
          for (std::size_t b = 0; b < m.cols(); ++b) m(a, b) *= k;
      } else if (eat("^")) {
        long n;
        if (eat("{")) {
          eat("\\oplus");
          n = integer().get_si();
          expect("}");
        } else {
          eat("\\oplus");
          n = integer().get_si();
        }
        if (n < 1) fail("power must be positive");
        m = block_sum(std::vector<IntMatrix>(static_cast<std::size_t>(n), m));
      } else {
        return m;
      }
    }
  }

  std::vector<mpz_class> args(std::size_t n) {
    std::vector<mpz_class> v;
    for (std::size_t k = 0; k < n; ++k) {
      expect("{");
      v.push_back(integer());
      expect("}");
    }
    return v;
  }

  // rows separated by \\ or ;, entries by &
  IntMatrix literal(const std::string& end) {
    std::vector<std::vector<mpz_class>> rows{{}};
    for (;;) {
      if (eat(end)) break;
      if (eat("\\\\") || eat(";")) {
        rows.emplace_back();
        continue;
      }
      if (eat("&") || eat(",")) continue;
      rows.back().push_back(integer());
    }
    if (rows.back().empty()) rows.pop_back();
    return square(rows);
  }

  IntMatrix square(const std::vector<std::vector<mpz_class>>& rows) {
    std::size_t n = rows.size();
    IntMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      if (rows[a].size() != n) fail("matrix literal is not square");
      for (std::size_t b = 0; b < n; ++b) m(a, b) = rows[a][b];
    }
    if (!m.is_symmetric()) fail("matrix literal is not symmetric");
    return m;
  }

  IntMatrix atom() {
    skip();
    if (eat("(")) {
      IntMatrix m = sum();
      expect(")");
      return m;
    }
    if (eat("\\left(")) {
      bool small = eat("\\begin{smallmatrix}");
      if (!small) expect("\\begin{matrix}");
      IntMatrix m = literal(small ? "\\end{smallmatrix}" : "\\end{matrix}");
      expect("\\right)");
      return m;
    }
    if (eat("\\begin{pmatrix}")) return literal("\\end{pmatrix}");
    if (eat("[[")) {
      std::vector<std::vector<mpz_class>> rows{{}};
      for (;;) {
        if (eat("]]")) break;
        if (eat("]")) {
          expect(",");
          expect("[");
          rows.emplace_back();
          continue;
        }
        if (eat(",")) continue;
        rows.back().push_back(integer());
      }
      return square(rows);
    }
    if (eat("\\LFP")) {
      auto a = args(2);
      IntMatrix one(1, 1);
      one(0, 0) = a[0];
      if (a[1] < 1) fail("power must be positive");
      return block_sum(std::vector<IntMatrix>(a[1].get_ui(), one));
    }
    if (eat("\\LF")) {
      auto a = args(1);
      IntMatrix m(1, 1);
      m(0, 0) = a[0];
      return m;
    }
    if (eat("<") || eat("\\langle")) {
      IntMatrix m(1, 1);
      m(0, 0) = integer();
      if (!eat(">")) expect("\\rangle");
      return m;
    }
    if (eat("\\BQ")) {
      auto a = args(3);
      return IntMatrix{{a[0], a[2]}, {a[2], a[1]}};
    }
    if (eat("\\TQ")) {
      auto a = args(6);
      return IntMatrix{{a[0], a[5], a[4]}, {a[5], a[1], a[3]}, {a[4], a[3], a[2]}};
    }
    if (eat("U")) return lattice_U().gram();
    if (eat("A")) return lattice_A(static_cast<int>(subscript())).gram();
    if (eat("D")) {
      long n = subscript();
      if (n == 4) return IntMatrix{{2, 0, 0, -1}, {0, 2, 0, -1}, {0, 0, 2, -1}, {-1, -1, -1, 2}};
      return lattice_D(static_cast<int>(n)).gram();
    }
    if (eat("E")) return lattice_E(static_cast<int>(subscript())).gram();
    fail("unknown term");
  }
};

}  // namespace

Lattice parse_gram_expression(const std::string& text) {
  std::string t = text;
  // strip math delimiters
  t.erase(std::remove(t.begin(), t.end(), '$'), t.end());
  return Lattice(GramParser(t).parse(), text);
}

FiniteQuadraticForm form_from_json(const json& j) {
  if (!j.contains("orders") || !j.contains("gram")) throw InputError("finite form needs \"orders\" and \"gram\"");
  std::vector<mpz_class> orders;
  for (const auto& o : j["orders"]) orders.push_back(integer_from_json(o));
  RatMatrix g = rat_matrix_from_json(j["gram"]);
  std::size_t n = orders.size();
  if (g.rows() != n || g.cols() != n) throw InputError("finite form: Gram size does not match orders");
  std::vector<mpq_class> q(n);
  std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(n));
  for (std::size_t a = 0; a < n; ++a) {
    q[a] = mod2(g(a, a));
    for (std::size_t c = 0; c < n; ++c) b[a][c] = mod1(g(a, c));
  }
  return FiniteQuadraticForm(orders, q, b);
}

}  // namespace latforge
