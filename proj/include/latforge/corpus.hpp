#pragma once

#include <string>
#include <vector>

#include "latforge/discform.hpp"
#include "latforge/json_util.hpp"

namespace latforge {

// One tagged expectation from the golden data set.
struct CorpusEntry {
  std::string id;
  std::string kind;  // gramian, genus-symbol, order, root-type, action, nine-case-flag, f-value, discriminant-form
  json payload;
  std::string ref;         // where the value is printed
  std::string provenance;  // printed, trivial or derived
  std::string conflict;    // nonempty when the printed source disagrees with itself
  std::string file;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  std::vector<std::string> warnings;

  std::vector<const CorpusEntry*> of_kind(const std::string& kind) const;
  const CorpusEntry* find(const std::string& id) const;
};

const std::vector<std::string>& corpus_kinds();
bool is_provenance(const std::string& p);

// Reads every *.json file of dir (sorted by name). Entries without ref or provenance,
// unknown kinds and duplicate ids throw InputError. An empty or missing directory gives
// an empty corpus with a warning. Default dir: data_dir() + "/corpus".
Corpus load_corpus(const std::string& dir = {});
Corpus corpus_from_json_text(const std::string& text, const std::string& file = "<text>");

// Gramian expressions as printed (TeX) or typed (ASCII):
//   U, A_n, D_n, E_n, \LF{a}, <a>, \LFP{a}{n}, \BQ{a}{b}{c}, \TQ{a}{b}{c}{d}{e}{f},
//   smallmatrix/pmatrix literals, [[..],[..]]; scaling X(k); powers X^{\oplus n} or X^n;
//   sums with \oplus or +.
// BQ{a}{b}{c} = [[a,c],[c,b]] and TQ{a}{b}{c}{d}{e}{f} = [[a,f,e],[f,b,d],[e,d,c]].
Lattice parse_gram_expression(const std::string& text);

// A finite form from generator orders and a rational Gram matrix
// (diagonal read mod 2 as q, off-diagonal mod 1 as b).
FiniteQuadraticForm form_from_json(const json& j);

}  // namespace latforge
