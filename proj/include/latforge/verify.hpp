#pragma once

#include <string>
#include <vector>

#include "latforge/corpus.hpp"

namespace latforge {

struct CheckRecord {
  std::string id;       // e.g. "invariant/12/determinant"
  std::string section;  // catalog, worked-example, forms, invariant, nine-cases, spinor, orders, roots, traces
  std::string ref;
  std::string provenance;
  std::string expected;
  std::string computed;
  std::string status;  // pass, fail, conflict, skip
  std::string note;
  double seconds = 0;
};

struct VerifyOptions {
  std::string data_dir;              // default: data_dir()
  std::vector<std::string> filters;  // empty: everything
  std::vector<std::string> sections; // empty: every section
};

struct VerificationReport {
  std::vector<CheckRecord> records;
  std::vector<std::string> warnings;
  std::size_t count(const std::string& status) const;
};

const std::vector<std::string>& verify_sections();

// A filter selects ids with that prefix; a bare number n selects every row n.
bool matches_filter(const std::string& id, const std::vector<std::string>& filters);

// Runs the table checks in a fixed order. Check failures are recorded, never thrown;
// malformed corpus data throws InputError.
VerificationReport verify_tables(const VerifyOptions& opt = {});

std::string to_json_line(const CheckRecord& r, bool timing = true);

}  // namespace latforge
