#include "latforge/json_util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace latforge {

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
    return mpz_class(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    mpz_class z;
    std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    if (s.empty() || z.set_str(s, 10) != 0) throw InputError("malformed integer: " + j.get<std::string>());
    return z;
  }
  throw InputError("expected an integer, got " + j.dump());
}

mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational, got " + j.dump());
}

IntVector int_vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

RatVector rat_vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  return IntMatrix::from_rows(rows);
}

RatMatrix rat_matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(rat_vector_from_json(r));
  return RatMatrix::from_rows(rows);
}

json to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json to_json(const mpq_class& q) {
  if (q.get_den() == 1) return to_json(q.get_num());
  return json(q.get_str());
}

json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    a.push_back(r);
  }
  return a;
}

json to_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
    a.push_back(r);
  }
  return a;
}

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace latforge

namespace latforge {

std::string data_dir() {
  if (const char* e = std::getenv("LATTICE_FORGE_DATA"); e && *e) return e;
  return LATFORGE_DATA_DIR;
}

}  // namespace latforge
