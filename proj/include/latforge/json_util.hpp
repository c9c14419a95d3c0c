#pragma once

#include <json.hpp>
#include <string>

#include "latforge/linalg.hpp"

namespace latforge {

using json = nlohmann::json;

mpz_class integer_from_json(const json& j);
mpq_class rational_from_json(const json& j);
IntMatrix int_matrix_from_json(const json& j);
RatMatrix rat_matrix_from_json(const json& j);
IntVector int_vector_from_json(const json& j);
RatVector rat_vector_from_json(const json& j);

json to_json(const mpz_class& z);
json to_json(const mpq_class& q);  // string "p/q" or integer
json to_json(const IntMatrix& m);
json to_json(const RatMatrix& m);
json to_json(const IntVector& v);

json read_json_file(const std::string& path);

}  // namespace latforge

namespace latforge {

// Data directory: $LATTICE_FORGE_DATA if set, else the source tree's data/.
std::string data_dir();

}  // namespace latforge
