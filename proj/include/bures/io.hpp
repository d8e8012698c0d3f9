#ifndef BURES_IO_HPP
#define BURES_IO_HPP

// JSON schema shared by the CLI:
//   matrix bundle: {"blocks":[{"dim":n,"re":[[...]],"im":[[...]]}]}
//   positive forms carry "kind":"density", HS vectors "kind":"hs_vector"
//   algebra: {"block_dims":[n_1,...]}

#include <json.hpp>

#include "bures/standard_form.hpp"

namespace bures {

using json = nlohmann::ordered_json;

json algebra_to_json(const Algebra& alg);
json form_to_json(const PositiveForm& nu);
json vector_to_json(const HSVector& xi);

Algebra algebra_from_json(const json& j);
PositiveForm form_from_json(const json& j, const TolerancePolicy& tol = {});
HSVector vector_from_json(const json& j);

// Throws ParseError on unreadable files or malformed JSON.
json load_json_file(const std::string& path);

}  // namespace bures

#endif  // BURES_IO_HPP
