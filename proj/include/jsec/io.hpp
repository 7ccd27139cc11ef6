#pragma once

#include <string>

#include <json.hpp>

#include "jsec/bodies.hpp"
#include "jsec/functionals.hpp"
#include "jsec/positions.hpp"

namespace jsec::io {

using nlohmann::json;

json to_json(const HPolytope& P);
json to_json(const VPolytope& P);
json to_json(const Subspace& F);
json to_json(const Ellipsoid& E);
json to_json(const McEstimate& e);
json to_json(const JohnDecomposition& D);

HPolytope hpolytope_from_json(const json& j);
VPolytope vpolytope_from_json(const json& j);
Subspace subspace_from_json(const json& j);

/// Either representation, discriminated by the "type" field.
struct Body {
  bool is_h = true;
  HPolytope h;
  VPolytope v;
  int dim() const { return is_h ? h.dim : v.dim; }
};
Body body_from_json(const json& j);

json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace jsec::io
