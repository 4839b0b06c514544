#pragma once

#include <string>

#include <json.hpp>

#include "daqc/compiler.hpp"
#include "daqc/error.hpp"
#include "daqc/experiments.hpp"
#include "daqc/hamiltonian.hpp"
#include "daqc/polytope.hpp"
#include "daqc/sign_matrix.hpp"
#include "daqc/verification.hpp"

namespace daqc::io {

using nlohmann::json;

/// {n, model: "zz"|"general", couplings: [{i, j, mu, nu, value}]}; mu/nu default to "z" in zz.
json to_json(const TwoBodyHamiltonian& h);
TwoBodyHamiltonian hamiltonian_from_json(const json& j);

/// {n, model, T, total_time, axis_order, blocks: [{layer, time}], problem_ref?, source_ref?}
json to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

json to_json(const BoundsReport& r);
json to_json(const VerificationReport& r);

/// {n, model, T, axis_order, index: ["1-2:zz", ...], values: [...]}
json to_json(const ProblemVector& b);
ProblemVector problem_from_json(const json& j);

/// {dim, facets: [{normal, offset, incidence}]} with exact integer normals.
json to_json(const FacetSet& f);
FacetSet facets_from_json(const json& j);

json to_json(const SampleResult& s, ModelKind model);
json to_json(const GapRecord& r);

/// Header "coupling,<layer strings>", then one row per coupling key.
std::string sign_matrix_csv(const SignMatrix& M);

/// {"error": tag, "message": text}
json error_json(const Error& e);

CouplingKey parse_coupling_key(const std::string& s);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace daqc::io
