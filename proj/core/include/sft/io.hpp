#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <string>

#include "sft/average.hpp"
#include "sft/building.hpp"
#include "sft/classify.hpp"
#include "sft/contact_model.hpp"
#include "sft/glue.hpp"
#include "sft/index.hpp"
#include "sft/spectral.hpp"
#include "sft/surface.hpp"

/// JSON encodings. Parsers throw ValidationError naming the offending field
/// path, e.g. "field 'components[1].genus': expected an integer". Matrices are
/// flat row-major arrays; rationals are strings "p/q" (integers also accepted).
namespace sft::io {

using nlohmann::json;

/// Parses text, turning syntax errors into ValidationError.
json parse_text(const std::string& text);
json read_file(const std::string& path);

json to_json(const surface::NodalSurface& s);
surface::NodalSurface parse_surface(const json& j);

json to_json(const surface::DecoratedGraph& g);
surface::DecoratedGraph parse_graph(const json& j);

json to_json(const surface::SurfaceAutomorphism& a);
surface::SurfaceAutomorphism parse_automorphism(const json& j);

/// Objects {modulus, angle} or strings "m@turns".
json to_json(const glue::GluingParameter& a);
glue::GluingParameter parse_gluing_parameter(const json& j);

json to_json(const glue::SampledNeckMap& u);
glue::SampledNeckMap parse_neck_map(const json& j);

json to_json(const building::Building& b);
building::Building parse_building(const json& j);

json to_json(const building::TotalGluingParameter& p);
building::TotalGluingParameter parse_total_parameter(const json& j);

json to_json(const building::AnchorData& a);
building::AnchorData parse_anchor_data(const json& j);

json to_json(const classify::ModuliClass& c);
classify::ModuliClass parse_class(const json& j);
/// {"classes": [...]}; a bare array is accepted on input.
json to_json(const classify::Universe& u);
classify::Universe parse_universe(const json& j);

json rational_json(const Rational& q);
Rational parse_rational_field(const json& j);

/// {"type": "vector", "dim": n} or {"type": "table", "zero", "elements", "sums": [[a, b, a+b], ...]}.
std::unique_ptr<classify::FiberMonoid> parse_monoid(const json& j);

json to_json(const classify::Multisection& m);
classify::Multisection parse_multisection(const json& j);

json to_json(const classify::GradedFunction& g);
classify::GradedFunction parse_graded_function(const json& j);

json matrix_json(const Eigen::MatrixXd& a);
Eigen::MatrixXd parse_matrix(const json& j, Eigen::Index dim = -1);

/// {"dim", "modes", "constant": matrix} or {"dim", "modes", "samples": [matrix, ...]}.
json to_json(const spectral::AsymptoticOperator& op);
spectral::AsymptoticOperator parse_operator(const json& j);

/// {"times": [...], "matrices": [matrix, ...]}.
json to_json(const spectral::SymplecticPath& p);
spectral::SymplecticPath parse_path(const json& j);

json to_json(const spectral::PeriodicOrbitRecord& o);
spectral::PeriodicOrbitRecord parse_orbit(const json& j);

json to_json(const spectral::EllipsoidModel& m);
spectral::EllipsoidModel parse_ellipsoid(const json& j);

json to_json(const average::BundleModel& m);
average::BundleModel parse_bundle_model(const json& j);

json to_json(const average::EulerEstimate& e);

}  // namespace sft::io
