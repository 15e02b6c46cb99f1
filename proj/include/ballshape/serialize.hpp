#ifndef BALLSHAPE_SERIALIZE_HPP
#define BALLSHAPE_SERIALIZE_HPP

#include <json.hpp>
#include <string>

#include "ballshape/certifier.hpp"
#include "ballshape/constants.hpp"
#include "ballshape/convergence.hpp"
#include "ballshape/functionals.hpp"
#include "ballshape/optimizer.hpp"

namespace ballshape {

using Json = nlohmann::json;

Json to_json(const RadiiTable& table);
Json to_json(const Certificate& cert);
Json to_json(const TraceRow& row);
Json to_json(const OptimizationTrace& trace);
Json to_json(const SequenceReport& report);
Json field_to_json(const CurvatureField& field);
std::string field_to_csv(const CurvatureField& field);

FunctionalSpec functional_from_json(const Json& j);
ConstraintSpec constraints_from_json(const Json& j);
OptimizerConfig optimizer_config_from_json(const Json& j);
SequenceSpec sequence_spec_from_json(const Json& j);
ShapeSpec shape_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const Json& j, const std::string& path);

}  // namespace ballshape

#endif  // BALLSHAPE_SERIALIZE_HPP
