// JSON encodings shared by the CLI and the acceptance runner.
#pragma once

#include <string>

#include <json.hpp>

#include "thetakit/heisenberg.hpp"
#include "thetakit/identities.hpp"
#include "thetakit/jacobian_tools.hpp"
#include "thetakit/polynomial.hpp"
#include "thetakit/theta_engine.hpp"

namespace thetakit {

using Json = nlohmann::ordered_json;

/// Malformed input; the CLI maps it to exit code 2.
class JsonFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const PeriodMatrix& tau);                 // {"g", "re", "im"}
PeriodMatrix period_matrix_from_json(const Json& j);
Json to_json(const ThetaValue& v);                     // {"re", "im", "tail"}
Json to_json(const IntPolynomial& p);                  // {"g", "terms": [{"mono", "c"}]}
IntPolynomial polynomial_from_json(const Json& j);
Json to_json(const BranchPointSet& bp);                // {"points": [...]}, "inf" last if present
BranchPointSet branch_points_from_json(const Json& j);
Json to_json(const SymplecticMatrix& gamma);           // [[int]]
Json certificate_json(const std::vector<std::string>& word, const SymplecticMatrix& gamma);
Json to_json(const ResidualReport& r);
Json to_json(const ClassificationReport& r);
Json to_json(const TransportResult& r);
Json to_json(const GunningReport& r);
Json to_json(const PeriodResult& r);

Json read_json_file(const std::string& path);

}  // namespace thetakit
