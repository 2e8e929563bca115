#pragma once

#include <string>

#include "json.hpp"
#include "qhyp/gram.hpp"
#include "qhyp/isom.hpp"

namespace qhyp {

using Json = nlohmann::ordered_json;

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Quaternion& q);
Quaternion quaternion_from_json(const Json& j);

Json to_json(const HVector& v);
HVector hvector_from_json(const Json& j);

// {"n": n, "rows": [[q, ...], ...]}
Json to_json(const HMatrix& m);
HMatrix hmatrix_from_json(const Json& j);

Json to_json(const EigenData& e);
// {"type", "real_trace", "semisimple", "classes"}
Json classify_report(const Isometry& a);

// {"n", "i", "points": [[q, ...], ...]}; "i" is optional on input and checked when present
Json to_json(const PointConfig& c);
PointConfig config_from_json(const Json& j, double tol = 1e-8);

Json to_json(const SemiNormalizedGram& g);
Json to_json(const InvariantProfile& p);
InvariantProfile profile_from_json(const Json& j);
std::string profile_csv(const InvariantProfile& p);

Json to_json(const Decision& d);

}  // namespace qhyp
