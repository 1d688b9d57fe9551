#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "blockmerge/big_float.hpp"
#include "blockmerge/clt.hpp"
#include "blockmerge/distribution.hpp"
#include "blockmerge/exact_rational.hpp"
#include "blockmerge/generic_recurrence.hpp"
#include "blockmerge/moments.hpp"
#include "blockmerge/simulator.hpp"

namespace blockmerge::io {

using json = nlohmann::ordered_json;

/// Output documents carry this; bump on any incompatible change.
inline constexpr int kSchemaVersion = 1;

/// {"num": "...", "den": "..."}.
json to_json(const ExactRational& q);
/// Decimal string with `digits` significant digits.
json to_json(const BigFloat& x, int digits);

ExactRational rational_from_json(const json& j);

/// Decimal rendering for CSV cells.
std::string decimal(const ExactRational& q, int digits);
std::string decimal(const BigFloat& x, int digits);
/// Shortest round-trip rendering of a double; "nan"/"inf" spelled out.
std::string decimal(double x);

template <class Scalar>
json scalar_json(const Scalar& v, int digits) {
  if constexpr (std::is_same_v<Scalar, ExactRational>) {
    (void)digits;
    return to_json(v);
  } else {
    return to_json(v, digits);
  }
}

template <class Scalar>
json moment_table_json(const MomentTable<Scalar>& t, int digits);
template <class Scalar>
json pmf_json(const TruncatedPmf<Scalar>& p, int digits);
template <class Scalar>
json recurrence_json(const GenericRecurrenceRun<Scalar>& run, int digits);

json summary_json(const SimSummary& s);
SimSummary summary_from_json(const json& j);
json clt_json(const CltReport& r);
json error_series_json(const std::vector<ErrorTermSeries>& series);

}  // namespace blockmerge::io
