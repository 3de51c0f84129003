#pragma once

#include <json.hpp>

#include <string>

#include "ldg/hom.hpp"
#include "ldg/measures.hpp"
#include "ldg/neighborhood.hpp"
#include "ldg/partition_set.hpp"
#include "ldg/quotient.hpp"
#include "ldg/rate.hpp"

namespace ldg {

// Stable field order everywhere: bundles must be byte-identical across runs.
using Json = nlohmann::ordered_json;

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Plain edge-list text: header "# n=<int>", then one "u v" line per edge.
std::string graph_to_text(const Graph& g);
Graph graph_from_text(const std::string& text);

Json quotient_to_json(const Quotient& q);
Quotient quotient_from_json(const Json& j);

Json quotient_set_to_json(const QuotientSet& s);
QuotientSet quotient_set_from_json(const Json& j);

Json step_pair_to_json(const StepMeasurePair& s);
StepMeasurePair step_pair_from_json(const Json& j);

Json measure_pair_to_json(const MeasurePair& m);

Json target_to_json(const TargetGraph& h);
TargetGraph target_from_json(const Json& j);

Json rate_estimate_to_json(const RateEstimate& e);

/// CSV rows "cell coordinates (rationals), count"; one line per occupied cell.
std::string bucket_histogram_to_csv(const BucketHistogram& h);

Json frequency_vector_to_json(const FrequencyVector& v);  // entries + sidecar decode table

std::string format_double(double v);  // shortest round-trip, deterministic

}  // namespace ldg
