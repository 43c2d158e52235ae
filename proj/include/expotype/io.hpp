#pragma once

#include <json.hpp>
#include <string>

#include "expotype/dirichlet.hpp"
#include "expotype/gram.hpp"
#include "expotype/measure.hpp"
#include "expotype/partition.hpp"
#include "expotype/typebound.hpp"
#include "expotype/uniform.hpp"

namespace expotype::io {

using nlohmann::json;

// Derived diagnostics round to 12 significant digits before serialization;
// inputs (measures, points, breakpoints, levels) stay exact for lossless
// round trips.
double round_sig(double v);

json to_json(const Interval& i);
json to_json(const Measure& m);
json to_json(const Partition& p);
json to_json(const SequenceSet& s);
json to_json(const Tolerances& t);
json to_json(const SeriesDiagnostics& d);
json to_json(const UniformityCertificate& c);
json to_json(const TypeEstimate& e);
json to_json(const GramScanReport& r);
json to_json(const FrostmanReport& r);
json to_json(const DoublingReport& r);
json to_json(const DoublingTransform& t);
json to_json(const SplitResult& s);
json to_json(const ClaimCheck& c);
json to_json(const WeightReport& w);

Interval interval_from_json(const json& j);
Measure measure_from_json(const json& j);
Partition partition_from_json(const json& j);
SequenceSet sequence_from_json(const json& j);
Tolerances tolerances_from_json(const json& j);
SeriesDiagnostics series_from_json(const json& j);
UniformityCertificate certificate_from_json(const json& j);
TypeEstimate estimate_from_json(const json& j);
GramScanReport gram_from_json(const json& j);

// Artifacts carry {"tool", "version"} and are dumped with sorted keys and a
// trailing newline, so identical runs write identical bytes.
json wrap_artifact(json body);
void write_artifact(const std::string& path, json body);
json read_artifact(const std::string& path);
void write_text(const std::string& path, const std::string& text);

std::string series_csv(const SeriesDiagnostics& d);
std::string gram_csv(const GramScanReport& r);
std::string frostman_csv(const FrostmanReport& r);

}  // namespace expotype::io
