#pragma once

#include <string>

#include "seqmix/eval.hpp"
#include "seqmix/mixture.hpp"

namespace seqmix {

// Self-describing JSON documents. Doubles are emitted with shortest
// round-trip precision, so save/load is lossless.

std::string model_to_json(const MixtureModel& model);
MixtureModel model_from_json(const std::string& text);
void save_model(const std::string& path, const MixtureModel& model);
MixtureModel load_model(const std::string& path);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
void save_report(const std::string& path, const RunReport& report);
RunReport load_report(const std::string& path);

}  // namespace seqmix
