// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "trendkit/topic_model.hpp"

namespace trendkit {

/// JSON persistence of a fitted model: kind, feature set, weighting, seed,
/// the vocabulary (terms, df, hash, idf when weighted), training doc ids,
/// and the model matrices row-major.
std::string model_to_json(const FittedModel& model);
FittedModel model_from_json(const std::string& text);

void save_model_file(const std::string& path, const FittedModel& model);
FittedModel load_model_file(const std::string& path);

}  // namespace trendkit
