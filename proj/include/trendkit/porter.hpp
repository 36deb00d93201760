// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace trendkit {

/// Classic Porter (1980) suffix-stripping stemmer.
///
/// Expects a lower-case token ([a-z][a-z0-9]*). Words of length 1 or 2
/// are returned unchanged. The five steps follow the original algorithm,
/// not the later Snowball or NLTK revisions: within a step the longest
/// matching suffix is the only rule considered, and a failed condition
/// ends the step without trying shorter suffixes.
std::string porter_stem(std::string_view token);

}  // namespace trendkit
