#pragma once

#include <string>

namespace ranksim {

/// Porter suffix-stripping stemmer (the canonical reference algorithm).
/// Expects a lowercase word; strings shorter than 3 letters are returned
/// unchanged.
std::string porter_stem(const std::string& word);

} // namespace ranksim
