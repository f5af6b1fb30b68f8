#pragma once

#include <string>
#include <string_view>

namespace newsclf {

/// One pass of the Porter (1980) suffix-stripping algorithm, steps 1a-5b,
/// with the rule tables of the original publication. Input is expected
/// lowercase ASCII; words of two characters or fewer are returned as is.
///
/// A single pass is not idempotent ("agreed" -> "agre" -> "agr").
std::string porter_stem(std::string_view word);

}  // namespace newsclf
