#pragma once

#include <string>
#include <string_view>

namespace surprise::repr {

// Snowball English (Porter2) stemmer. Input is treated as lowercase ASCII;
// bytes outside a-z pass through untouched by the case fold.
std::string stem_english(std::string_view word);

}  // namespace surprise::repr
