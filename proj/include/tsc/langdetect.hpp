#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tsc::langdetect {

struct Detection {
  std::string lang;  // "en", "es", "fr", "pt", "de", or "und"
  double distance = 1.0;
};

// Ranked character-trigram profiles over a small built-in language set.
// Texts far from every profile come back as "und".
Detection detect(std::string_view text);

bool is_english(std::string_view text);

std::vector<std::string> profile_languages();

}  // namespace tsc::langdetect
