#ifndef MTSAD_VERSION_HPP
#define MTSAD_VERSION_HPP

namespace mtsad {

inline constexpr const char* version_string = "0.1.0";

} // namespace mtsad

#endif
